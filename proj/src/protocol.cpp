#include "qkd/protocol.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qkd {

void ProtocolConfig::validate() const {
  if (num_pairs < 2 || num_pairs % 2 != 0) {
    throw std::invalid_argument("ProtocolConfig: num_pairs must be even and >= 2");
  }
  if (!(decision_low >= 0.0 && decision_low < decision_high && decision_high <= 1.0)) {
    throw std::invalid_argument("ProtocolConfig: need 0 <= low < high <= 1");
  }
}

const char* to_string(Decision d) { return d == Decision::Proceed ? "Proceed" : "Abort"; }

bool RunSummary::operator==(const RunSummary& o) const {
  return checked == o.checked && errors == o.errors && estimated_qber == o.estimated_qber &&
         per_basis_errors[0].checked == o.per_basis_errors[0].checked &&
         per_basis_errors[0].errors == o.per_basis_errors[0].errors &&
         per_basis_errors[1].checked == o.per_basis_errors[1].checked &&
         per_basis_errors[1].errors == o.per_basis_errors[1].errors &&
         decision == o.decision && seed == o.seed;
}

Decision decide(double estimated_qber, const ProtocolConfig& cfg) {
  if (!(estimated_qber >= 0.0 && estimated_qber <= 1.0)) {
    throw std::invalid_argument("decide: estimated QBER outside [0, 1]");
  }
  return (estimated_qber >= cfg.decision_low && estimated_qber <= cfg.decision_high)
             ? Decision::Abort
             : Decision::Proceed;
}

namespace {

// Cumulative Z-outcome table p(l, m) of a pair state.
struct OutcomeTable {
  double cum[4];  // cumulative over (l,m) in order 00, 01, 10, 11
};

OutcomeTable z_outcome_table(const DensityOperator& rho) {
  const ProbTable t = joint_outcome_probs(rho, Basis::z);
  OutcomeTable o{};
  double c = 0.0;
  int i = 0;
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m) {
      c += t.p[l][m];
      o.cum[i++] = c;
    }
  return o;
}

int sample_outcome(const OutcomeTable& t, Rng& rng) {
  const double u = rng.uniform();
  for (int i = 0; i < 4; ++i) {
    if (u < t.cum[i]) return i;
  }
  return 3;
}

constexpr std::uint64_t kStreamMask = 0;
constexpr std::uint64_t kStreamShuffle = 1;
constexpr std::uint64_t kStreamPerItem = 2;

}  // namespace

RunSummary run_entanglement_round(const ProtocolConfig& cfg, const AttackChannel& ch) {
  cfg.validate();
  if (cfg.mode != ProtocolMode::EntanglementBased) {
    throw std::invalid_argument("run_entanglement_round: config mode mismatch");
  }

  const Rng root(cfg.seed);
  const Mat hadamard_b = kron(ops::identity2(), ops::hadamard());
  const DensityOperator source =
      DensityOperator::unchecked(ops::ket_bra(ops::bell_phi_plus()));

  // The post-transmission pair state depends only on the mask bit, so the two
  // variants are computed once. Masked pairs: Hadamard before the channel,
  // reversal after Alice's announcement.
  OutcomeTable table[2];
  for (int b = 0; b < 2; ++b) {
    DensityOperator in =
        b == 0 ? source
               : DensityOperator::unchecked(hadamard_b * source.mat() * hadamard_b.adjoint());
    const PairState transmitted = make_pair_state(ch, in);
    DensityOperator fin = b == 0 ? transmitted.rho
                                 : DensityOperator::unchecked(
                                       hadamard_b * transmitted.rho.mat() * hadamard_b.adjoint());
    table[b] = z_outcome_table(fin);
  }

  const std::uint64_t total = cfg.num_pairs;
  Rng mask_rng = root.derive(kStreamMask, 0);
  std::vector<std::uint8_t> mask(total);
  for (std::uint64_t i = 0; i < total; ++i) mask[i] = mask_rng.bernoulli(0.5) ? 1 : 0;

  std::vector<std::uint32_t> order(total);
  std::iota(order.begin(), order.end(), 0u);
  Rng perm_rng = root.derive(kStreamShuffle, 0);
  shuffle(order, perm_rng);

  RunSummary s;
  s.seed = cfg.seed;
  s.checked = total / 2;
  for (std::uint64_t k = 0; k < s.checked; ++k) {
    const std::uint32_t pair = order[k];
    const int b = mask[pair];
    Rng pair_rng = root.derive(kStreamPerItem, pair);
    const int outcome = sample_outcome(table[b], pair_rng);
    const bool error = (outcome == 1 || outcome == 2);  // l != m
    ++s.per_basis_errors[b].checked;
    if (error) {
      ++s.errors;
      ++s.per_basis_errors[b].errors;
    }
  }
  s.estimated_qber = static_cast<double>(s.errors) / static_cast<double>(s.checked);
  s.decision = decide(s.estimated_qber, cfg);
  return s;
}

RunSummary run_pm_round(const ProtocolConfig& cfg, const AttackChannel& ch) {
  cfg.validate();
  if (cfg.mode != ProtocolMode::PrepareAndMeasure) {
    throw std::invalid_argument("run_pm_round: config mode mismatch");
  }
  if (ch.kind() == ChannelKind::SeparableSource) {
    throw std::invalid_argument("run_pm_round: separable source needs the entanglement mode");
  }

  const Rng root(cfg.seed);

  // Alice's four possible preparations H^b |l>.
  DensityOperator prepared[2][2] = {
      {DensityOperator::unchecked(ops::basis_projector(Basis::z, 0)),
       DensityOperator::unchecked(ops::basis_projector(Basis::z, 1))},
      {DensityOperator::unchecked(ops::basis_projector(Basis::x, 0)),
       DensityOperator::unchecked(ops::basis_projector(Basis::x, 1))},
  };

  struct SiftedBit {
    std::uint8_t alice;
    std::uint8_t bob;
    std::uint8_t basis;
  };
  std::vector<SiftedBit> sifted;
  sifted.reserve(cfg.num_pairs / 2 + cfg.num_pairs / 8);

  for (std::uint64_t i = 0; i < cfg.num_pairs; ++i) {
    Rng q = root.derive(kStreamPerItem, i);
    const int alice_bit = q.bernoulli(0.5) ? 1 : 0;
    const int alice_basis = q.bernoulli(0.5) ? 1 : 0;
    const DensityOperator received =
        stochastic_transmit(ch, prepared[alice_basis][alice_bit], q);
    const int bob_basis = q.bernoulli(0.5) ? 1 : 0;
    const double p0 =
        (ops::basis_projector(static_cast<Basis>(bob_basis), 0) * received.mat())
            .trace()
            .real();
    const int bob_bit = q.bernoulli(p0) ? 0 : 1;
    if (alice_basis == bob_basis) {
      sifted.push_back({static_cast<std::uint8_t>(alice_bit),
                        static_cast<std::uint8_t>(bob_bit),
                        static_cast<std::uint8_t>(alice_basis)});
    }
  }

  Rng sample_rng = root.derive(kStreamShuffle, 0);
  shuffle(sifted, sample_rng);

  RunSummary s;
  s.seed = cfg.seed;
  s.checked = sifted.size() / 2;
  for (std::uint64_t k = 0; k < s.checked; ++k) {
    const SiftedBit& bit = sifted[k];
    ++s.per_basis_errors[bit.basis].checked;
    if (bit.alice != bit.bob) {
      ++s.errors;
      ++s.per_basis_errors[bit.basis].errors;
    }
  }
  s.estimated_qber =
      s.checked == 0 ? 0.0 : static_cast<double>(s.errors) / static_cast<double>(s.checked);
  s.decision = decide(s.estimated_qber, cfg);
  return s;
}

namespace {

// Lanczos approximation (g = 7, 9 coefficients); self-contained so output is
// identical across libm versions.
double log_gamma(double x) {
  static const double coeff[9] = {
      0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,  12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // Reflection formula.
    const double pi = 3.14159265358979323846;
    return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
  }
  x -= 1.0;
  double a = coeff[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += coeff[i] / (x + i);
  const double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (x + 0.5) * std::log(t) - t + std::log(a);
}

// Continued fraction for the regularized incomplete beta (Lentz).
double beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - std::exp(log_gamma(a + b) - log_gamma(b) - log_gamma(a) +
                        b * std::log(1.0 - x) + a * std::log(x)) *
                   beta_cf(b, a, 1.0 - x) / b;
}

// Quantile of Beta(a, b) by bisection; monotone, so 200 halvings reach full
// double precision deterministically.
double beta_quantile(double a, double b, double p) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (reg_inc_beta(a, b, mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> clopper_pearson(std::uint64_t errors, std::uint64_t trials,
                                          double confidence) {
  if (trials == 0 || errors > trials) {
    throw std::invalid_argument("clopper_pearson: need 0 <= errors <= trials, trials > 0");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("clopper_pearson: confidence must lie in (0, 1)");
  }
  const double alpha = 1.0 - confidence;
  const double k = static_cast<double>(errors);
  const double n = static_cast<double>(trials);
  const double lo = errors == 0 ? 0.0 : beta_quantile(k, n - k + 1.0, alpha / 2.0);
  const double hi = errors == trials ? 1.0 : beta_quantile(k + 1.0, n - k, 1.0 - alpha / 2.0);
  return {lo, hi};
}

void to_json(nlohmann::json& j, const RunSummary& s) {
  j = nlohmann::json{
      {"checked", s.checked},
      {"errors", s.errors},
      {"estimated_qber", s.estimated_qber},
      {"per_basis_errors",
       {{s.per_basis_errors[0].checked, s.per_basis_errors[0].errors},
        {s.per_basis_errors[1].checked, s.per_basis_errors[1].errors}}},
      {"decision", to_string(s.decision)},
      {"seed", s.seed},
  };
}

void to_json(nlohmann::json& j, const ProtocolConfig& cfg) {
  j = nlohmann::json{
      {"num_pairs", cfg.num_pairs},
      {"mode", cfg.mode == ProtocolMode::EntanglementBased ? "eb" : "pm"},
      {"seed", cfg.seed},
      {"decision_low", cfg.decision_low},
      {"decision_high", cfg.decision_high},
  };
}

ProtocolConfig protocol_config_from_json(const nlohmann::json& j) {
  ProtocolConfig cfg;
  cfg.num_pairs = j.at("num_pairs").get<std::uint64_t>();
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "eb") {
    cfg.mode = ProtocolMode::EntanglementBased;
  } else if (mode == "pm") {
    cfg.mode = ProtocolMode::PrepareAndMeasure;
  } else {
    throw std::invalid_argument("ProtocolConfig: mode must be \"eb\" or \"pm\"");
  }
  cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("decision_low")) cfg.decision_low = j.at("decision_low").get<double>();
  if (j.contains("decision_high")) cfg.decision_high = j.at("decision_high").get<double>();
  cfg.validate();
  return cfg;
}

}  // namespace qkd
