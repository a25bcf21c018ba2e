#include "qkd/channels.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "qkd/witness.hpp"

namespace qkd {

namespace {

std::string format_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

std::vector<Mat> pauli_kraus(double p_id, double px, double py, double pz) {
  std::vector<Mat> ks;
  ks.push_back(std::sqrt(p_id) * ops::identity2());
  ks.push_back(std::sqrt(px) * ops::pauli_x());
  ks.push_back(std::sqrt(py) * ops::pauli_y());
  ks.push_back(std::sqrt(pz) * ops::pauli_z());
  return ks;
}

constexpr std::size_t kMaxKrausOps = 16;

}  // namespace

AttackChannel AttackChannel::identity() {
  return AttackChannel(ChannelKind::Identity, {ops::identity2()}, {}, "identity");
}

AttackChannel AttackChannel::depolarizing(double p) {
  check_probability(p, "depolarizing probability");
  return AttackChannel(ChannelKind::Depolarizing,
                       pauli_kraus(1.0 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p), {p},
                       "depol:" + format_param(p));
}

AttackChannel AttackChannel::pauli(double px, double py, double pz) {
  check_probability(px, "px");
  check_probability(py, "py");
  check_probability(pz, "pz");
  const double sum = px + py + pz;
  if (sum > 1.0 + 1e-12) {
    throw std::invalid_argument("pauli weights must satisfy px+py+pz <= 1");
  }
  return AttackChannel(ChannelKind::Pauli, pauli_kraus(std::max(1.0 - sum, 0.0), px, py, pz),
                       {px, py, pz},
                       "pauli:" + format_param(px) + "," + format_param(py) + "," +
                           format_param(pz));
}

AttackChannel AttackChannel::kraus(std::vector<Mat> operators) {
  if (operators.empty() || operators.size() > kMaxKrausOps) {
    throw std::invalid_argument("kraus: operator list must hold 1..16 entries");
  }
  Mat completeness(2, 2);
  for (const Mat& k : operators) {
    if (k.rows() != 2 || k.cols() != 2) {
      throw std::invalid_argument("kraus: operators must be 2x2");
    }
    completeness += k.adjoint() * k;
  }
  if (Mat::max_abs_diff(completeness, ops::identity2()) > 1e-10) {
    throw std::invalid_argument("kraus: completeness sum K^dag K != 1 within 1e-10");
  }
  return AttackChannel(ChannelKind::Kraus, std::move(operators), {}, "kraus");
}

AttackChannel AttackChannel::intercept_resend() {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Mat> ks;
  for (Basis b : {Basis::z, Basis::x}) {
    for (int l = 0; l < 2; ++l) {
      ks.push_back(inv_sqrt2 * ops::basis_projector(b, l));
    }
  }
  return AttackChannel(ChannelKind::InterceptResend, std::move(ks), {}, "ir");
}

AttackChannel AttackChannel::separable_source(double d) {
  if (d < 0.25 - 1e-12 || d > 0.75 + 1e-12) {
    throw std::invalid_argument("separable_source: D must lie in [1/4, 3/4]");
  }
  return AttackChannel(ChannelKind::SeparableSource, {}, {d}, "sep:" + format_param(d));
}

double AttackChannel::source_qber() const {
  if (kind_ != ChannelKind::SeparableSource) {
    throw std::logic_error("source_qber: not a separable source");
  }
  return params_[0];
}

std::string AttackChannel::describe() const { return label_; }

DensityOperator apply_to_pair(const AttackChannel& ch, const DensityOperator& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("apply_to_pair: expected a two-qubit state");
  if (ch.kind() == ChannelKind::SeparableSource) {
    return separable_family(ch.source_qber());
  }
  Mat acc(4, 4);
  for (const Mat& k : ch.kraus_ops()) {
    const Mat kb = kron(ops::identity2(), k);
    acc += kb * rho.mat() * kb.adjoint();
  }
  return DensityOperator::unchecked(std::move(acc));
}

PairState make_pair_state(const AttackChannel& ch, const DensityOperator& input) {
  return PairState{apply_to_pair(ch, input), ch.describe()};
}

double analytic_qber(const AttackChannel& ch) {
  return qber_of_state(apply_to_pair(ch, DensityOperator::unchecked(
                                             ops::ket_bra(ops::bell_phi_plus()))));
}

DensityOperator stochastic_transmit(const AttackChannel& ch, const DensityOperator& qubit,
                                    Rng& rng) {
  if (qubit.dim() != 2) {
    throw std::invalid_argument("stochastic_transmit: expected a single-qubit state");
  }
  if (ch.kind() == ChannelKind::SeparableSource) {
    throw std::invalid_argument("stochastic_transmit: separable source has no per-qubit action");
  }
  const std::vector<Mat>& ks = ch.kraus_ops();

  // Branch probabilities p_i = Tr(K_i tau K_i^dag); they sum to one for a
  // trace-preserving map, so one uniform draw selects the branch.
  double probs[kMaxKrausOps];
  const std::size_t n = ks.size();
  for (std::size_t i = 0; i < n; ++i) {
    probs[i] = (ks[i] * qubit.mat() * ks[i].adjoint()).trace().real();
  }
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t pick = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative += probs[i];
    if (u < cumulative) {
      pick = i;
      break;
    }
  }
  while (probs[pick] <= 0.0 && pick > 0) --pick;  // numerically empty tail branch
  const Mat post = ks[pick] * qubit.mat() * ks[pick].adjoint();
  return DensityOperator::unchecked((1.0 / probs[pick]) * post);
}

nlohmann::json AttackChannel::to_json() const {
  switch (kind_) {
    case ChannelKind::Identity:
      return {{"kind", "identity"}};
    case ChannelKind::Depolarizing:
      return {{"kind", "depolarizing"}, {"p", params_[0]}};
    case ChannelKind::Pauli:
      return {{"kind", "pauli"}, {"px", params_[0]}, {"py", params_[1]}, {"pz", params_[2]}};
    case ChannelKind::Kraus: {
      nlohmann::json operators = nlohmann::json::array();
      for (const Mat& k : kraus_) {
        nlohmann::json entries = nlohmann::json::array();
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) entries.push_back({k(r, c).real(), k(r, c).imag()});
        operators.push_back({{"dim", 2}, {"entries", entries}});
      }
      return {{"kind", "kraus"}, {"operators", operators}};
    }
    case ChannelKind::InterceptResend:
      return {{"kind", "intercept_resend"}};
    default:
      return {{"kind", "separable_source"}, {"d", params_[0]}};
  }
}

AttackChannel AttackChannel::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "identity") return identity();
  if (kind == "depolarizing") return depolarizing(j.at("p").get<double>());
  if (kind == "pauli") {
    return pauli(j.at("px").get<double>(), j.at("py").get<double>(), j.at("pz").get<double>());
  }
  if (kind == "kraus") {
    std::vector<Mat> ks;
    for (const auto& op : j.at("operators")) {
      const auto& entries = op.at("entries");
      if (!entries.is_array() || entries.size() != 4) {
        throw std::invalid_argument("kraus operator must be 2x2");
      }
      std::vector<Complex> v;
      for (const auto& e : entries) v.emplace_back(e[0].get<double>(), e[1].get<double>());
      ks.emplace_back(2, 2, v);
    }
    return kraus(std::move(ks));
  }
  if (kind == "intercept_resend") return intercept_resend();
  if (kind == "separable_source") return separable_source(j.at("d").get<double>());
  throw std::invalid_argument("unknown channel kind: " + kind);
}

AttackChannel AttackChannel::from_preset(const std::string& spec) {
  if (spec == "identity") return identity();
  if (spec == "ir") return intercept_resend();
  if (spec.rfind("depol:", 0) == 0) return depolarizing(std::stod(spec.substr(6)));
  if (spec.rfind("sep:", 0) == 0) return separable_source(std::stod(spec.substr(4)));
  throw std::invalid_argument("unknown channel preset: " + spec);
}

}  // namespace qkd
