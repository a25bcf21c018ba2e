#include "qkd/witness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qkd/twirl.hpp"

namespace qkd {

namespace {

constexpr double kSlackTol = -1e-12;     // boundary states count as separable
constexpr double kFeasibilityTol = -1e-12;

struct BellWeightsRaw {
  double a, b, c, d;  // lam00, lam10, lam01, lam11; may be slightly negative
};

double closed_form_min_pt(const BellWeightsRaw& w) {
  const double e1 = 0.5 * (w.a + w.b + (w.c - w.d));
  const double e2 = 0.5 * (w.a + w.b - (w.c - w.d));
  const double e3 = 0.5 * (w.c + w.d + (w.a - w.b));
  const double e4 = 0.5 * (w.c + w.d - (w.a - w.b));
  return std::min(std::min(e1, e2), std::min(e3, e4));
}

SeparabilityVerdict closed_form_verdict(const BellWeightsRaw& w) {
  SeparabilityVerdict v{};
  v.slack13 = (w.c + w.d) - std::abs(w.a - w.b);
  v.slack14 = (w.a + w.b) - std::abs(w.c - w.d);
  v.min_pt_eigenvalue = closed_form_min_pt(w);
  v.verdict = (v.slack13 >= kSlackTol && v.slack14 >= kSlackTol) ? Verdict::Separable
                                                                 : Verdict::Entangled;
  return v;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Entangled: return "Entangled";
    case Verdict::Separable: return "Separable";
    default: return "Infeasible";
  }
}

SeparabilityVerdict ppt_verdict_numeric(const DensityOperator& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("ppt_verdict_numeric: expected a two-qubit state");
  }
  const std::vector<double> ev = hermitian_eigenvalues(partial_transpose_b(rho.mat()));

  SeparabilityVerdict v{};
  v.min_pt_eigenvalue = ev.front();
  v.verdict = (ev.front() < tol::kPsdTol) ? Verdict::Entangled : Verdict::Separable;

  // Diagnostic slacks from the Bell-basis diagonal of rho; exact for
  // Bell-diagonal inputs.
  const auto& basis = ops::bell_basis();
  double lam[4];
  for (int i = 0; i < 4; ++i) {
    lam[i] = (basis[i].adjoint() * rho.mat() * basis[i])(0, 0).real();
  }
  v.slack13 = (lam[2] + lam[3]) - std::abs(lam[0] - lam[1]);
  v.slack14 = (lam[0] + lam[1]) - std::abs(lam[2] - lam[3]);
  return v;
}

SeparabilityVerdict ppt_verdict_bell(const BellDiagonal& lam) {
  return closed_form_verdict({lam.lam00(), lam.lam10(), lam.lam01(), lam.lam11()});
}

ImpliedWeights implied_weights(const RegionPoint& p) {
  ImpliedWeights w{};
  w.lam00 = 0.5 * (1.0 - p.d + p.g);
  w.lam01 = 0.5 * (1.0 - p.d - p.g);
  w.lam10 = w.lam01;
  w.lam11 = 0.5 * (3.0 * p.d + p.g - 1.0);
  w.feasible = w.lam00 >= kFeasibilityTol && w.lam01 >= kFeasibilityTol &&
               w.lam11 >= kFeasibilityTol;
  return w;
}

SeparabilityVerdict classify_region(const RegionPoint& p) {
  const ImpliedWeights w = implied_weights(p);
  SeparabilityVerdict v = closed_form_verdict({w.lam00, w.lam10, w.lam01, w.lam11});
  if (!w.feasible) v.verdict = Verdict::Infeasible;
  return v;
}

DensityOperator separable_family(double d) {
  if (d < 0.25 - 1e-12 || d > 0.75 + 1e-12) {
    throw std::domain_error("separable_family: D must lie in [1/4, 3/4]");
  }
  d = std::clamp(d, 0.25, 0.75);

  if (d > 0.5) {
    // 1(x)Y mirror of the low-disturbance member; swaps the Phi+ and Psi-
    // sectors, hence maps QBER 1-d to d while preserving separability.
    const Mat u = kron(ops::identity2(), ops::pauli_y());
    return DensityOperator(u * separable_family(1.0 - d).mat() * u.adjoint());
  }

  Mat ket[2] = {Mat(2, 1), Mat(2, 1)};
  ket[0](0, 0) = 1.0;
  ket[1](1, 0) = 1.0;
  auto sigma_c = [&](int k) {
    return 0.5 * (ket[0] * ket[k].adjoint() + ket[1] * ket[1 ^ k].adjoint());
  };

  Mat acc = ((4.0 * d - 1.0) / 4.0) * ops::identity4();
  const double w = std::abs(1.0 - 2.0 * d);
  for (int k = 0; k < 2; ++k) {
    const Mat pk = ops::ket_bra(ket[k]);
    acc += w * (0.5 * kron(pk, pk) + kron(sigma_c(k), sigma_c(k)));
  }
  return DensityOperator(std::move(acc));
}

namespace {

// Grid axis i*step over [lo, hi] with required values force-inserted.
std::vector<double> grid_axis(double lo, double hi, double step,
                              std::initializer_list<double> required) {
  std::vector<double> v;
  const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
  v.reserve(n + 3);
  for (long i = 0; i <= n; ++i) v.push_back(lo + static_cast<double>(i) * step);
  for (double r : required) {
    bool present = false;
    for (double x : v) {
      if (std::abs(x - r) < 1e-12) {
        present = true;
        break;
      }
    }
    if (!present) v.push_back(r);
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

bool SweepResult::all_ok() const {
  return low_region_all_entangled && high_region_all_entangled &&
         separable_exists_per_mid_d && numeric_agreement && reflection_symmetric;
}

SweepResult threshold_scan(double step) {
  if (!(step > 0.0) || step > 0.01 + 1e-15) {
    throw std::domain_error("threshold_scan: step must lie in (0, 0.01]");
  }

  SweepResult res;
  res.d_values = grid_axis(0.0, 1.0, step, {0.25, 0.75});
  res.g_values = grid_axis(-1.0, 1.0, step, {-0.25, 0.25});
  res.rows.reserve(res.d_values.size() * res.g_values.size());

  res.low_region_all_entangled = true;
  res.high_region_all_entangled = true;
  res.numeric_agreement = true;

  std::vector<long> separable_at_d(res.d_values.size(), 0);

  for (std::size_t di = 0; di < res.d_values.size(); ++di) {
    const double d = res.d_values[di];
    for (double g : res.g_values) {
      const RegionPoint p{d, g};
      const SeparabilityVerdict v = classify_region(p);
      res.rows.push_back({d, g, v.verdict, v.min_pt_eigenvalue, v.slack13, v.slack14});
      if (v.verdict == Verdict::Infeasible) continue;

      ++res.feasible_points;
      if (v.verdict == Verdict::Separable) {
        ++res.separable_points;
        ++separable_at_d[di];
        if (d < 0.25 - 1e-12) res.low_region_all_entangled = false;
        if (d > 0.75 + 1e-12) res.high_region_all_entangled = false;
      }

      // Cross-check the closed form against the eigensolve route.
      const ImpliedWeights w = implied_weights(p);
      double cl[4] = {std::max(w.lam00, 0.0), std::max(w.lam10, 0.0), std::max(w.lam01, 0.0),
                      std::max(w.lam11, 0.0)};
      const double s = cl[0] + cl[1] + cl[2] + cl[3];
      const BellDiagonal lam(cl[0] / s, cl[1] / s, cl[2] / s, cl[3] / s);
      const SeparabilityVerdict numeric = ppt_verdict_numeric(reconstruct(lam));
      if (numeric.verdict != v.verdict ||
          std::abs(numeric.min_pt_eigenvalue - v.min_pt_eigenvalue) > tol::kEigTol) {
        res.numeric_agreement = false;
      }
    }
  }

  res.separable_exists_per_mid_d = true;
  for (std::size_t di = 0; di < res.d_values.size(); ++di) {
    const double d = res.d_values[di];
    if (d >= 0.25 - 1e-12 && d <= 0.75 + 1e-12 && separable_at_d[di] == 0) {
      res.separable_exists_per_mid_d = false;
    }
  }

  res.reflection_symmetric = true;
  for (std::size_t di = 0; di < res.d_values.size(); ++di) {
    for (std::size_t dj = di; dj < res.d_values.size(); ++dj) {
      if (std::abs(res.d_values[di] + res.d_values[dj] - 1.0) < 1e-9) {
        if (separable_at_d[di] != separable_at_d[dj]) res.reflection_symmetric = false;
      }
    }
  }
  return res;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "D,G,verdict,min_pt_eig,slack13,slack14\n";
  char buf[160];
  for (const SweepRow& r : result.rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,%s,%.9g,%.9g,%.9g\n", r.d, r.g,
                  to_string(r.verdict), r.min_pt_eig, r.slack13, r.slack14);
    out << buf;
  }
}

}  // namespace qkd
