#pragma once

#include <array>

#include <json.hpp>

namespace qkd {

/// Weights of a mixture of Bell projectors, ordered (lam00, lam10, lam01,
/// lam11) = (Phi+, Phi-, Psi+, Psi-). The constructor clamps floating-point
/// dust (values in [-1e-12, 0)) to zero and requires the weights to sum to
/// one within 1e-12. States invariant under the Hadamard twirl additionally
/// satisfy lam01 == lam10; that subclass is not enforced here.
class BellDiagonal {
 public:
  BellDiagonal(double l00, double l10, double l01, double l11);

  double lam00() const { return lam_[0]; }
  double lam10() const { return lam_[1]; }
  double lam01() const { return lam_[2]; }
  double lam11() const { return lam_[3]; }
  const std::array<double, 4>& weights() const { return lam_; }

  bool g2_symmetric(double tolerance = 1e-12) const;

 private:
  std::array<double, 4> lam_;
};

/// QBER of the Bell mixture: lam11 + (lam01 + lam10)/2, which reduces to the
/// familiar lam11 + lam01 on the lam01 == lam10 subclass and agrees with the
/// measurement-defined QBER of the reconstructed state for every weight
/// vector.
double qber_of_bell_diagonal(const BellDiagonal& lam);

// JSON form: [lam00, lam10, lam01, lam11].
void to_json(nlohmann::json& j, const BellDiagonal& lam);
BellDiagonal bell_diagonal_from_json(const nlohmann::json& j);

}  // namespace qkd
