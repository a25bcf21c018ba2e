#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qkd/rng.hpp"
#include "qkd/states.hpp"

namespace qkd {

enum class ChannelKind { Identity, Depolarizing, Pauli, Kraus, InterceptResend, SeparableSource };

/// Per-qubit eavesdropping/noise model applied to the transmitted (Bob's)
/// half of each pair. All kinds except SeparableSource reduce to a Kraus
/// list on one qubit:
///   Identity         {1}
///   Depolarizing(p)  {sqrt(1-3p/4) 1, sqrt(p/4) X, sqrt(p/4) Y, sqrt(p/4) Z}
///                    (p is the probability of full replacement by 1/2)
///   Pauli(px,py,pz)  {sqrt(1-px-py-pz) 1, sqrt(px) X, sqrt(py) Y, sqrt(pz) Z}
///   InterceptResend  {H^b |l><l| H^b / sqrt(2)} over b, l in {0,1}
///                    (measure in a random protocol basis, resend the outcome)
///   Kraus(list)      any completely positive trace-preserving 2x2 map
/// SeparableSource(D) instead replaces the pair state outright with the
/// separable family member sigma(D).
class AttackChannel {
 public:
  static AttackChannel identity();
  static AttackChannel depolarizing(double p);
  static AttackChannel pauli(double px, double py, double pz);
  static AttackChannel kraus(std::vector<Mat> operators);
  static AttackChannel intercept_resend();
  static AttackChannel separable_source(double d);

  ChannelKind kind() const { return kind_; }
  const std::vector<Mat>& kraus_ops() const { return kraus_; }
  /// D of a SeparableSource channel; throws for other kinds.
  double source_qber() const;

  /// Short human-readable descriptor, e.g. "depol:0.2".
  std::string describe() const;

  nlohmann::json to_json() const;
  static AttackChannel from_json(const nlohmann::json& j);
  /// Presets: identity | depol:p | ir | sep:D.
  static AttackChannel from_preset(const std::string& spec);

 private:
  AttackChannel(ChannelKind kind, std::vector<Mat> kraus, std::vector<double> params,
                std::string label)
      : kind_(kind), kraus_(std::move(kraus)), params_(std::move(params)),
        label_(std::move(label)) {}

  ChannelKind kind_;
  std::vector<Mat> kraus_;      // empty for SeparableSource
  std::vector<double> params_;  // kind-specific scalars
  std::string label_;
};

/// A pair state together with how it was produced.
struct PairState {
  DensityOperator rho;
  std::string provenance;
};

/// (id (x) channel) applied to a two-qubit state; SeparableSource ignores the
/// input and returns sigma(D).
DensityOperator apply_to_pair(const AttackChannel& ch, const DensityOperator& rho);

PairState make_pair_state(const AttackChannel& ch, const DensityOperator& input);

/// QBER the channel induces on the protocol source state:
/// qber_of_state(apply_to_pair(ch, Phi+)).
double analytic_qber(const AttackChannel& ch);

/// Samples one Kraus branch with its Born probability and returns the
/// normalized post-branch state. Consumes exactly one uniform draw. Not
/// defined for SeparableSource (no single-qubit action).
DensityOperator stochastic_transmit(const AttackChannel& ch, const DensityOperator& qubit,
                                    Rng& rng);

}  // namespace qkd
