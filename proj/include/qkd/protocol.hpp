#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include <json.hpp>

#include "qkd/channels.hpp"
#include "qkd/rng.hpp"

namespace qkd {

enum class ProtocolMode { EntanglementBased, PrepareAndMeasure };

struct ProtocolConfig {
  std::uint64_t num_pairs = 0;  // entanglement mode: pair count 2n; pm mode: raw qubits
  ProtocolMode mode = ProtocolMode::EntanglementBased;
  std::uint64_t seed = 0;
  double decision_low = 0.25;
  double decision_high = 0.75;

  void validate() const;  // throws std::invalid_argument
};

enum class Decision { Proceed, Abort };

const char* to_string(Decision d);

struct BasisTally {
  std::uint64_t checked = 0;
  std::uint64_t errors = 0;
};

struct RunSummary {
  std::uint64_t checked = 0;
  std::uint64_t errors = 0;
  double estimated_qber = 0.0;
  std::array<BasisTally, 2> per_basis_errors{};  // indexed by basis bit b
  Decision decision = Decision::Proceed;
  std::uint64_t seed = 0;

  bool operator==(const RunSummary& o) const;
};

/// Abort exactly on the closed interval [decision_low, decision_high]; at the
/// endpoints a separable explanation of the correlations exists, so the
/// boundary counts as abort.
Decision decide(double estimated_qber, const ProtocolConfig& cfg);

/// One verification round of the entanglement-based protocol: 2n pairs start
/// as Phi+, a random subset gets a Hadamard on the transmitted half, the
/// channel acts on that half, announced Hadamards are reversed, the pairs are
/// shuffled, and the first n are measured jointly along Z. Deterministic
/// given (cfg, channel); stream layout: derive(0,0) masks, derive(1,0)
/// permutation, derive(2,i) measurement of pair i.
RunSummary run_entanglement_round(const ProtocolConfig& cfg, const AttackChannel& ch);

/// One prepare-and-measure round: per raw qubit Alice draws a bit and basis
/// and sends H^b|l>, the qubit passes the stochastic channel, Bob measures in
/// a random basis; matched-basis positions are sifted and a random half of
/// the sifted key is consumed as the error sample. Stream layout: derive(1,0)
/// sample shuffle, derive(2,i) everything local to qubit i. If the sample is
/// empty (tiny rounds) the estimate is 0.
RunSummary run_pm_round(const ProtocolConfig& cfg, const AttackChannel& ch);

/// Clopper-Pearson two-sided confidence interval for errors/trials.
std::pair<double, double> clopper_pearson(std::uint64_t errors, std::uint64_t trials,
                                          double confidence = 0.95);

void to_json(nlohmann::json& j, const RunSummary& s);
void to_json(nlohmann::json& j, const ProtocolConfig& cfg);
ProtocolConfig protocol_config_from_json(const nlohmann::json& j);

}  // namespace qkd
