#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkd/channels.hpp"
#include "qkd/errors.hpp"
#include "qkd/protocol.hpp"
#include "qkd/purification.hpp"
#include "qkd/selfcheck.hpp"
#include "qkd/twirl.hpp"
#include "qkd/witness.hpp"

namespace {

// Exit-code contract: 0 pass/proceed, 1 assertion failure, 2 I/O failure,
// 3 abort decision, 64 usage/spec error, 65 malformed data.
constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitIo = 2;
constexpr int kExitAbort = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return nlohmann::json::parse(in);  // json::parse_error on malformed content
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write to " + path + " failed");
}

int run_sweep(double step, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  const qkd::SweepResult result = qkd::threshold_scan(step);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream csv;
  qkd::write_sweep_csv(result, csv);
  try {
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      write_file(out_path, csv.str());
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  const nlohmann::json report{
      {"step", step},
      {"out", out_path},
      {"rows", result.rows.size()},
      {"feasible_points", result.feasible_points},
      {"separable_points", result.separable_points},
      {"checks",
       {{"low_region_all_entangled", result.low_region_all_entangled},
        {"high_region_all_entangled", result.high_region_all_entangled},
        {"separable_exists_per_mid_d", result.separable_exists_per_mid_d},
        {"numeric_agreement", result.numeric_agreement},
        {"reflection_symmetric", result.reflection_symmetric}}},
      {"elapsed_seconds", elapsed},
  };
  std::cout << report.dump() << "\n";
  return result.all_ok() ? kExitOk : kExitAssertion;
}

int run_simulate(const std::string& mode, const std::string& channel_spec,
                 std::uint64_t pairs, std::uint64_t seed, bool confidence,
                 const std::string& config_path, const std::string& out_path,
                 bool pairs_given, bool seed_given, double low, double high) {
  qkd::ProtocolConfig cfg;
  try {
    if (!config_path.empty()) {
      cfg = qkd::protocol_config_from_json(load_json(config_path));
    }
    if (pairs_given || config_path.empty()) cfg.num_pairs = pairs;
    if (seed_given || config_path.empty()) cfg.seed = seed;
    if (mode == "eb") {
      cfg.mode = qkd::ProtocolMode::EntanglementBased;
    } else {
      cfg.mode = qkd::ProtocolMode::PrepareAndMeasure;
    }
    cfg.decision_low = low;
    cfg.decision_high = high;
    cfg.validate();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  qkd::RunSummary summary;
  nlohmann::json channel_json;
  try {
    qkd::AttackChannel channel = [&] {
      try {
        return qkd::AttackChannel::from_preset(channel_spec);
      } catch (const std::invalid_argument&) {
        return qkd::AttackChannel::from_json(load_json(channel_spec));
      }
    }();
    channel_json = channel.to_json();
    summary = cfg.mode == qkd::ProtocolMode::EntanglementBased
                  ? qkd::run_entanglement_round(cfg, channel)
                  : qkd::run_pm_round(cfg, channel);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  nlohmann::json out{{"config", cfg}, {"summary", summary}};
  out["config"]["channel"] = channel_json;
  if (confidence) {
    const auto [lo, hi] = qkd::clopper_pearson(summary.errors, summary.checked);
    out["summary"]["confidence_interval_95"] = {lo, hi};
  }

  try {
    if (!out_path.empty()) write_file(out_path, out.dump() + "\n");
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  std::cout << out.dump() << "\n";
  std::cout << "decision: " << qkd::to_string(summary.decision) << "\n";
  return summary.decision == qkd::Decision::Proceed ? kExitOk : kExitAbort;
}

int run_witness(const std::string& in_path) {
  try {
    const nlohmann::json j = load_json(in_path);
    qkd::SeparabilityVerdict verdict{};
    double qber = 0.0;
    if (j.is_array()) {
      const qkd::BellDiagonal lam = qkd::bell_diagonal_from_json(j);
      verdict = qkd::ppt_verdict_bell(lam);
      qber = qkd::qber_of_bell_diagonal(lam);
    } else {
      const qkd::DensityOperator rho = qkd::density_operator_from_json(j);
      verdict = qkd::ppt_verdict_numeric(rho);
      qber = qkd::qber_of_state(rho);
    }
    const nlohmann::json out{
        {"input", in_path},
        {"verdict", qkd::to_string(verdict.verdict)},
        {"min_pt_eigenvalue", verdict.min_pt_eigenvalue},
        {"slack13", verdict.slack13},
        {"slack14", verdict.slack14},
        {"qber", qber},
    };
    std::cout << out.dump() << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int run_qber(const std::string& in_path) {
  try {
    const nlohmann::json j = load_json(in_path);
    double qber = 0.0;
    if (j.is_array()) {
      qber = qkd::qber_of_bell_diagonal(qkd::bell_diagonal_from_json(j));
    } else {
      qber = qkd::qber_of_state(qkd::density_operator_from_json(j));
    }
    const nlohmann::json out{{"input", in_path}, {"qber", qber}};
    std::cout << out.dump() << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int run_purify(const std::string& in_path, double target, int max_rounds) {
  try {
    const nlohmann::json j = load_json(in_path);
    // A weight vector is taken as-is; a density operator is twirled into the
    // Bell-diagonal family first.
    const qkd::BellDiagonal lam =
        j.is_array() ? qkd::bell_diagonal_from_json(j)
                     : qkd::bell_diagonal_of(qkd::twirl(qkd::density_operator_from_json(j)));

    char buf[220];
    std::cout << "# in=" << in_path << " target=" << target << " max_rounds=" << max_rounds
              << "\n";
    std::cout << "round,lam00,lam10,lam01,lam11,p_success,cumulative_yield\n";
    std::snprintf(buf, sizeof buf, "0,%.9g,%.9g,%.9g,%.9g,,1\n", lam.lam00(), lam.lam10(),
                  lam.lam01(), lam.lam11());
    std::cout << buf;
    const qkd::EppState final_state = qkd::purify_until(
        lam, target, max_rounds,
        [&](int round, const qkd::BellDiagonal& l, double p, double yield) {
          std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", round, l.lam00(),
                        l.lam10(), l.lam01(), l.lam11(), p, yield);
          std::cout << buf;
        });
    const bool reached = std::max(final_state.lam.lam00(), final_state.lam.lam11()) >= target;
    std::cout << "# rounds=" << final_state.rounds << " reached_target=" << (reached ? 1 : 0)
              << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int run_selfcheck_cmd() {
  const qkd::SelfcheckReport report = qkd::run_selfcheck();
  std::cout << "seed: " << qkd::kSelfcheckSeed << "\n" << report.format();
  return report.pass() ? kExitOk : kExitAssertion;
}

std::string validate_step(const std::string& s) {
  try {
    const double v = std::stod(s);
    if (v > 0.0 && v <= 0.01) return {};
  } catch (...) {
  }
  return "step must lie in (0, 0.01]";
}

std::string validate_target(const std::string& s) {
  try {
    const double v = std::stod(s);
    if (v > 0.5 && v < 1.0) return {};
  } catch (...) {
  }
  return "target must lie in (0.5, 1)";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BB84 entanglement-threshold toolkit"};
  app.require_subcommand(1);

  double step = 0.005;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "grid sweep of the (D, G) separability plane");
  sweep->add_option("--step", step, "grid step")->required()->check(validate_step);
  sweep->add_option("--out", sweep_out, "CSV output path (stdout when omitted)");

  std::string mode, channel_spec, config_path, sim_out;
  std::uint64_t pairs = 0, seed = 0;
  bool confidence = false;
  double low = 0.25, high = 0.75;
  CLI::App* simulate = app.add_subcommand("simulate", "run one protocol round");
  simulate->add_option("--mode", mode, "eb | pm")
      ->required()
      ->check(CLI::IsMember({"eb", "pm"}));
  CLI::Option* channel_opt =
      simulate->add_option("--channel", channel_spec,
                           "preset (identity|depol:p|ir|sep:D) or channel JSON file")
          ->required();
  CLI::Option* pairs_opt =
      simulate->add_option("--pairs", pairs, "pair count (eb) / raw qubits (pm)");
  CLI::Option* seed_opt = simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_flag("--confidence", confidence, "report a Clopper-Pearson 95% interval");
  simulate->add_option("--config", config_path, "ProtocolConfig JSON file");
  simulate->add_option("--out", sim_out, "also write the result JSON here");
  simulate->add_option("--low", low, "abort-interval lower edge");
  simulate->add_option("--high", high, "abort-interval upper edge");
  (void)channel_opt;

  std::string witness_in;
  CLI::App* witness = app.add_subcommand("witness", "separability verdict of a state file");
  witness->add_option("--in", witness_in, "density-operator JSON or weight-vector JSON")
      ->required();

  std::string purify_in;
  double target = 0.99;
  int max_rounds = 40;
  CLI::App* purify = app.add_subcommand("purify", "iterate the purification recurrence");
  purify->add_option("--in", purify_in, "weight-vector (or density-operator) JSON")->required();
  purify->add_option("--target", target, "target fidelity")->required()->check(validate_target);
  purify->add_option("--max-rounds", max_rounds, "round cap")
      ->required()
      ->check(CLI::NonNegativeNumber);

  std::string qber_in;
  CLI::App* qber = app.add_subcommand("qber", "QBER of a state file");
  qber->add_option("--in", qber_in, "density-operator JSON or weight-vector JSON")->required();

  CLI::App* selfcheck = app.add_subcommand("selfcheck", "built-in consistency battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (sweep->parsed()) return run_sweep(step, sweep_out);
  if (simulate->parsed()) {
    if (config_path.empty() && pairs_opt->count() == 0) {
      std::cerr << "error: --pairs is required without --config\n";
      return kExitUsage;
    }
    return run_simulate(mode, channel_spec, pairs, seed, confidence, config_path, sim_out,
                        pairs_opt->count() > 0, seed_opt->count() > 0, low, high);
  }
  if (witness->parsed()) return run_witness(witness_in);
  if (purify->parsed()) return run_purify(purify_in, target, max_rounds);
  if (qber->parsed()) return run_qber(qber_in);
  if (selfcheck->parsed()) return run_selfcheck_cmd();
  return kExitUsage;
}
