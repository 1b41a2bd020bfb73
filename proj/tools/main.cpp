#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghzsense/core.hpp"
#include "ghzsense/ecc.hpp"
#include "ghzsense/noec.hpp"
#include "ghzsense/oracle.hpp"
#include "ghzsense/sweep.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ghzsense::SystemParams parse_params_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object())
    throw std::invalid_argument("params file must be a JSON object");
  static const std::set<std::string> known = {"n",  "omega", "gamma", "xi",
                                              "p",  "tau",   "rounds"};
  for (const auto& el : j.items())
    if (!known.count(el.key()))
      throw std::invalid_argument("unknown params key: " + el.key());
  ghzsense::SystemParams p;
  p.n = j.value("n", 1);
  p.omega = j.value("omega", 0.0);
  p.gamma = j.value("gamma", 0.0);
  p.xi = j.value("xi", 0.0);
  p.p = j.value("p", 0.0);
  p.tau = j.value("tau", 1.0);
  if (j.contains("rounds")) {
    const auto& r = j.at("rounds");
    p.rounds = r.is_number_integer() ? r.get<long long>()
                                     : std::llround(r.get<double>());
  }
  ghzsense::validate(p);
  return p;
}

double closed_qfi(const ghzsense::SystemParams& p, ghzsense::Scenario s) {
  using namespace ghzsense;
  switch (s) {
    case Scenario::no_ec:
      return qfi_noec_exact(p, p.t()).qfi;
    case Scenario::bitflip:
      return qfi_bitflip(p).qfi;
    default:
      return qfi_from_state(solve_recurrence(p), s).result.qfi;
  }
}

int run_sweep_cmd(const std::string& config_path) {
  using namespace ghzsense;
  SweepConfig config = parse_sweep_config(slurp(config_path));
  auto records = run_sweep(config);
  write_records(config, records);
  size_t errors = 0;
  for (const auto& r : records)
    if (!r.error.empty()) ++errors;
  std::printf("%zu rows (%zu error rows) -> %s\n", records.size(), errors,
              config.out.c_str());
  return 0;
}

int run_preset_cmd(const std::string& name, const std::string& out_dir) {
  using namespace ghzsense;
  auto configs = expand_preset(name, out_dir);
  for (const auto& config : configs) {
    auto records = run_sweep(config);
    write_records(config, records);
    std::printf("%zu rows -> %s\n", records.size(), config.out.c_str());
  }
  return 0;
}

int run_validate_cmd(int n, const std::string& scenario_tag) {
  using namespace ghzsense;
  Scenario s = parse_scenario(scenario_tag);
  double xi = 0.0, p = 0.0;
  if (s == Scenario::parity_noisy_ancilla || s == Scenario::parity_general)
    xi = 1e-4;
  if (s == Scenario::parity_imperfect || s == Scenario::parity_general)
    p = 0.06;
  double worst = 0.0;
  int count = 0;
  for (long long rounds : {1ll, 4ll, 8ll}) {
    for (double wt : {0.05, 0.2, 0.5}) {
      for (double gt : {0.005, 0.02, 0.1}) {
        SystemParams prm;
        prm.n = n;
        prm.gamma = 1.0;
        prm.tau = gt;
        prm.omega = wt / gt;
        prm.xi = xi;
        prm.p = p;
        prm.rounds = rounds;
        double closed = closed_qfi(prm, s);
        OracleQfi oracle = qfi_numeric(prm, s);
        double rel = std::abs(closed - oracle.result.qfi) /
                     std::max(std::abs(oracle.result.qfi), 1e-300);
        worst = std::max(worst, rel);
        ++count;
        std::printf(
            "rounds=%lld omega*tau=%.2f gamma*tau=%.3f closed=%.12g "
            "oracle=%.12g rel=%.3g%s\n",
            rounds, wt, gt, closed, oracle.result.qfi, rel,
            oracle.degenerate ? " (degenerate)" : "");
      }
    }
  }
  std::printf("validate %s n=%d: %d points, max relative difference %.3g\n",
              scenario_tag.c_str(), n, count, worst);
  bool pass = worst < 1e-6;
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int run_topt_cmd(const std::string& params_path) {
  using namespace ghzsense;
  SystemParams p = parse_params_json(slurp(params_path));
  double formula = t_opt(p);
  SystemParams ideal = p;
  ideal.xi = 0.0;
  ideal.p = 0.0;
  long long hi = std::llround(4.0 * formula / p.tau) + 2;
  if (hi > 100000000ll) hi = 100000000ll;
  long long best = best_rounds(ideal, 1, hi);
  double numeric_t = static_cast<double>(best) * p.tau;
  std::printf("t_opt formula: %.17g\n", formula);
  std::printf("numeric argmax: rounds=%lld t=%.17g\n", best, numeric_t);
  std::printf("ratio numeric/formula: %.6g\n", numeric_t / formula);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QFI curves for error-corrected GHZ frequency estimation"};
  app.require_subcommand(1);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a sweep from a JSON config");
  std::string config_path;
  sweep_cmd->add_option("--config", config_path, "JSON sweep config file")
      ->required();

  auto* preset_cmd =
      app.add_subcommand("preset", "Expand and run a named figure preset");
  std::string preset_name, out_dir;
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  preset_cmd->add_option("--out", out_dir, "output directory")->required();

  auto* validate_cmd = app.add_subcommand(
      "validate", "Cross-check closed forms against the dense oracle");
  int val_n = 2;
  std::string val_scenario = "parity-general";
  validate_cmd->add_option("--n", val_n, "sensing-qubit count")->required();
  validate_cmd->add_option("--scenario", val_scenario, "scenario tag")
      ->required();

  auto* topt_cmd =
      app.add_subcommand("topt", "Optimal total sensing time for params");
  std::string params_path;
  topt_cmd->add_option("--params", params_path, "JSON params file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep_cmd->parsed()) return run_sweep_cmd(config_path);
    if (preset_cmd->parsed()) return run_preset_cmd(preset_name, out_dir);
    if (validate_cmd->parsed()) return run_validate_cmd(val_n, val_scenario);
    if (topt_cmd->parsed()) return run_topt_cmd(params_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
