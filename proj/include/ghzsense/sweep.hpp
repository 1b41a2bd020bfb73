#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ghzsense/core.hpp"

namespace ghzsense {

enum class SweepAxis { gamma_tau, rounds, xi_over_gamma, p, alpha, t_over_tau };
enum class Spacing { linear, log };
enum class OutFormat { csv, json };

// For gamma_tau sweeps: hold rounds fixed, or hold total time fixed and set
// rounds = round(t / tau) per point (t taken from the config's fixed fields).
enum class HoldMode { rounds, total_time };

struct SweepConfig {
  Scenario scenario = Scenario::parity_ideal;
  SystemParams base;
  SweepAxis axis = SweepAxis::gamma_tau;
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
  Spacing spacing = Spacing::linear;
  std::vector<Method> evaluators;
  std::string out;
  OutFormat format = OutFormat::csv;
  HoldMode hold = HoldMode::rounds;
};

// Flat key-value JSON; unknown keys rejected.
SweepConfig parse_sweep_config(const std::string& json_text);

struct SweepRecord {
  Scenario scenario;
  Method method;
  SystemParams params;
  double qfi = 0.0;         // nan on error
  double qfi_over_tau2 = 0.0;
  double qfi_normalized = 0.0;
  std::string error;        // empty on success
};

std::vector<double> sweep_grid(const SweepConfig& config);
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

// Header: scenario,method,n,omega,gamma,xi,p,tau,rounds,t,qfi,qfi_over_tau2,
// qfi_normalized. 17 significant digits, LF endings, byte-deterministic.
void write_csv(const std::vector<SweepRecord>& records, std::ostream& os);
void write_json(const std::vector<SweepRecord>& records, std::ostream& os);
void write_records(const SweepConfig& config,
                   const std::vector<SweepRecord>& records);

// Figure presets: fig2a fig2d fig3a fig3b fig3c fig4. `out_dir` seeds the
// per-config output paths. Unknown names throw.
std::vector<SweepConfig> expand_preset(const std::string& name,
                                       const std::string& out_dir);

}  // namespace ghzsense
