#include "ghzsense/core.hpp"

#include <stdexcept>

namespace ghzsense {

const SystemParams& validate(const SystemParams& params) {
  if (params.n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(params.omega == params.omega))
    throw std::invalid_argument("omega must be finite");
  if (!(params.gamma >= 0.0))
    throw std::invalid_argument("gamma must be >= 0");
  if (!(params.xi >= 0.0)) throw std::invalid_argument("xi must be >= 0");
  if (!(params.p >= 0.0 && params.p < 1.0))
    throw std::invalid_argument("p must be in [0, 1)");
  if (!(params.tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (params.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  return params;
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::no_ec: return "no-ec";
    case Scenario::parity_ideal: return "parity-ideal";
    case Scenario::parity_noisy_ancilla: return "parity-noisy-ancilla";
    case Scenario::parity_imperfect: return "parity-imperfect";
    case Scenario::parity_general: return "parity-general";
    case Scenario::bitflip: return "bitflip";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::series: return "series";
    case Method::oracle: return "oracle";
  }
  return "?";
}

Scenario parse_scenario(const std::string& tag) {
  if (tag == "no-ec") return Scenario::no_ec;
  if (tag == "parity-ideal") return Scenario::parity_ideal;
  if (tag == "parity-noisy-ancilla") return Scenario::parity_noisy_ancilla;
  if (tag == "parity-imperfect") return Scenario::parity_imperfect;
  if (tag == "parity-general") return Scenario::parity_general;
  if (tag == "bitflip") return Scenario::bitflip;
  throw std::invalid_argument("unknown scenario tag: " + tag);
}

Method parse_method(const std::string& tag) {
  if (tag == "exact") return Method::exact;
  if (tag == "series") return Method::series;
  if (tag == "oracle") return Method::oracle;
  throw std::invalid_argument("unknown method tag: " + tag);
}

QfiResult make_qfi_result(double qfi, const SystemParams& params,
                          Scenario scenario, Method method) {
  double nt = static_cast<double>(params.n) * params.t();
  return {qfi, qfi / (nt * nt), scenario, method};
}

}  // namespace ghzsense
