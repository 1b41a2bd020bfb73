#pragma once

#include <string>

namespace ghzsense {

// All rates are 1/time, omega is rad/time, times share one arbitrary unit;
// results depend only on the dimensionless products (omega*tau, gamma*tau,
// xi*t, gamma*t). Total sensing time is always rounds * tau, never stored.
struct SystemParams {
  int n = 1;              // sensing-qubit count
  double omega = 0.0;     // signal frequency
  double gamma = 0.0;     // sensing dephasing rate
  double xi = 0.0;        // ancilla dephasing rate
  double p = 0.0;         // syndrome error probability, in [0, 1)
  double tau = 1.0;       // inter-correction interval
  long long rounds = 1;   // t / tau

  double t() const { return static_cast<double>(rounds) * tau; }
};

// Throws std::invalid_argument naming the first violated field.
const SystemParams& validate(const SystemParams& params);

enum class Scenario {
  no_ec,
  parity_ideal,
  parity_noisy_ancilla,
  parity_imperfect,
  parity_general,
  bitflip,
};

enum class Method { exact, series, oracle };

const char* to_string(Scenario s);
const char* to_string(Method m);
Scenario parse_scenario(const std::string& tag);
Method parse_method(const std::string& tag);

// Polar pair with omega-derivatives; houses r, phi per round and the
// accumulated R, theta of the corrected-state corner amplitude.
struct DualComplexPolar {
  double modulus = 0.0;
  double phase = 0.0;
  double d_modulus = 0.0;
  double d_phase = 0.0;
};

struct QfiResult {
  double qfi = 0.0;         // units time^2
  double normalized = 0.0;  // qfi / (n t)^2
  Scenario scenario = Scenario::no_ec;
  Method method = Method::exact;
};

QfiResult make_qfi_result(double qfi, const SystemParams& params,
                          Scenario scenario, Method method);

}  // namespace ghzsense
