#pragma once

#include <vector>

#include "ghzsense/core.hpp"
#include "ghzsense/dual.hpp"

namespace ghzsense {

// Corrected-state summary after `rounds` parity-check rounds: the state is
// block 2x2 over Hamming classes with eigenvalues w_h (1 +- R)/2, so R and
// theta (with their omega-derivatives) determine the QFI.
struct GhzMixedState {
  int n = 1;
  double t = 0.0;
  double p = 0.0;
  Dual log_R;                   // log R, clamped to <= 0
  Dual R;                       // exp(log_R)
  Dual theta;                   // unwrapped
  std::vector<double> weights;  // (1-p)^{n-h} p^h, h = 0..n
};

// Transfer-matrix ingredients exposed for inspection and tests.
struct RecurrenceData {
  CDual q_plus;         // (1-p) e^{+i phi} + p e^{-i phi}
  CDual q_minus;
  CDual mu_plus;        // eigenvalues of the 2x2 transfer matrix
  CDual mu_minus;
  CDual upsilon_plus;   // boundary vector entries
  CDual upsilon_minus;
  long long N = 0;      // n (rounds - 1)
};

RecurrenceData recurrence_data(const SystemParams& params);

enum class RecurrencePath { automatic, eigenform, binary_pow };

// Closed-form corner amplitude after all rounds. The eigenform is used when
// |mu_+ - mu_-| > 1e-10 max|mu|, binary exponentiation otherwise; an exact
// diagonal shortcut covers xi = 0. `path` forces a branch for cross-checks.
GhzMixedState solve_recurrence(const SystemParams& params,
                               RecurrencePath path = RecurrencePath::automatic);

struct StateQfi {
  QfiResult result;
  bool pure_limit = false;  // 1 - R^2 underflowed; only R^2 thetadot^2 kept
};

StateQfi qfi_from_state(const GhzMixedState& state,
                        Scenario scenario = Scenario::parity_general,
                        Method method = Method::exact);

// Series evaluators. Each rejects parameters outside its case.
QfiResult qfi_case1_series(const SystemParams& params);  // xi = 0, p = 0

struct Case2Series {
  QfiResult result;
  double g = 0.0;        // the three-line coefficient of xi
  double g_lower = 0.0;  // (2/3 - 7 gamma tau) t
  double g_upper = 0.0;  // (5/2)(t + tau)
};
Case2Series qfi_case2_series(const SystemParams& params);  // p = 0

QfiResult qfi_case3_series(const SystemParams& params);    // xi = 0

// Exact bit-flip-code evaluator (odd n): full 2x2 corner transfer matrix
// per round, no small-tau truncation.
QfiResult qfi_bitflip(const SystemParams& params);

// 3 / (2 n gamma omega^2 tau^2); rejects gamma = 0 or omega = 0.
double t_opt(const SystemParams& params);

// Numeric argmax of the ideal-case QFI over the round count (unimodal in
// rounds), for checking t_opt against the exact evaluator.
long long best_rounds(const SystemParams& params, long long lo, long long hi);

}  // namespace ghzsense
