#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ghzsense/core.hpp"

namespace ghzsense {

// Brute-force simulator over the full 2^m register. Only the diagonal (a)
// and anti-diagonal (b) amplitudes of the density matrix are ever nonzero,
// so the state is two vectors. Deliberately independent of the kernels
// module: exponentials come from a generic dense Pade routine.
struct AmplitudeState {
  Eigen::VectorXd a;    // alpha_{j,j}
  Eigen::VectorXcd b;   // alpha_{j,jbar}
  int m = 0;            // total qubit count (n, or n+1 with ancilla)
};

struct GeneratorPair {
  Eigen::MatrixXd A;
  Eigen::MatrixXcd B;
  int m = 0;
};

// Kronecker sums of the 2x2 dephasing/signal blocks; ancilla (rate xi,
// no signal) appended as the least significant qubit when flagged.
// Throws when 2^m exceeds the 2^12 desk-scale guard.
GeneratorPair build_generators(int n, double omega, double gamma, double xi,
                               bool with_ancilla);

AmplitudeState ghz_state(int m);

AmplitudeState evolve(const AmplitudeState& state, const GeneratorPair& gen,
                      double tau);

// Parity-check correction with per-qubit syndrome error probability p;
// requires the ancilla (m = n + 1).
AmplitudeState apply_parity_check(const AmplitudeState& state, double p);

// Majority-vote projection onto the logical corners; m odd.
AmplitudeState apply_bitflip_code(const AmplitudeState& state);

// R e^{-i theta} of the corrected corner: 2 b[0] / (1-p)^n.
std::complex<double> recurrence_corner(const AmplitudeState& state, int n,
                                       double p);

struct OracleQfi {
  QfiResult result;
  bool degenerate = false;  // some populated pair had gap < 10 delta
};

// Finite-difference QFI: rebuilds the state at omega +- delta with
// delta = max(1e-6, 1e-6 |omega|) and applies the spectral sum.
OracleQfi qfi_numeric(const SystemParams& params, Scenario scenario);

}  // namespace ghzsense
