#pragma once

#include <complex>

#include "ghzsense/core.hpp"
#include "ghzsense/dual.hpp"

namespace ghzsense {

// cos(Delta tau) and sin(Delta tau)/Delta as entire functions of
// Delta^2 = omega^2 - gamma^2, continuous through Delta = 0.
struct TrigDelta {
  double cos_term = 1.0;
  double sinc_term = 0.0;
  double d_cos_term = 0.0;   // d/domega
  double d_sinc_term = 0.0;  // d/domega

  Dual cos_dual() const { return {cos_term, d_cos_term}; }
  Dual sinc_dual() const { return {sinc_term, d_sinc_term}; }
};

// Single-interval anti-diagonal kernel entries; the e^{-gamma tau} prefactor
// is NOT folded in here, callers apply it.
struct SignalKernel {
  std::complex<double> x_minus;  // cos(Dt) - i (omega/D) sin(Dt)
  std::complex<double> x_plus;   // conjugate partner
  double y = 0.0;                // gamma sin(Dt)/D
  std::complex<double> d_x_minus;
  std::complex<double> d_x_plus;
  double d_y = 0.0;

  CDual x_minus_dual() const { return {x_minus, d_x_minus}; }
  CDual x_plus_dual() const { return {x_plus, d_x_plus}; }
  Dual y_dual() const { return {y, d_y}; }
};

// cosh/sinh pair for the population kernel; rate = gamma (sensing) or
// xi (ancilla). No omega dependence.
struct DiagonalKernel {
  double c = 1.0;      // cosh(rate tau)
  double s = 0.0;      // sinh(rate tau)
  double decay = 0.0;  // rate tau
};

// Per-round contraction/rotation of the anti-diagonal amplitude in
// log-polar form: r = e^{log_r}, phase phi, both with d/domega.
struct RoundPolar {
  Dual log_r;
  Dual phi;
};

TrigDelta trig_delta(double omega, double gamma, double tau);
SignalKernel signal_kernel(double omega, double gamma, double tau);
DualComplexPolar round_factor(double omega, double gamma, double tau);
RoundPolar round_polar(double omega, double gamma, double tau);
DiagonalKernel diagonal_kernel(double rate, double tau);

}  // namespace ghzsense
