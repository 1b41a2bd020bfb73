#pragma once

#include <vector>

#include "ghzsense/core.hpp"
#include "ghzsense/dual.hpp"

namespace ghzsense {

// One Hamming weight class of the uncorrected state. All amplitudes carry
// the e^{-n gamma t} prefactor already (s_hat = e^{-n gamma t} s_j etc.);
// the scaled form stays in [0, 1] for any n and gamma t, the raw s_j do not.
struct HammingClass {
  int h = 0;
  double log_multiplicity = 0.0;  // ln binomial(n, h)
  double s_hat = 0.0;             // scaled population pair sum, no omega dep
  Dual r_hat;                     // scaled anti-diagonal magnitude
  Dual theta;                     // pair phase
};

struct HammingSpectrum {
  int n = 1;
  double gamma_t = 0.0;
  std::vector<HammingClass> classes;  // h = 0..n

  double log_prefactor() const { return -static_cast<double>(n) * gamma_t; }
  // (1/2) sum_h binom(n,h) s_hat_h; equals 1 for a trace-one state. The
  // half compensates the sum visiting each (j, jbar) eigen-pair twice.
  double trace() const;
};

HammingSpectrum hamming_spectrum(const SystemParams& params, double t);

// Exact QFI without correction, via the weight-class spectral sum.
QfiResult qfi_noec_exact(const SystemParams& params, double t);

// Short-time approximant n^2 t^2 (1 - (2 - 4/(3n)) gamma t).
QfiResult qfi_noec_taylor(const SystemParams& params, double t);

}  // namespace ghzsense
