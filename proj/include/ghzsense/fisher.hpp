#pragma once

#include <vector>

#include "ghzsense/core.hpp"
#include "ghzsense/ecc.hpp"

namespace ghzsense {

// Eigen-decomposition input for the spectral QFI: +- pairs sharing a phase,
// grouped by class with multiplicities. Cross terms are specialized to the
// GHZ pair structure, |<psidot_+-|psi_-+>|^2 = thetadot^2 / 4.
struct SpectralPair {
  double multiplicity = 1.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double d_lambda_plus = 0.0;
  double d_lambda_minus = 0.0;
  double theta = 0.0;
  double d_theta = 0.0;
};

struct SpectralDecomposition {
  std::vector<SpectralPair> pairs;
  double trace() const;
};

// Braunstein-Caves sum; skips lambda terms below 1e-14 and pairs with
// lambda_+ + lambda_- < 1e-14, throws on lambda < -1e-12.
double qfi_spectral(const SpectralDecomposition& decomp);

struct PovmAngle {
  double alpha = 0.0;  // total accumulated measurement phase
};

// Fisher information of the product-basis parity measurement at angle alpha.
// Closed form with the squared-cosine denominator, which the explicit
// outcome enumeration (fisher_povm_sum) reproduces exactly.
double fisher_povm(const GhzMixedState& state, PovmAngle alpha);

// Same numerator over 1 - R^2 cos(theta - alpha): kept verbatim as the
// reference variant; differs from the enumerated sum and can exceed the QFI.
double fisher_povm_printed(const GhzMixedState& state, PovmAngle alpha);

// Explicit 2^{n+1}-outcome evaluation of sum_j pdot_j^2 / p_j with
// p_j = (1 + (-1)^j R cos(theta - alpha)) / 2^{n+1}.
double fisher_povm_sum(const GhzMixedState& state, PovmAngle alpha, int n);

}  // namespace ghzsense
