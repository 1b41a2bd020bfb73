#include "ghzsense/fisher.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ghzsense {

double SpectralDecomposition::trace() const {
  double acc = 0.0;
  for (const auto& pr : pairs)
    acc += pr.multiplicity * (pr.lambda_plus + pr.lambda_minus);
  return acc;
}

double qfi_spectral(const SpectralDecomposition& decomp) {
  double acc = 0.0;
  for (const auto& pr : decomp.pairs) {
    if (pr.lambda_plus < -1e-12 || pr.lambda_minus < -1e-12)
      throw std::invalid_argument("negative eigenvalue in spectral sum");
    double sum = pr.lambda_plus + pr.lambda_minus;
    if (sum < 1e-14) continue;  // unpopulated pair
    double term = 0.0;
    if (pr.lambda_plus >= 1e-14)
      term += pr.d_lambda_plus * pr.d_lambda_plus / pr.lambda_plus;
    if (pr.lambda_minus >= 1e-14)
      term += pr.d_lambda_minus * pr.d_lambda_minus / pr.lambda_minus;
    // Cross term between the pair's eigenvectors: the shared phase rotates
    // them into each other at rate theta_dot / 2.
    double gap = pr.lambda_plus - pr.lambda_minus;
    term += gap * gap / sum * pr.d_theta * pr.d_theta;
    acc += pr.multiplicity * term;
  }
  return acc;
}

double fisher_povm(const GhzMixedState& state, PovmAngle alpha) {
  double c = std::cos(state.theta.v - alpha.alpha);
  double s = std::sin(state.theta.v - alpha.alpha);
  double num = state.R.d * c - state.R.v * state.theta.d * s;
  double den = 1.0 - state.R.v * state.R.v * c * c;
  if (den < 1e-300) den = 1e-300;  // pure state at extremal angle
  return num * num / den;
}

double fisher_povm_printed(const GhzMixedState& state, PovmAngle alpha) {
  double c = std::cos(state.theta.v - alpha.alpha);
  double s = std::sin(state.theta.v - alpha.alpha);
  double num = state.R.d * c - state.R.v * state.theta.d * s;
  double den = 1.0 - state.R.v * state.R.v * c;
  if (den < 1e-300) den = 1e-300;
  return num * num / den;
}

double fisher_povm_sum(const GhzMixedState& state, PovmAngle alpha, int n) {
  if (n < 1 || n > 20)
    throw std::invalid_argument("n out of range for outcome enumeration");
  double c = std::cos(state.theta.v - alpha.alpha);
  double s = std::sin(state.theta.v - alpha.alpha);
  double rc = state.R.v * c;
  double dnum = state.R.d * c - state.R.v * state.theta.d * s;
  int m = n + 1;
  double pref = std::ldexp(1.0, -m);  // 1 / 2^{n+1}
  double acc = 0.0;
  for (unsigned long pat = 0; pat < (1ul << m); ++pat) {
    int sign = (std::popcount(pat) & 1) ? -1 : 1;
    double prob = (1.0 + sign * rc) * pref;
    double dprob = sign * dnum * pref;
    if (prob < 1e-300) continue;  // deterministic outcome, no information
    acc += dprob * dprob / prob;
  }
  return acc;
}

}  // namespace ghzsense
