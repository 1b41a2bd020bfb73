#include "ghzsense/kernels.hpp"

#include <cmath>

namespace ghzsense {
namespace {

// cosf(z) = cos(sqrt z), sincf(z) = sin(sqrt z)/sqrt z continued through
// z <= 0 (cosh / sinh branch). Both are entire in z = Delta^2 tau^2, which
// is what makes the omega = gamma crossover benign.
struct EntirePair {
  double cosf;
  double sincf;
};

EntirePair entire_series(double z) {
  // Alternating series in z; with |z| < 1e-8 eight terms are far below
  // double rounding.
  double cosf = 0.0;
  double sincf = 0.0;
  double pw = 1.0;  // (-z)^k
  double f2k = 1.0;     // (2k)!
  double f2k1 = 1.0;    // (2k+1)!
  for (int k = 0; k < 8; ++k) {
    if (k > 0) {
      f2k *= (2.0 * k - 1.0) * (2.0 * k);
      f2k1 *= (2.0 * k) * (2.0 * k + 1.0);
    }
    cosf += pw / f2k;
    sincf += pw / f2k1;
    pw *= -z;
  }
  return {cosf, sincf};
}

EntirePair entire_pair(double z) {
  if (std::abs(z) < 1e-8) return entire_series(z);
  if (z > 0.0) {
    double w = std::sqrt(z);
    return {std::cos(w), std::sin(w) / w};
  }
  double w = std::sqrt(-z);
  return {std::cosh(w), std::sinh(w) / w};
}

// d sincf / dz = (cosf - sincf) / (2z); its own series below |z| = 1e-3
// where the subtraction cancels.
double dsincf(double z, const EntirePair& e) {
  if (std::abs(z) < 1e-3) {
    double acc = 0.0;
    double pw = 1.0;  // (-1)^k z^{k-1} at k=1 start
    double f2k1 = 6.0;  // (2k+1)! at k=1
    double sign = -1.0;
    for (int k = 1; k < 8; ++k) {
      if (k > 1) {
        f2k1 *= (2.0 * k) * (2.0 * k + 1.0);
        sign = -sign;
        pw *= z;
      }
      acc += sign * k * pw / f2k1;
    }
    return acc;
  }
  return (e.cosf - e.sincf) / (2.0 * z);
}

}  // namespace

TrigDelta trig_delta(double omega, double gamma, double tau) {
  double z = (omega * omega - gamma * gamma) * tau * tau;
  double dz = 2.0 * omega * tau * tau;
  EntirePair e = entire_pair(z);
  TrigDelta td;
  td.cos_term = e.cosf;
  td.sinc_term = tau * e.sincf;
  // d cosf / dz = -sincf / 2 holds in every branch, no cancellation.
  td.d_cos_term = -0.5 * e.sincf * dz;
  td.d_sinc_term = tau * dsincf(z, e) * dz;
  return td;
}

SignalKernel signal_kernel(double omega, double gamma, double tau) {
  TrigDelta td = trig_delta(omega, gamma, tau);
  SignalKernel sk;
  sk.x_minus = {td.cos_term, -omega * td.sinc_term};
  sk.x_plus = std::conj(sk.x_minus);
  sk.y = gamma * td.sinc_term;
  // omega is the differentiation variable: d(omega S) = S + omega dS.
  sk.d_x_minus = {td.d_cos_term, -(td.sinc_term + omega * td.d_sinc_term)};
  sk.d_x_plus = std::conj(sk.d_x_minus);
  sk.d_y = gamma * td.d_sinc_term;
  return sk;
}

RoundPolar round_polar(double omega, double gamma, double tau) {
  TrigDelta td = trig_delta(omega, gamma, tau);
  Dual C = td.cos_dual();
  Dual S = td.sinc_dual();
  // r e^{i phi} = e^{-gamma tau} ((C + gamma S) + i omega S); the complex
  // part is never zero (at omega = 0 it is real and >= e^{-gamma tau}).
  Dual re = C + gamma * S;
  Dual im = Dual{omega, 1.0} * S;
  RoundPolar rp;
  rp.log_r = 0.5 * log(re * re + im * im) - gamma * tau;
  rp.phi = arg(make_cdual(re, im));
  return rp;
}

DualComplexPolar round_factor(double omega, double gamma, double tau) {
  RoundPolar rp = round_polar(omega, gamma, tau);
  Dual r = exp(rp.log_r);
  return {r.v, rp.phi.v, r.d, rp.phi.d};
}

DiagonalKernel diagonal_kernel(double rate, double tau) {
  double rt = rate * tau;
  return {std::cosh(rt), std::sinh(rt), rt};
}

}  // namespace ghzsense
