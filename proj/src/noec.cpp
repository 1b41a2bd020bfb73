#include "ghzsense/noec.hpp"

#include <cmath>
#include <stdexcept>

#include "ghzsense/kernels.hpp"

namespace ghzsense {
namespace {

double log_binom(int n, int h) {
  return std::lgamma(n + 1.0) - std::lgamma(h + 1.0) -
         std::lgamma(n - h + 1.0);
}

QfiResult result_at(double qfi, int n, double t, Method method) {
  double nt = static_cast<double>(n) * t;
  return {qfi, qfi / (nt * nt), Scenario::no_ec, method};
}

}  // namespace

double HammingSpectrum::trace() const {
  double acc = 0.0;
  for (const auto& cl : classes) {
    if (cl.s_hat <= 0.0) continue;
    acc += std::exp(cl.log_multiplicity + std::log(cl.s_hat));
  }
  return 0.5 * acc;
}

HammingSpectrum hamming_spectrum(const SystemParams& params, double t) {
  validate(params);
  if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
  const int n = params.n;
  const double gt = params.gamma * t;

  // Everything is carried with the e^{-n gamma t} prefactor folded in:
  // s_hat and r_hat stay in [0, 1] for any n, so no overflow at large n.
  const double u = std::exp(-2.0 * gt);
  const double ec = 0.5 * (1.0 + u);  // e^{-gamma t} cosh(gamma t)
  const double es = 0.5 * (1.0 - u);  // e^{-gamma t} sinh(gamma t)

  SignalKernel sk = signal_kernel(params.omega, params.gamma, t);
  const double damp = std::exp(-gt);
  CDual xp = sk.x_plus_dual() * damp;
  CDual xm = sk.x_minus_dual() * damp;
  Dual yd = sk.y_dual() * damp;
  CDual yc = make_cdual(yd, Dual{0.0, 0.0});

  Dual log_xp = log(abs(xp));
  Dual arg_xp = arg(xp);
  Dual log_xm = log(abs(xm));
  Dual arg_xm = arg(xm);
  bool y_zero = (yc.v == std::complex<double>{0.0, 0.0});
  Dual log_y, arg_y;
  if (!y_zero) {
    log_y = log(abs(yc));
    arg_y = arg(yc);
  }

  HammingSpectrum spec;
  spec.n = n;
  spec.gamma_t = gt;
  spec.classes.reserve(n + 1);
  for (int h = 0; h <= n; ++h) {
    HammingClass cl;
    cl.h = h;
    cl.log_multiplicity = log_binom(n, h);
    cl.s_hat = std::pow(ec, n - h) * std::pow(es, h) +
               std::pow(ec, h) * std::pow(es, n - h);
    // r_hat e^{i theta} = xp^{n-h} y^h + xm^h y^{n-h}; the representative is
    // chosen so theta = +n omega t on the h = 0 class at gamma = 0.
    if (y_zero) {
      if (h == 0) {
        cl.r_hat = exp(static_cast<double>(n) * log_xp);
        cl.theta = static_cast<double>(n) * arg_xp;
      } else if (h == n) {
        cl.r_hat = exp(static_cast<double>(n) * log_xm);
        cl.theta = static_cast<double>(n) * arg_xm;
      } else {
        cl.r_hat = Dual{0.0, 0.0};
        cl.theta = Dual{0.0, 0.0};
      }
    } else {
      Dual lm1 = static_cast<double>(n - h) * log_xp + static_cast<double>(h) * log_y;
      Dual ph1 = static_cast<double>(n - h) * arg_xp + static_cast<double>(h) * arg_y;
      Dual lm2 = static_cast<double>(h) * log_xm + static_cast<double>(n - h) * log_y;
      Dual ph2 = static_cast<double>(h) * arg_xm + static_cast<double>(n - h) * arg_y;
      double lm = std::max(lm1.v, lm2.v);
      CDual w = from_polar(lm1 - lm, ph1) + from_polar(lm2 - lm, ph2);
      Dual mag = abs(w);
      if (mag.v == 0.0) {
        cl.r_hat = Dual{0.0, 0.0};
        cl.theta = Dual{0.0, 0.0};
      } else {
        cl.r_hat = std::exp(lm) * mag;
        cl.theta = arg(w);
      }
    }
    spec.classes.push_back(cl);
  }
  return spec;
}

QfiResult qfi_noec_exact(const SystemParams& params, double t) {
  HammingSpectrum spec = hamming_spectrum(params, t);
  double acc = 0.0;
  for (const auto& cl : spec.classes) {
    if (cl.s_hat <= 0.0) continue;  // unpopulated class
    double s = cl.s_hat;
    double r = cl.r_hat.v;
    double gap = s * s - r * r;
    double bracket = (r * r / s) * cl.theta.d * cl.theta.d;
    // Degenerate pairs contribute no dr term (vanishing-denominator pairs
    // are excluded from the spectral sum by definition).
    if (gap > 1e-14 * s * s) bracket += s * cl.r_hat.d * cl.r_hat.d / gap;
    if (bracket <= 0.0) continue;
    acc += std::exp(cl.log_multiplicity + std::log(bracket));
  }
  return result_at(0.5 * acc, params.n, t, Method::exact);
}

QfiResult qfi_noec_taylor(const SystemParams& params, double t) {
  validate(params);
  if (!(t > 0.0)) throw std::invalid_argument("t must be > 0");
  double n = params.n;
  double nt = n * t;
  double qfi = nt * nt * (1.0 - (2.0 - 4.0 / (3.0 * n)) * params.gamma * t);
  return result_at(qfi, params.n, t, Method::series);
}

}  // namespace ghzsense
