#pragma once

#include <cmath>
#include <complex>

namespace ghzsense {

// Forward-mode derivative pair: value and d/domega. Every closed-form
// quantity in the library that the QFI differentiates is carried this way,
// so one mechanism covers r, phi, R, theta and all kernel entries.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator*(Dual a, Dual b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
constexpr Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
constexpr Dual operator+(Dual a, double c) { return {a.v + c, a.d}; }
constexpr Dual operator+(double c, Dual a) { return a + c; }
constexpr Dual operator-(Dual a, double c) { return {a.v - c, a.d}; }
constexpr Dual operator-(double c, Dual a) { return {c - a.v, -a.d}; }
constexpr Dual operator*(Dual a, double c) { return {a.v * c, a.d * c}; }
constexpr Dual operator*(double c, Dual a) { return a * c; }
constexpr Dual operator/(Dual a, double c) { return {a.v / c, a.d / c}; }
constexpr Dual operator/(double c, Dual a) {
  return {c / a.v, -c * a.d / (a.v * a.v)};
}

inline Dual exp(Dual a) {
  double e = std::exp(a.v);
  return {e, e * a.d};
}
inline Dual log(Dual a) { return {std::log(a.v), a.d / a.v}; }
inline Dual sqrt(Dual a) {
  double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
inline Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual sinh(Dual a) { return {std::sinh(a.v), std::cosh(a.v) * a.d}; }
inline Dual cosh(Dual a) { return {std::cosh(a.v), std::sinh(a.v) * a.d}; }

// Complex value with complex d/domega. conj/abs/arg propagate exactly:
// d|z| = Re(conj(z) dz)/|z|, d arg z = Im(dz/z).
struct CDual {
  std::complex<double> v{0.0, 0.0};
  std::complex<double> d{0.0, 0.0};
};

inline CDual make_cdual(Dual re, Dual im) {
  return {{re.v, im.v}, {re.d, im.d}};
}
inline CDual operator-(const CDual& a) { return {-a.v, -a.d}; }
inline CDual operator+(const CDual& a, const CDual& b) {
  return {a.v + b.v, a.d + b.d};
}
inline CDual operator-(const CDual& a, const CDual& b) {
  return {a.v - b.v, a.d - b.d};
}
inline CDual operator*(const CDual& a, const CDual& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
inline CDual operator*(const CDual& a, double c) { return {a.v * c, a.d * c}; }
inline CDual operator*(double c, const CDual& a) { return a * c; }
inline CDual operator/(const CDual& a, const CDual& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline CDual operator/(const CDual& a, double c) { return {a.v / c, a.d / c}; }
inline CDual conj(const CDual& a) {
  return {std::conj(a.v), std::conj(a.d)};
}

inline Dual abs(const CDual& a) {
  double m = std::abs(a.v);
  if (m == 0.0) return {0.0, 0.0};
  return {m, (std::conj(a.v) * a.d).real() / m};
}

// Phase in (-pi, pi]; the derivative is exact even where the value wraps.
inline Dual arg(const CDual& a) {
  double ph = std::atan2(a.v.imag(), a.v.real());
  if (ph <= -3.14159265358979323846 && a.v.imag() == 0.0) ph = -ph;
  return {ph, (a.d / a.v).imag()};
}

// e^{i phase} as a unit CDual.
inline CDual unit_phase(Dual phase) {
  std::complex<double> u{std::cos(phase.v), std::sin(phase.v)};
  return {u, u * std::complex<double>{0.0, phase.d}};
}

// exp(log_mag) * e^{i phase}; safe when log_mag underflows to -inf.
inline CDual from_polar(Dual log_mag, Dual phase) {
  double m = std::exp(log_mag.v);
  if (m == 0.0) return {};
  std::complex<double> u{std::cos(phase.v), std::sin(phase.v)};
  std::complex<double> val = m * u;
  return {val, val * std::complex<double>{log_mag.d, phase.d}};
}

// Integer power by repeated squaring; exponent >= 0.
inline CDual pow_int(CDual base, long long k) {
  CDual acc{{1.0, 0.0}, {0.0, 0.0}};
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

}  // namespace ghzsense
