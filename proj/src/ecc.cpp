#include "ghzsense/ecc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "ghzsense/kernels.hpp"

namespace ghzsense {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Dual re_part(const CDual& z) { return {z.v.real(), z.d.real()}; }

struct Mat2 {
  CDual m00, m01, m10, m11;
};

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

double inf_norm(const Mat2& m) {
  return std::max(std::abs(m.m00.v) + std::abs(m.m01.v),
                  std::abs(m.m10.v) + std::abs(m.m11.v));
}

void rescale(Mat2& m, double inv) {
  m.m00 = m.m00 * inv;
  m.m01 = m.m01 * inv;
  m.m10 = m.m10 * inv;
  m.m11 = m.m11 * inv;
}

struct ScaledPow {
  Mat2 m;
  double log_scale = 0.0;
};

// m^k with magnitudes siphoned into log_scale, so contraction over 1e9
// rounds neither underflows nor loses the duals. Rescaling by a plain
// double keeps every derivative exact.
ScaledPow mat_pow(Mat2 base, long long k) {
  ScaledPow acc{{CDual{{1.0, 0.0}, {0.0, 0.0}},
                 CDual{},
                 CDual{},
                 CDual{{1.0, 0.0}, {0.0, 0.0}}},
                0.0};
  double log_base = 0.0;
  auto renorm = [](Mat2& m, double& lg) {
    double s = inf_norm(m);
    if (s > 0.0 && (s < 1e-100 || s > 1e100)) {
      rescale(m, 1.0 / s);
      lg += std::log(s);
    }
  };
  while (k > 0) {
    if (k & 1) {
      acc.m = mul(acc.m, base);
      acc.log_scale += log_base;
      renorm(acc.m, acc.log_scale);
    }
    k >>= 1;
    if (k > 0) {
      base = mul(base, base);
      log_base *= 2.0;
      renorm(base, log_base);
    }
  }
  return acc;
}

double exact_binom(int n, int m) {
  double c = 1.0;
  for (int k = 1; k <= m; ++k) c = c * (n - k + 1) / k;
  return c;
}

std::vector<double> syndrome_weights(int n, double p) {
  std::vector<double> w(n + 1);
  for (int h = 0; h <= n; ++h)
    w[h] = std::pow(1.0 - p, n - h) * std::pow(p, h);
  return w;
}

GhzMixedState zero_corner_state(const SystemParams& params) {
  GhzMixedState st;
  st.n = params.n;
  st.t = params.t();
  st.p = params.p;
  st.log_R = Dual{-std::numeric_limits<double>::infinity(), 0.0};
  st.R = Dual{0.0, 0.0};
  st.theta = Dual{0.0, 0.0};
  st.weights = syndrome_weights(params.n, params.p);
  return st;
}

// Shared tail: R e^{-i theta} = exp(log_pref + log_const) * V, theta
// unwrapped toward theta_ref.
GhzMixedState finish_state(const SystemParams& params, const Dual& log_pref,
                           double log_const, const CDual& V,
                           double theta_ref) {
  if (std::abs(V.v) == 0.0) return zero_corner_state(params);
  GhzMixedState st;
  st.n = params.n;
  st.t = params.t();
  st.p = params.p;
  st.weights = syndrome_weights(params.n, params.p);
  Dual log_R = log_pref + log_const + log(abs(V));
  if (log_R.v > 0.0) log_R.v = 0.0;  // roundoff; R <= 1 holds exactly
  st.log_R = log_R;
  st.R = exp(log_R);
  Dual theta_w = -arg(V);
  double turns = std::round((theta_ref - theta_w.v) / kTwoPi);
  st.theta = Dual{theta_w.v + kTwoPi * turns, theta_w.d};
  return st;
}

double series_f(const SystemParams& params) {
  double gt = params.gamma * params.tau;
  return 1.0 - 2.0 * gt + (7.0 / 3.0) * gt * gt +
         (4.0 * params.gamma * params.tau * params.tau) /
             (3.0 * params.n * params.t());
}

QfiResult result_of(double qfi, const SystemParams& params, Scenario scenario,
                    Method method) {
  return make_qfi_result(qfi, params, scenario, method);
}

}  // namespace

RecurrenceData recurrence_data(const SystemParams& params) {
  validate(params);
  RoundPolar rp = round_polar(params.omega, params.gamma, params.tau);
  double xt = params.xi * params.tau;
  Dual nphi = static_cast<double>(params.n) * rp.phi;
  CDual e_minus = unit_phase(-nphi);
  CDual e_plus = conj(e_minus);

  RecurrenceData rd;
  CDual eiphi = unit_phase(rp.phi);
  rd.q_plus = (1.0 - params.p) * eiphi + params.p * conj(eiphi);
  rd.q_minus = conj(rd.q_plus);
  rd.upsilon_minus = std::cosh(xt) * e_minus + std::sinh(xt) * e_plus;
  rd.upsilon_plus = std::cosh(xt) * e_plus + std::sinh(xt) * e_minus;
  rd.N = static_cast<long long>(params.n) * (params.rounds - 1);

  CDual qp_n = pow_int(rd.q_plus, params.n);
  Dual a = std::cosh(xt) * re_part(qp_n);
  double qp_abs = std::abs(rd.q_plus.v);
  if (qp_abs == 0.0) {
    rd.mu_plus = 2.0 * make_cdual(a, Dual{});
    rd.mu_minus = CDual{};
    return rd;
  }
  Dual det = exp(2.0 * static_cast<double>(params.n) * log(abs(rd.q_plus)));
  Dual disc = a * a - det;
  CDual sd = disc.v >= 0.0 ? make_cdual(sqrt(disc), Dual{})
                           : make_cdual(Dual{}, sqrt(-disc));
  rd.mu_plus = make_cdual(a, Dual{}) + sd;
  rd.mu_minus = make_cdual(a, Dual{}) - sd;
  return rd;
}

GhzMixedState solve_recurrence(const SystemParams& params,
                               RecurrencePath path) {
  validate(params);
  const int n = params.n;
  const long long T = params.rounds;
  RoundPolar rp = round_polar(params.omega, params.gamma, params.tau);

  // cosh/sinh of xi tau carried with e^{-xi tau} folded in: the removed
  // factors cancel the global e^{-xi t} prefactor exactly, and nothing can
  // overflow however large xi tau is.
  const double uxi = std::exp(-2.0 * params.xi * params.tau);
  const double cx = 0.5 * (1.0 + uxi);
  const double sx = 0.5 * (1.0 - uxi);

  Dual nphi = static_cast<double>(n) * rp.phi;
  CDual e_minus = unit_phase(-nphi);
  CDual e_plus = conj(e_minus);
  CDual ups_minus = cx * e_minus + sx * e_plus;
  CDual ups_plus = cx * e_plus + sx * e_minus;

  CDual eiphi = unit_phase(rp.phi);
  CDual q_plus = (1.0 - params.p) * eiphi + params.p * conj(eiphi);

  Dual log_pref =
      (static_cast<double>(n) * static_cast<double>(T)) * rp.log_r;

  if (T == 1)
    return finish_state(params, log_pref, 0.0, ups_minus, nphi.v);

  double qp_abs = std::abs(q_plus.v);
  if (qp_abs == 0.0) return zero_corner_state(params);

  Dual log_qp = log(abs(q_plus));
  Dual arg_qp = arg(q_plus);
  const double nP = static_cast<double>(n) * static_cast<double>(T - 1);

  if (sx == 0.0 && path == RecurrencePath::automatic) {
    // Diagonal transfer matrix: the corner just picks up q_minus^n per
    // round, no eigen machinery needed.
    Dual log_R = log_pref + nP * log_qp;
    Dual theta = nphi + nP * arg_qp;
    if (log_R.v > 0.0) log_R.v = 0.0;
    GhzMixedState st;
    st.n = n;
    st.t = params.t();
    st.p = params.p;
    st.weights = syndrome_weights(n, params.p);
    st.log_R = log_R;
    st.R = exp(log_R);
    st.theta = theta;
    return st;
  }

  CDual qp_n = pow_int(q_plus, n);
  CDual qm_n = conj(qp_n);
  CDual m00 = cx * qm_n;
  CDual m01 = sx * qp_n;
  CDual m10 = sx * qm_n;
  CDual m11 = cx * qp_n;

  Dual a = cx * re_part(qp_n);
  Dual det = uxi * exp(2.0 * static_cast<double>(n) * log_qp);
  Dual disc = a * a - det;
  double sdv = std::sqrt(std::abs(disc.v));
  double scale0 = std::abs(a.v) + sdv;
  bool degenerate = scale0 == 0.0 || 2.0 * sdv <= 1e-10 * scale0;

  bool use_eigen = path == RecurrencePath::eigenform ||
                   (path == RecurrencePath::automatic && !degenerate);
  double theta_ref = nphi.v + nP * arg_qp.v;
  const long long P = T - 1;

  if (use_eigen) {
    CDual sd = disc.v >= 0.0 ? make_cdual(sqrt(disc), Dual{})
                             : make_cdual(Dual{}, sqrt(-disc));
    CDual mu_p = make_cdual(a, Dual{}) + sd;
    CDual mu_m = make_cdual(a, Dual{}) - sd;
    double kappa = std::max(std::abs(mu_p.v), std::abs(mu_m.v));
    double inv = 1.0 / kappa;
    CDual mp = mu_p * inv;
    CDual mm = mu_m * inv;
    CDual pp = pow_int(mp, P);
    CDual pm = pow_int(mm, P);
    CDual den = mp - mm;
    CDual c1 = (pp - pm) / den;
    CDual c0 = (pm * mp - pp * mm) / den;
    CDual mv0 = (m00 * ups_minus + m01 * ups_plus) * inv;
    CDual V = c1 * mv0 + c0 * ups_minus;
    double log_const = static_cast<double>(P) * std::log(kappa);
    return finish_state(params, log_pref, log_const, V, theta_ref);
  }

  ScaledPow sp = mat_pow({m00, m01, m10, m11}, P);
  CDual V = sp.m.m00 * ups_minus + sp.m.m01 * ups_plus;
  return finish_state(params, log_pref, sp.log_scale, V, theta_ref);
}

StateQfi qfi_from_state(const GhzMixedState& state, Scenario scenario,
                        Method method) {
  StateQfi out;
  double qfi = 0.0;
  if (state.R.v > 0.0) {
    double one_minus_R2 = -std::expm1(2.0 * state.log_R.v);
    double phase_term =
        state.R.v * state.R.v * state.theta.d * state.theta.d;
    if (one_minus_R2 < 1e-14) {
      out.pure_limit = true;
      qfi = phase_term;
    } else {
      qfi = state.R.d * state.R.d / one_minus_R2 + phase_term;
    }
  }
  double nt = static_cast<double>(state.n) * state.t;
  out.result = {qfi, qfi / (nt * nt), scenario, method};
  return out;
}

QfiResult qfi_case1_series(const SystemParams& params) {
  validate(params);
  if (params.xi != 0.0)
    throw std::invalid_argument("case-1 series requires xi = 0");
  if (params.p != 0.0)
    throw std::invalid_argument("case-1 series requires p = 0");
  RoundPolar rp = round_polar(params.omega, params.gamma, params.tau);
  double n = params.n;
  double t = params.t();
  double decay =
      std::exp(2.0 * n * static_cast<double>(params.rounds) * rp.log_r.v);
  double qfi = n * n * t * t * decay * series_f(params);
  return result_of(qfi, params, Scenario::parity_ideal, Method::series);
}

Case2Series qfi_case2_series(const SystemParams& params) {
  validate(params);
  if (params.p != 0.0)
    throw std::invalid_argument("case-2 series requires p = 0");
  RoundPolar rp = round_polar(params.omega, params.gamma, params.tau);
  double n = params.n;
  double t = params.t();
  double tau = params.tau;
  double w = n * params.omega * t;
  double l1, l2, l3;
  if (std::abs(w) < 1e-2) {
    double w2 = w * w;
    l1 = 2.0 / 3.0 + (2.0 / 15.0) * w2;
    l2 = (2.0 / 9.0) * w2 * w2;
    l3 = -4.0 / 3.0 - (8.0 / 15.0) * w2;
  } else {
    double s2 = std::sin(2.0 * w);
    double c2 = std::cos(2.0 * w);
    double w3 = w * w * w;
    l1 = (w * (1.0 + 3.0 * c2) + (w * w - 2.0) * s2) / w3 + 2.0;
    double wc = w * std::cos(w) - std::sin(w);
    l2 = 2.0 * wc * wc / (w * w);
    l3 = ((4.0 * w - 2.0 * w3) * c2 - (2.0 - 5.0 * w * w) * s2) / w3 - 4.0;
  }
  Case2Series out;
  out.g = l1 * t + l2 * tau + l3 * params.gamma * t * tau;
  out.g_lower = (2.0 / 3.0 - 7.0 * params.gamma * tau) * t;
  out.g_upper = 2.5 * (t + tau);
  double decay =
      std::exp(2.0 * n * static_cast<double>(params.rounds) * rp.log_r.v);
  double qfi =
      n * n * t * t * decay * (series_f(params) - out.g * params.xi);
  out.result =
      result_of(qfi, params, Scenario::parity_noisy_ancilla, Method::series);
  return out;
}

QfiResult qfi_case3_series(const SystemParams& params) {
  validate(params);
  if (params.xi != 0.0)
    throw std::invalid_argument("case-3 series requires xi = 0");
  RoundPolar rp = round_polar(params.omega, params.gamma, params.tau);
  double n = params.n;
  double t = params.t();
  double p = params.p;
  double sphi = std::sin(rp.phi.v);
  double q2 = 1.0 - 4.0 * p * (1.0 - p) * sphi * sphi;  // |q_+|^2
  double h = (1.0 - 2.0 * p) * (1.0 - 2.0 * p) * series_f(params) +
             4.0 * p * ((1.0 - p) / n + 1.0 - 2.0 * p) * (params.tau / t);
  double log_decay = n * static_cast<double>(params.rounds) *
                     (2.0 * rp.log_r.v + std::log(q2));
  double qfi = n * n * t * t * std::exp(log_decay) * h;
  return result_of(qfi, params, Scenario::parity_imperfect, Method::series);
}

QfiResult qfi_bitflip(const SystemParams& params) {
  validate(params);
  if (params.n % 2 == 0)
    throw std::invalid_argument("bit-flip code requires odd n");
  const int n = params.n;
  SignalKernel sk = signal_kernel(params.omega, params.gamma, params.tau);
  const double damp = std::exp(-params.gamma * params.tau);
  CDual xp = sk.x_plus_dual() * damp;
  CDual xm = sk.x_minus_dual() * damp;
  CDual yc = make_cdual(sk.y_dual() * damp, Dual{});

  // Majority vote keeps the corner when at most floor(n/2) qubits flipped;
  // eta maps corner -> corner, zeta maps the opposite corner in.
  CDual eta_p{}, eta_m{}, zeta_p{}, zeta_m{};
  for (int m = 0; m <= n / 2; ++m) {
    double cb = exact_binom(n, m);
    CDual ym = pow_int(yc, m);
    CDual ynm = pow_int(yc, n - m);
    eta_p = eta_p + cb * (pow_int(xp, n - m) * ym);
    eta_m = eta_m + cb * (pow_int(xm, n - m) * ym);
    zeta_p = zeta_p + cb * (pow_int(xp, m) * ynm);
    zeta_m = zeta_m + cb * (pow_int(xm, m) * ynm);
  }

  ScaledPow sp = mat_pow({eta_m, zeta_p, zeta_m, eta_p}, params.rounds);
  CDual V = sp.m.m00 + sp.m.m01;  // 2 b_1 from (b_1, b_2) = M^T (1/2, 1/2)
  RoundPolar rp = round_polar(params.omega, params.gamma, params.tau);
  double theta_ref = static_cast<double>(n) *
                     static_cast<double>(params.rounds) * rp.phi.v;
  SystemParams unweighted = params;
  unweighted.p = 0.0;  // no syndrome channel in this code
  GhzMixedState st =
      finish_state(unweighted, Dual{}, sp.log_scale, V, theta_ref);
  return qfi_from_state(st, Scenario::bitflip, Method::exact).result;
}

double t_opt(const SystemParams& params) {
  validate(params);
  if (params.gamma == 0.0 || params.omega == 0.0)
    throw std::invalid_argument(
        "t_opt is unbounded at gamma = 0 or omega = 0");
  double w2 = params.omega * params.omega;
  return 3.0 / (2.0 * params.n * params.gamma * w2 * params.tau * params.tau);
}

long long best_rounds(const SystemParams& params, long long lo, long long hi) {
  if (lo < 1) lo = 1;
  if (hi < lo) hi = lo;
  auto q_at = [&params](long long rounds) {
    SystemParams p = params;
    p.rounds = rounds;
    return qfi_from_state(solve_recurrence(p)).result.qfi;
  };
  while (hi - lo > 2) {
    long long m1 = lo + (hi - lo) / 3;
    long long m2 = hi - (hi - lo) / 3;
    if (q_at(m1) < q_at(m2))
      lo = m1 + 1;
    else
      hi = m2;
  }
  long long best = lo;
  double best_q = q_at(lo);
  for (long long r = lo + 1; r <= hi; ++r) {
    double q = q_at(r);
    if (q > best_q) {
      best_q = q;
      best = r;
    }
  }
  return best;
}

}  // namespace ghzsense
