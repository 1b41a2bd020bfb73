#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "ghzsense/ecc.hpp"
#include "ghzsense/kernels.hpp"
#include "ghzsense/noec.hpp"

using namespace ghzsense;

namespace {

SystemParams make(int n, double omega, double gamma, double xi, double p,
                  double tau, long long rounds) {
  SystemParams params;
  params.n = n;
  params.omega = omega;
  params.gamma = gamma;
  params.xi = xi;
  params.p = p;
  params.tau = tau;
  params.rounds = rounds;
  return params;
}

struct SplitMix {
  std::uint64_t state;
  double next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
};

}  // namespace

TEST_CASE("general recurrence reference point") {
  SystemParams params = make(2, 20.0, 1.0, 1e-4, 0.01, 0.01, 4);
  GhzMixedState st = solve_recurrence(params);
  CHECK(st.R.v == doctest::Approx(0.99332969078861387).epsilon(1e-12));
  CHECK(st.R.d ==
        doctest::Approx(-0.00065736713641976214).epsilon(1e-11));
  CHECK(st.theta.v == doctest::Approx(1.5611440970541511).epsilon(1e-12));
  CHECK(st.theta.d == doctest::Approx(0.078137243520142670).epsilon(1e-11));
  CHECK(std::exp(st.log_R.v) == doctest::Approx(st.R.v).epsilon(1e-15));
  CHECK(st.t == doctest::Approx(0.04));

  REQUIRE(st.weights.size() == 3);
  CHECK(st.weights[0] == doctest::Approx(0.9801).epsilon(1e-12));
  CHECK(st.weights[1] == doctest::Approx(0.0099).epsilon(1e-12));
  CHECK(st.weights[2] == doctest::Approx(0.0001).epsilon(1e-12));

  StateQfi sq = qfi_from_state(st);
  CHECK(!sq.pure_limit);
  CHECK(sq.result.qfi ==
        doctest::Approx(0.0060567508399779566).epsilon(1e-11));
  CHECK(sq.result.scenario == Scenario::parity_general);
}

TEST_CASE("transfer-matrix data reduces to plain rotation without ancilla noise") {
  SystemParams params = make(3, 2.0, 0.5, 0.0, 0.07, 0.3, 5);
  RecurrenceData rd = recurrence_data(params);
  CHECK(rd.N == 12);

  RoundPolar rp = round_polar(2.0, 0.5, 0.3);
  // q_plus = (1-p) e^{i phi} + p e^{-i phi}.
  std::complex<double> eiphi{std::cos(rp.phi.v), std::sin(rp.phi.v)};
  std::complex<double> qp = 0.93 * eiphi + 0.07 * std::conj(eiphi);
  CHECK(std::abs(rd.q_plus.v - qp) <= 1e-14);
  CHECK(std::abs(rd.q_minus.v - std::conj(qp)) <= 1e-14);

  // xi = 0 makes the transfer matrix diagonal: eigenvalues are q_+-^n.
  std::complex<double> qp3 = qp * qp * qp;
  double match_direct = std::min(std::abs(rd.mu_plus.v - qp3),
                                 std::abs(rd.mu_plus.v - std::conj(qp3)));
  double match_other = std::min(std::abs(rd.mu_minus.v - qp3),
                                std::abs(rd.mu_minus.v - std::conj(qp3)));
  CHECK(match_direct <= 1e-12);
  CHECK(match_other <= 1e-12);
  CHECK(std::abs(rd.mu_plus.v - rd.mu_minus.v) >= 1e-12);

  // Boundary vector is the bare GHZ phase.
  CHECK(std::abs(rd.upsilon_minus.v) == doctest::Approx(1.0).epsilon(1e-14));
  std::complex<double> em{std::cos(3.0 * rp.phi.v),
                          -std::sin(3.0 * rp.phi.v)};
  CHECK(std::abs(rd.upsilon_minus.v - em) <= 1e-14);
}

TEST_CASE("eigenform and binary exponentiation agree away from degeneracy") {
  SystemParams params = make(3, 7.0, 0.3, 1e-3, 0.02, 0.05, 57);
  GhzMixedState eig = solve_recurrence(params, RecurrencePath::eigenform);
  GhzMixedState bin = solve_recurrence(params, RecurrencePath::binary_pow);
  GhzMixedState aut = solve_recurrence(params, RecurrencePath::automatic);

  CHECK(eig.R.v == doctest::Approx(bin.R.v).epsilon(1e-11));
  CHECK(eig.theta.v == doctest::Approx(bin.theta.v).epsilon(1e-11));
  CHECK(eig.R.d == doctest::Approx(bin.R.d).epsilon(1e-8));
  CHECK(eig.theta.d == doctest::Approx(bin.theta.d).epsilon(1e-8));
  CHECK(aut.R.v == doctest::Approx(eig.R.v).epsilon(1e-14));
  CHECK(aut.theta.d == doctest::Approx(eig.theta.d).epsilon(1e-14));
}

TEST_CASE("both solver paths track a million rounds") {
  // 60-digit reference values.  The eigenvalue pair is separated by a
  // relative gap of 1e-4 here, so the eigenform's phase drifts by about
  // rounds * eps / gap while the renormalized squarings stay backward
  // stable; each path gets the tolerance its conditioning supports.
  SystemParams params = make(2, 0.05, 1.0, 1e-4, 0.0, 1e-3, 1000000);
  const double log_R = -0.10048005270034924;
  const double theta = 99.899667883187163;
  const double d_R = 0.55736686253279107;
  const double d_theta = 1999.9160199241629;

  GhzMixedState bin = solve_recurrence(params, RecurrencePath::binary_pow);
  CHECK(bin.log_R.v == doctest::Approx(log_R).epsilon(1e-8));
  CHECK(bin.theta.v == doctest::Approx(theta).epsilon(1e-11));
  CHECK(bin.R.d == doctest::Approx(d_R).epsilon(1e-8));
  CHECK(bin.theta.d == doctest::Approx(d_theta).epsilon(1e-11));

  GhzMixedState eig = solve_recurrence(params, RecurrencePath::eigenform);
  CHECK(eig.log_R.v == doctest::Approx(log_R).epsilon(3e-7));
  CHECK(eig.theta.v == doctest::Approx(theta).epsilon(1e-7));
  CHECK(eig.R.d == doctest::Approx(d_R).epsilon(1e-3));
  CHECK(eig.theta.d == doctest::Approx(d_theta).epsilon(1e-6));
}

TEST_CASE("single round needs no recurrence") {
  // Without ancilla noise one round leaves R = r^n regardless of p.
  SystemParams params = make(4, 11.0, 0.7, 0.0, 0.1, 0.03, 1);
  RoundPolar rp = round_polar(11.0, 0.7, 0.03);
  GhzMixedState st = solve_recurrence(params);
  CHECK(st.log_R.v == doctest::Approx(4.0 * rp.log_r.v).epsilon(1e-14));
  CHECK(st.theta.v == doctest::Approx(4.0 * rp.phi.v).epsilon(1e-14));
  CHECK(st.log_R.d == doctest::Approx(4.0 * rp.log_r.d).epsilon(1e-13));

  // With ancilla noise the boundary vector mixes the two GHZ phases.
  SystemParams noisy = make(2, 1.1, 0.2, 0.4, 0.0, 0.3, 1);
  double uxi = std::exp(-2.0 * 0.4 * 0.3);
  double cxv = 0.5 * (1.0 + uxi), sxv = 0.5 * (1.0 - uxi);
  RoundPolar rp2 = round_polar(1.1, 0.2, 0.3);
  std::complex<double> em{std::cos(2.0 * rp2.phi.v),
                          -std::sin(2.0 * rp2.phi.v)};
  double expect_R =
      std::exp(2.0 * rp2.log_r.v) * std::abs(cxv * em + sxv * std::conj(em));
  GhzMixedState st2 = solve_recurrence(noisy);
  CHECK(st2.R.v == doctest::Approx(expect_R).epsilon(1e-14));
}

TEST_CASE("diagonal shortcut matches the matrix power at xi = 0") {
  SystemParams params = make(2, 20.0, 1.0, 0.0, 0.06, 0.01, 9);
  GhzMixedState fast = solve_recurrence(params);
  GhzMixedState slow = solve_recurrence(params, RecurrencePath::binary_pow);
  CHECK(fast.log_R.v == doctest::Approx(slow.log_R.v).epsilon(1e-12));
  CHECK(fast.theta.v == doctest::Approx(slow.theta.v).epsilon(1e-12));
  CHECK(fast.R.d == doctest::Approx(slow.R.d).epsilon(1e-10));
  CHECK(fast.theta.d == doctest::Approx(slow.theta.d).epsilon(1e-10));
}

TEST_CASE("noiseless protocol keeps the full Heisenberg information") {
  SystemParams params = make(3, 5.0, 0.0, 0.0, 0.0, 0.1, 10);
  GhzMixedState st = solve_recurrence(params);
  CHECK(st.R.v == doctest::Approx(1.0).epsilon(1e-15));
  StateQfi sq = qfi_from_state(st);
  CHECK(sq.pure_limit);
  CHECK(sq.result.qfi == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(sq.result.normalized == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty corner carries no information") {
  GhzMixedState st;
  st.n = 2;
  st.t = 1.0;
  CHECK(qfi_from_state(st).result.qfi == 0.0);
}

TEST_CASE("corrected QFI never exceeds the Heisenberg limit at p = 0") {
  SplitMix rng{2024};
  const long long round_choices[5] = {1, 3, 10, 100, 1000};
  for (int i = 0; i < 300; ++i) {
    int n = 1 + static_cast<int>(rng.next() * 8.0);
    double tau = 1e-3 * std::pow(10.0, 2.0 * rng.next());
    double omega = (0.01 + 2.0 * rng.next()) / tau;
    double gamma = (1e-4 + 0.3 * rng.next()) / tau;
    double xi = rng.next() < 0.3 ? 0.0 : 0.1 * rng.next() / tau;
    long long T = round_choices[static_cast<int>(rng.next() * 5.0) % 5];
    SystemParams params = make(n, omega, gamma, xi, 0.0, tau, T);
    StateQfi sq = qfi_from_state(solve_recurrence(params));
    double hl = double(n) * n * params.t() * params.t();
    REQUIRE(sq.result.qfi >= 0.0);
    REQUIRE(sq.result.qfi <= hl * (1.0 + 1e-9));
  }
}

TEST_CASE("ideal-case solver state is the closed contraction power") {
  SystemParams params = make(5, 3.0, 0.2, 0.0, 0.0, 0.04, 77);
  RoundPolar rp = round_polar(3.0, 0.2, 0.04);
  GhzMixedState st = solve_recurrence(params);
  double nT = 5.0 * 77.0;
  CHECK(st.log_R.v == doctest::Approx(nT * rp.log_r.v).epsilon(1e-13));
  CHECK(st.log_R.d == doctest::Approx(nT * rp.log_r.d).epsilon(1e-13));
  CHECK(st.theta.v == doctest::Approx(nT * rp.phi.v).epsilon(1e-13));
  CHECK(st.theta.d == doctest::Approx(nT * rp.phi.d).epsilon(1e-13));
}

TEST_CASE("ideal-case series tracks the exact solver at small dephasing") {
  SystemParams params = make(25, 20.0, 0.1, 0.0, 0.0, 1e-3, 1000);
  double exact = qfi_from_state(solve_recurrence(params)).result.qfi;
  double series = qfi_case1_series(params).qfi;
  CHECK(std::abs(series - exact) <= 1e-6 * exact);
}

TEST_CASE("ancilla series error shrinks quadratically in xi") {
  // Relative deviation between the exact solver and the linear-in-xi
  // series should fall with slope about 2 on a log-log ladder.
  SystemParams base = make(2, 1.0, 1e-3, 0.0, 0.0, 1e-3, 10000);
  double xi_lo = 0.002, xi_hi = 0.016;
  auto rel_dev = [&](double xi) {
    SystemParams params = base;
    params.xi = xi;
    double exact = qfi_from_state(solve_recurrence(params)).result.qfi;
    double series = qfi_case2_series(params).result.qfi;
    return std::abs(series - exact) / exact;
  };
  double d_lo = rel_dev(xi_lo);
  double d_hi = rel_dev(xi_hi);
  REQUIRE(d_lo > 0.0);
  double slope = std::log(d_hi / d_lo) / std::log(xi_hi / xi_lo);
  CHECK(slope >= 1.9);
}

TEST_CASE("series evaluators collapse onto each other at their shared corner") {
  SystemParams params = make(3, 4.0, 0.05, 0.0, 0.0, 0.02, 50);
  double q1 = qfi_case1_series(params).qfi;
  CHECK(qfi_case2_series(params).result.qfi ==
        doctest::Approx(q1).epsilon(1e-15));
  CHECK(qfi_case3_series(params).qfi == doctest::Approx(q1).epsilon(1e-15));
}

TEST_CASE("syndrome-error series matches the solver to its stated order") {
  SystemParams params = make(2, 20.0, 1e-4, 0.0, 0.01, 1e-3, 1000);
  double exact = qfi_from_state(solve_recurrence(params)).result.qfi;
  double series = qfi_case3_series(params).qfi;
  // One factor |q|^{2n} of bookkeeping separates the two forms, so the
  // agreement scale is n p (omega tau)^2, far below one percent here.
  double phi = 20.0 * 1e-3;
  double order = 2.0 * 0.01 * phi * phi * 4.0 + 1e-4 * 1e-3 + 1e-3;
  CHECK(std::abs(series - exact) / exact <= order);
}

TEST_CASE("series evaluators reject parameters outside their case") {
  SystemParams params = make(2, 1.0, 0.1, 1e-3, 0.0, 0.1, 5);
  CHECK_THROWS_WITH_AS(qfi_case1_series(params),
                       "case-1 series requires xi = 0",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(qfi_case3_series(params),
                       "case-3 series requires xi = 0",
                       std::invalid_argument);
  params.xi = 0.0;
  params.p = 0.02;
  CHECK_THROWS_WITH_AS(qfi_case1_series(params),
                       "case-1 series requires p = 0",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(qfi_case2_series(params),
                       "case-2 series requires p = 0",
                       std::invalid_argument);
}

TEST_CASE("ancilla coefficient stays inside its printed bracket") {
  // Sweep the oscillation parameter across three decades and the
  // dephasing across three; the bracket is tight at the small-argument
  // end where g -> (2/3) t.
  double tau = 1e-3;
  long long T = 1000;
  double t = tau * T;
  for (double gt : {1e-4, 1e-3, 1e-2}) {
    for (int i = 0; i <= 24; ++i) {
      double w = 0.1 * std::pow(500.0, i / 24.0);
      SystemParams params = make(1, w / t, gt / tau, 0.0, 0.0, tau, T);
      Case2Series c2 = qfi_case2_series(params);
      double slack = 10.0 * params.gamma * tau * tau * t + 1e-12;
      CHECK(c2.g >= c2.g_lower - slack);
      CHECK(c2.g <= c2.g_upper + slack);
    }
  }
  // Small-argument, zero-dephasing limit attains (2/3) t.
  SystemParams lim = make(1, 1e-8, 0.0, 0.0, 0.0, tau, T);
  CHECK(qfi_case2_series(lim).g == doctest::Approx((2.0 / 3.0) * t)
                                       .epsilon(1e-10));
}

TEST_CASE("round-count envelope is unimodal past its peak") {
  SystemParams params = make(2, 5.0, 0.1, 0.0, 0.0, 0.05, 1);
  double prev = -1.0;
  bool past_peak = false;
  for (long long T = 1; T <= 200; ++T) {
    params.rounds = T;
    double norm = qfi_from_state(solve_recurrence(params)).result.normalized;
    if (past_peak) {
      REQUIRE(norm <= prev * (1.0 + 1e-12));
    } else if (prev >= 0.0 && norm < prev) {
      past_peak = true;
    }
    prev = norm;
  }
  CHECK(past_peak);
}

TEST_CASE("bit-flip reference point") {
  SystemParams params = make(3, 20.0, 1.0, 0.0, 0.0, 0.01, 8);
  QfiResult result = qfi_bitflip(params);
  CHECK(result.qfi ==
        doctest::Approx(0.055628022478641975).epsilon(1e-11));
  CHECK(result.scenario == Scenario::bitflip);
  CHECK(result.method == Method::exact);
}

TEST_CASE("bit-flip code on one qubit is plain uncorrected evolution") {
  // Majority vote over a single qubit corrects nothing, so eight short
  // rounds compose into one long free evolution.
  SystemParams params = make(1, 4.0, 0.3, 0.0, 0.0, 0.01, 8);
  double corrected = qfi_bitflip(params).qfi;
  double free_run = qfi_noec_exact(params, 0.08).qfi;
  CHECK(corrected == doctest::Approx(free_run).epsilon(1e-12));
}

TEST_CASE("bit-flip code rejects even register sizes") {
  SystemParams params = make(2, 1.0, 0.1, 0.0, 0.0, 0.1, 3);
  CHECK_THROWS_WITH_AS(qfi_bitflip(params), "bit-flip code requires odd n",
                       std::invalid_argument);
}

TEST_CASE("optimal-time formula and its scaling") {
  SystemParams params = make(25, 20.0, 1.0, 0.0, 0.0, 1e-3, 1);
  CHECK(t_opt(params) == doctest::Approx(150.0).epsilon(1e-15));
  params.tau *= 2.0;
  CHECK(t_opt(params) == doctest::Approx(37.5).epsilon(1e-15));

  params.gamma = 0.0;
  CHECK_THROWS_WITH_AS(t_opt(params),
                       "t_opt is unbounded at gamma = 0 or omega = 0",
                       std::invalid_argument);
  params.gamma = 1.0;
  params.omega = 0.0;
  CHECK_THROWS_AS(t_opt(params), std::invalid_argument);
}

TEST_CASE("optimal-time formula lands near the numeric argmax") {
  SystemParams params = make(5, 5.0, 0.1, 0.0, 0.0, 0.01, 1);
  double formula = t_opt(params);
  long long hi = static_cast<long long>(4.0 * formula / params.tau);
  long long best = best_rounds(params, 1, hi);
  double numeric = static_cast<double>(best) * params.tau;
  CHECK(std::abs(numeric - formula) <= 0.1 * formula);
}
