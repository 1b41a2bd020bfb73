#include "ghzsense/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "ghzsense/fisher.hpp"

namespace ghzsense {
namespace {

using Cplx = std::complex<double>;

// Dense Pade(13) exponential with scaling and squaring. Kept local so the
// oracle shares no numerics with the closed-form modules.
template <typename Mat>
Mat expm(const Mat& arg) {
  static const double b[] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const double theta13 = 5.371920351148152;
  double nrm = arg.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Mat A = arg;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    A /= std::pow(2.0, squarings);
  }
  Mat A2 = A * A;
  Mat A4 = A2 * A2;
  Mat A6 = A4 * A2;
  Mat I = Mat::Identity(arg.rows(), arg.cols());
  Mat U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
               b[5] * A4 + b[3] * A2 + b[1] * I);
  Mat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
          b[4] * A4 + b[2] * A2 + b[0] * I;
  Mat R = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) R = R * R;
  return R;
}

int hamming(unsigned long v) {
  int c = 0;
  while (v) {
    c += static_cast<int>(v & 1ul);
    v >>= 1;
  }
  return c;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_dim(int m) {
  if (m < 1 || m > 12)
    throw std::invalid_argument("register too large for the dense oracle");
}

AmplitudeState pipeline(const SystemParams& params, Scenario scenario,
                        double omega) {
  switch (scenario) {
    case Scenario::no_ec: {
      GeneratorPair gen =
          build_generators(params.n, omega, params.gamma, 0.0, false);
      return evolve(ghz_state(params.n), gen, params.t());
    }
    case Scenario::bitflip: {
      if (params.n % 2 == 0)
        throw std::invalid_argument("bit-flip code requires odd n");
      GeneratorPair gen =
          build_generators(params.n, omega, params.gamma, 0.0, false);
      AmplitudeState st = ghz_state(params.n);
      for (long long r = 0; r < params.rounds; ++r)
        st = apply_bitflip_code(evolve(st, gen, params.tau));
      return st;
    }
    default: {
      GeneratorPair gen =
          build_generators(params.n, omega, params.gamma, params.xi, true);
      AmplitudeState st = ghz_state(params.n + 1);
      for (long long r = 0; r < params.rounds; ++r)
        st = apply_parity_check(evolve(st, gen, params.tau), params.p);
      return st;
    }
  }
}

struct PairEigs {
  double plus = 0.0;
  double minus = 0.0;
};

PairEigs block_eigs(const AmplitudeState& st, long j, long jb) {
  double avg = 0.5 * (st.a(j) + st.a(jb));
  double half_gap = 0.5 * (st.a(j) - st.a(jb));
  double root = std::sqrt(half_gap * half_gap + std::norm(st.b(j)));
  return {avg + root, avg - root};
}

}  // namespace

GeneratorPair build_generators(int n, double omega, double gamma, double xi,
                               bool with_ancilla) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  int m = with_ancilla ? n + 1 : n;
  check_dim(m);
  long dim = 1l << m;
  GeneratorPair gen;
  gen.m = m;
  gen.A = Eigen::MatrixXd::Zero(dim, dim);
  gen.B = Eigen::MatrixXcd::Zero(dim, dim);

  auto add_block = [&](int q, const Eigen::Matrix2d& blk_a,
                       const Eigen::Matrix2cd& blk_b) {
    int pos = m - 1 - q;  // qubit 0 is the most significant bit
    long mask = 1l << pos;
    for (long i = 0; i < dim; ++i) {
      int bi = static_cast<int>((i >> pos) & 1l);
      for (int bj = 0; bj < 2; ++bj) {
        long j = (i & ~mask) | (static_cast<long>(bj) << pos);
        gen.A(i, j) += blk_a(bi, bj);
        gen.B(i, j) += blk_b(bi, bj);
      }
    }
  };

  Eigen::Matrix2d pop;
  pop << -gamma, gamma, gamma, -gamma;
  Eigen::Matrix2cd coh;
  coh << Cplx{-gamma, -omega}, Cplx{gamma, 0.0}, Cplx{gamma, 0.0},
      Cplx{-gamma, omega};
  for (int q = 0; q < n; ++q) add_block(q, pop, coh);

  if (with_ancilla) {
    Eigen::Matrix2d anc;
    anc << -xi, xi, xi, -xi;
    add_block(n, anc, anc.cast<Cplx>());
  }
  return gen;
}

AmplitudeState ghz_state(int m) {
  check_dim(m);
  long dim = 1l << m;
  AmplitudeState st;
  st.m = m;
  st.a = Eigen::VectorXd::Zero(dim);
  st.b = Eigen::VectorXcd::Zero(dim);
  st.a(0) = st.a(dim - 1) = 0.5;
  st.b(0) = st.b(dim - 1) = 0.5;
  return st;
}

AmplitudeState evolve(const AmplitudeState& state, const GeneratorPair& gen,
                      double tau) {
  if (state.m != gen.m)
    throw std::invalid_argument("state/generator size mismatch");
  AmplitudeState out;
  out.m = state.m;
  out.a = expm<Eigen::MatrixXd>(gen.A * tau) * state.a;
  out.b = expm<Eigen::MatrixXcd>(gen.B * tau) * state.b;
  return out;
}

AmplitudeState apply_parity_check(const AmplitudeState& state, double p) {
  int n = state.m - 1;
  if (n < 1) throw std::invalid_argument("parity check needs an ancilla");
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("p must be in [0, 1)");

  Eigen::MatrixXd up(2, 2), dn(2, 2), anc0(2, 2), anc1(2, 2);
  up << 1.0 - p, 1.0 - p, p, p;
  dn << p, p, 1.0 - p, 1.0 - p;
  anc0 << 1.0, 0.0, 0.0, 0.0;
  anc1 << 0.0, 0.0, 0.0, 1.0;

  Eigen::MatrixXd e_up = Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd e_dn = Eigen::MatrixXd::Ones(1, 1);
  for (int q = 0; q < n; ++q) {
    e_up = kron(e_up, up);
    e_dn = kron(e_dn, dn);
  }
  Eigen::MatrixXd E = kron(e_up, anc0) + kron(e_dn, anc1);

  AmplitudeState out;
  out.m = state.m;
  out.a = E * state.a;
  Eigen::VectorXd br = E * state.b.real();
  Eigen::VectorXd bi = E * state.b.imag();
  out.b.resize(br.size());
  for (long i = 0; i < br.size(); ++i) out.b(i) = {br(i), bi(i)};
  return out;
}

AmplitudeState apply_bitflip_code(const AmplitudeState& state) {
  int n = state.m;
  if (n % 2 == 0) throw std::invalid_argument("bit-flip code requires odd n");
  long dim = 1l << n;
  AmplitudeState out;
  out.m = n;
  out.a = Eigen::VectorXd::Zero(dim);
  out.b = Eigen::VectorXcd::Zero(dim);
  for (long k = 0; k < dim; ++k) {
    long target = 2 * hamming(static_cast<unsigned long>(k)) < n ? 0 : dim - 1;
    out.a(target) += state.a(k);
    out.b(target) += state.b(k);
  }
  return out;
}

std::complex<double> recurrence_corner(const AmplitudeState& state, int n,
                                       double p) {
  return 2.0 * state.b(0) / std::pow(1.0 - p, n);
}

OracleQfi qfi_numeric(const SystemParams& params, Scenario scenario) {
  validate(params);
  double delta = std::max(1e-6, 1e-6 * std::abs(params.omega));
  AmplitudeState sp = pipeline(params, scenario, params.omega + delta);
  AmplitudeState sm = pipeline(params, scenario, params.omega - delta);
  AmplitudeState s0 = pipeline(params, scenario, params.omega);

  long dim = 1l << s0.m;
  SpectralDecomposition dec;
  bool degenerate = false;
  for (long j = 0; j < dim / 2; ++j) {
    long jb = dim - 1 - j;
    PairEigs e0 = block_eigs(s0, j, jb);
    PairEigs ep = block_eigs(sp, j, jb);
    PairEigs em = block_eigs(sm, j, jb);
    SpectralPair pr;
    pr.multiplicity = 1.0;
    pr.lambda_plus = e0.plus;
    pr.lambda_minus = e0.minus;
    pr.d_lambda_plus = (ep.plus - em.plus) / (2.0 * delta);
    pr.d_lambda_minus = (ep.minus - em.minus) / (2.0 * delta);
    pr.theta = -std::arg(s0.b(j));
    pr.d_theta = -std::arg(sp.b(j) * std::conj(sm.b(j))) / (2.0 * delta);
    if (e0.plus + e0.minus > 1e-12 && e0.plus - e0.minus < 10.0 * delta)
      degenerate = true;
    dec.pairs.push_back(pr);
  }

  OracleQfi out;
  out.degenerate = degenerate;
  out.result =
      make_qfi_result(qfi_spectral(dec), params, scenario, Method::oracle);
  return out;
}

}  // namespace ghzsense
