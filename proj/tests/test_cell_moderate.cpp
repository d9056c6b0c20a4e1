#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "plates/cell_moderate.hpp"

using namespace plates;

namespace {
const Mat2 kE11 = (Mat2() << 1, 0, 0, 0).finished();

QuadraticForm2 laminate_110(double lam = 0.0) {
  return reduce_q2(linearize_q3(PeriodicMaterial::laminate_y1({1.0, 10.0}, {lam, lam})));
}
}  // namespace

TEST_CASE("homogeneous material: zero corrector, energy Q2(II)") {
  const auto q2 = reduce_q2(linearize_q3(PeriodicMaterial::homogeneous(1.0, 1.0)));
  Mat2 ii;
  ii << -1, 0.3, 0.3, 0.7;
  ModerateOptions opts;
  opts.modes = 4;
  const auto sol = solve_cell_m(q2, ii, opts);
  CHECK(sol.energy == doctest::Approx(q2.eval(Vec2(0.1, 0.1), ii)).epsilon(1e-12));
  CHECK(sol.corrector.coeff_norm() <= 1e-10);
  CHECK(sol.residual_norm <= 1e-10);
}

TEST_CASE("laminate anchor: harmonic mean with strip enrichment") {
  const auto q2 = laminate_110();
  const auto sol = solve_cell_m(q2, -kE11, ModerateOptions{});
  CHECK(sol.energy == doctest::Approx(20.0 / 11.0).epsilon(1e-10));
}

TEST_CASE("pure trig basis converges monotonically from above to the laminate value") {
  const auto q2 = laminate_110();
  double prev = 1e300;
  for (int N : {2, 4, 8, 16}) {
    ModerateOptions opts;
    opts.modes = N;
    opts.axis_enrichment = false;
    const double e = solve_cell_m(q2, -kE11, opts).energy;
    CHECK(e <= prev + 1e-12);
    CHECK(e >= 20.0 / 11.0 - 1e-12);
    prev = e;
  }
  // slow O(1/N) convergence: still a few percent off at N = 16
  CHECK(prev > 20.0 / 11.0 + 1e-3);
}

TEST_CASE("quadratic homogeneity: doubling II quadruples the energy") {
  const auto q2 = laminate_110(0.5);
  Mat2 ii;
  ii << -0.8, 0.25, 0.25, -0.4;
  ModerateOptions opts;
  opts.modes = 6;
  const auto s1 = solve_cell_m(q2, ii, opts);
  const auto s2 = solve_cell_m(q2, 2.0 * ii, opts);
  CHECK(s2.energy == doctest::Approx(4.0 * s1.energy).epsilon(1e-10));
}

TEST_CASE("corrector is linear in II") {
  const auto q2 = laminate_110(1.0);
  ModerateOptions opts;
  opts.modes = 5;
  opts.axis_enrichment = false;
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  Mat2 A, B;
  A << n(rng), 0, 0, n(rng);
  A(0, 1) = A(1, 0) = n(rng);
  B << n(rng), 0, 0, n(rng);
  B(0, 1) = B(1, 0) = n(rng);
  const double al = 1.3, be = -0.6;
  auto sa = solve_cell_m(q2, A, opts);
  auto sb = solve_cell_m(q2, B, opts);
  auto sc = solve_cell_m(q2, al * A + be * B, opts);
  PeriodicScalarField2 combo = sa.corrector;
  combo.c_cos *= al;
  combo.c_sin *= al;
  combo.axpy(be, sb.corrector);
  CHECK((combo.c_cos - sc.corrector.c_cos).lpNorm<Eigen::Infinity>() <= 1e-9);
  CHECK((combo.c_sin - sc.corrector.c_sin).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("upper bound: energy never exceeds the plain cell average") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> um(0.5, 10.0);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto q2 = reduce_q2(linearize_q3(
        PeriodicMaterial::checkerboard(um(rng), um(rng), 0.5 * um(rng), 0.5 * um(rng), 2)));
    Mat2 ii;
    ii << n(rng), 0, 0, n(rng);
    ii(0, 1) = ii(1, 0) = n(rng);
    ModerateOptions opts;
    opts.modes = 4;
    const auto sol = solve_cell_m(q2, ii, opts);
    CHECK(sol.energy <= q2.mean_value(ii) + 1e-12);
  }
}

TEST_CASE("checkerboard N=2: agrees with an independent dense quadratic minimizer") {
  const auto q2 =
      reduce_q2(linearize_q3(PeriodicMaterial::checkerboard(1.0, 6.0, 0.0, 1.0, 2)));
  Mat2 ii;
  ii << -1.0, 0.2, 0.2, -0.3;
  ModerateOptions opts;
  opts.modes = 2;
  opts.axis_enrichment = false;
  const auto sol = solve_cell_m(q2, ii, opts);

  const auto basis = moderate_basis(q2, opts);
  auto energy = [&](const Eigen::VectorXd& x) {
    return oracles::cell_energy_direct(q2, ii, basis, x);
  };
  const double brute = oracles::minimize_quadratic_fd(energy, static_cast<int>(basis.size()));
  CHECK(sol.energy == doctest::Approx(brute).epsilon(1e-8));
}

TEST_CASE("exact assembly matches the quadrature backend") {
  const auto q2 = laminate_110(0.7);
  Mat2 ii;
  ii << -0.5, 0.1, 0.1, 0.9;
  ModerateOptions exact;
  exact.modes = 3;
  ModerateOptions quad = exact;
  quad.backend = AssemblyBackend::Quadrature;
  quad.quad_order = 24;
  quad.axis_enrichment = false;  // band integrands are not polynomial
  exact.axis_enrichment = false;
  const auto a = solve_cell_m(q2, ii, exact);
  const auto b = solve_cell_m(q2, ii, quad);
  CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-10));
}

TEST_CASE("assemble_qhom_m anchors") {
  // homogeneous mu=1, lambda=0: H = diag(1, 1, 2) in the unscaled convention
  const auto q2h = reduce_q2(linearize_q3(PeriodicMaterial::homogeneous(1.0, 0.0)));
  ModerateOptions opts;
  opts.modes = 3;
  const auto H = assemble_qhom_m(q2h, opts);
  Mat3 expect = Vec3(1, 1, 2).asDiagonal();
  CHECK((H.H - expect).lpNorm<Eigen::Infinity>() <= 1e-12);

  const auto q2l = laminate_110();
  const auto Hl = assemble_qhom_m(q2l, ModerateOptions{});
  CHECK(Hl.H(0, 0) == doctest::Approx(20.0 / 11.0).epsilon(1e-9));
  CHECK((Hl.H - Hl.H.transpose()).lpNorm<Eigen::Infinity>() <= 1e-12);

  // PSD
  Eigen::SelfAdjointEigenSolver<Mat3> es(Hl.H);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("assembled form reproduces per-II solves") {
  const auto q2 = laminate_110(1.2);
  ModerateOptions opts;
  opts.modes = 6;
  const auto H = assemble_qhom_m(q2, opts);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    Mat2 ii;
    ii << n(rng), 0, 0, n(rng);
    ii(0, 1) = ii(1, 0) = n(rng);
    const double direct = solve_cell_m(q2, ii, opts).energy;
    const double viaH = qhom_eval(H, ii);
    CHECK(viaH == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("laminate with oblique bending direction matches the 1D closed form") {
  // For a y1-laminate, the corrector depends on y1 only and
  // q_m(T) = Hm * T1^4 + <mu> (2 T1^2 T2^2 + T2^4) with Hm the harmonic mean.
  const auto q2 = laminate_110();
  const double hm = oracles::harmonic_mean({1.0, 10.0});
  const double am = 5.5;
  const Vec2 T = Vec2(1.0, 1.0).normalized();
  const Mat2 ii = -T * T.transpose();
  const auto sol = solve_cell_m(q2, ii, ModerateOptions{});
  const double t12 = T[0] * T[0], t22 = T[1] * T[1];
  const double expect = hm * t12 * t12 + am * (2 * t12 * t22 + t22 * t22);
  CHECK(sol.energy == doctest::Approx(expect).epsilon(1e-10));
}
