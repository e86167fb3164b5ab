#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phaselab/hopf.hpp"

using namespace phaselab;

namespace {

void expect_vec(const Vec3& v, const Vec3& want, double tol) {
  EXPECT_NEAR(v.x, want.x, tol);
  EXPECT_NEAR(v.y, want.y, tol);
  EXPECT_NEAR(v.z, want.z, tol);
}

DensityMatrix2 diag(double a, double d) {
  Mat2 m;
  m(0, 0) = a;
  m(1, 1) = d;
  return DensityMatrix2::from_matrix(m);
}

}  // namespace

TEST(BlochOfPure, Examples) {
  expect_vec(bloch_of_pure(PureQubitState::normalized(1, 0)), {0, 0, 1}, 0.0);
  expect_vec(bloch_of_pure(PureQubitState::normalized(1, 1)), {1, 0, 0}, 1e-15);
  const double th = kPi / 3;
  expect_vec(bloch_of_pure(PureQubitState::normalized(std::cos(th / 2), std::sin(th / 2))),
             {std::sin(th), 0, std::cos(th)}, 1e-15);
  // Y is <sigma_y>: (|0> + i|1>)/sqrt2 points along +y.
  expect_vec(bloch_of_pure(PureQubitState::normalized(1, Complex(0, 1))), {0, 1, 0}, 1e-15);
}

TEST(BlochOfDensity, Examples) {
  expect_vec(bloch_of_density(diag(0.5, 0.5)), {0, 0, 0}, 0.0);
  expect_vec(bloch_of_density(diag(0.3, 0.7)), {0, 0, -0.4}, 1e-15);
  const auto rho = reduced_density(schmidt_state({0.3, kPi / 2}), Qubit::First);
  const auto b = bloch_of_density(rho);
  expect_vec(b, {-0.4, 0, 0}, 1e-15);
  EXPECT_NEAR(b.norm(), 0.4, 1e-15);
}

TEST(BlochOfDensity, AgreesWithPureStateAndPauliExpectation) {
  oracle::Random rng(31);
  for (int i = 0; i < 500; ++i) {
    const auto q = PureQubitState::normalized(Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal()));
    expect_vec(bloch_of_density(DensityMatrix2::from_pure(q)), bloch_of_pure(q), 1e-14);

    const auto s = rng.state();
    const auto rho = reduced_density(s, Qubit::First);
    const auto b = bloch_of_density(rho);
    const auto r = oracle::to_eigen(rho.matrix());
    expect_vec(b, {(r * oracle::pauli(0)).trace().real(), (r * oracle::pauli(1)).trace().real(),
                   (r * oracle::pauli(2)).trace().real()},
               1e-14);
    EXPECT_NEAR(b.norm(), std::sqrt(std::max(0.0, 2 * rho.purity_trace() - 1)), 1e-9);
  }
}

TEST(HopfCoords, Examples) {
  const auto h00 = hopf_coords(make_two_qubit(1, 0, 0, 0));
  EXPECT_EQ(h00.z, 1.0);
  EXPECT_EQ(h00.c_r, 0.0);
  const auto hb = hopf_coords(schmidt_state({0.5, 0.0}));
  EXPECT_NEAR(hb.x, 0, 1e-15);
  EXPECT_NEAR(hb.y, 0, 1e-15);
  EXPECT_NEAR(hb.z, 0, 1e-15);
  EXPECT_NEAR(hb.c_r, 1, 1e-15);
  EXPECT_NEAR(hb.c_i, 0, 1e-15);
  const auto h = hopf_coords(schmidt_state({0.3, kPi / 2}));
  EXPECT_NEAR(h.x * h.x + h.y * h.y + h.z * h.z, 0.16, 1e-15);
  EXPECT_NEAR(h.c_r, 2 * std::sqrt(0.21), 1e-15);
  EXPECT_NEAR(h.c_r, 0.916515, 1e-6);
  EXPECT_NEAR(h.c_i, 0, 1e-15);
}

TEST(HopfCoords, LieOnS4AndMatchReducedBloch) {
  oracle::Random rng(32);
  for (int i = 0; i < 1000; ++i) {
    const auto s = rng.state();
    const auto h = hopf_coords(s);
    EXPECT_LT(std::abs(h.x * h.x + h.y * h.y + h.z * h.z + h.c_r * h.c_r + h.c_i * h.c_i - 1.0), 1e-9);
    expect_vec({h.x, h.y, h.z}, bloch_of_density(reduced_density(s, Qubit::First)), 1e-14);
  }
}

TEST(Concurrence, Examples) {
  oracle::Random rng(33);
  for (int i = 0; i < 50; ++i) {
    const Complex a0(rng.normal(), rng.normal()), a1(rng.normal(), rng.normal());
    const Complex b0(rng.normal(), rng.normal()), b1(rng.normal(), rng.normal());
    EXPECT_NEAR(concurrence(make_two_qubit(a0 * b0, a0 * b1, a1 * b0, a1 * b1)), 0.0, 1e-15);
  }
  EXPECT_NEAR(concurrence(make_two_qubit(1, 0, 0, 1)), 1.0, 1e-15);
  for (double th : {0.0, 0.7, kPi / 2, 3.0}) EXPECT_NEAR(concurrence(schmidt_state({0.3, th})), 2 * std::sqrt(0.21), 1e-15);
}

TEST(Concurrence, InvariantUnderLocalUnitaries) {
  oracle::Random rng(34);
  for (int i = 0; i < 1000; ++i) {
    const auto s = rng.state();
    const auto moved = apply_local(rng.unitary(), rng.integer(1, 2) == 1 ? Qubit::First : Qubit::Second, s);
    EXPECT_LT(std::abs(concurrence(moved) - concurrence(s)), 1e-12);
  }
}

TEST(BallRadius, Examples) {
  EXPECT_NEAR(ball_radius(schmidt_state({0.5, 0.0})), 0.0, 1e-7);
  EXPECT_NEAR(ball_radius(make_two_qubit(1, 0, 0, 0)), 1.0, 0.0);
  EXPECT_NEAR(ball_radius(schmidt_state({0.3, 1.0})), 0.4, 1e-15);
  for (double l0 : {0.0, 0.1, 0.45, 0.9, 1.0}) EXPECT_NEAR(ball_radius(schmidt_state({l0, 2.0})), std::abs(2 * l0 - 1), 1e-14);
}

TEST(BallRadius, EqualsReducedBlochLength) {
  oracle::Random rng(35);
  for (int i = 0; i < 1000; ++i) {
    const auto s = rng.state();
    EXPECT_NEAR(ball_radius(s), bloch_of_density(reduced_density(s, Qubit::First)).norm(), 1e-9);
    EXPECT_NEAR(ball_radius(s), bloch_of_density(reduced_density(s, Qubit::Second)).norm(), 1e-9);
  }
}

TEST(PurityRadius, Examples) {
  EXPECT_NEAR(purity_radius(diag(0.5, 0.5)), 0.0, 0.0);
  EXPECT_NEAR(purity_radius(DensityMatrix2::from_pure(PureQubitState::normalized(1, Complex(0.3, 2)))), 1.0, 1e-15);
  EXPECT_NEAR(purity_radius(diag(0.3, 0.7)), 0.4, 1e-15);
}

TEST(Purify, Examples) {
  const auto p = purify(diag(0.7, 0.3));
  EXPECT_NEAR(p.weight_m, 0.7, 1e-15);
  EXPECT_NEAR(p.weight_n, 0.3, 1e-15);
  EXPECT_NEAR(std::abs(p.state_m.a0()), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(p.state_n.a1()), 1.0, 1e-15);

  const auto pure = purify(DensityMatrix2::from_pure(PureQubitState::normalized(1, 2)));
  EXPECT_NEAR(pure.weight_m, 1.0, 1e-15);
  EXPECT_NEAR(pure.weight_n, 0.0, 1e-15);

  EXPECT_THROW(purify(diag(0.5, 0.5)), DegenerateSpectrum);
}

TEST(Purify, SchmidtStateAgainstEigenSolver) {
  for (double th : {0.0, 0.6, kPi / 2, 2.4, kPi}) {
    const auto rho = reduced_density(schmidt_state({0.3, th}), Qubit::First);
    const auto p = purify(rho);
    EXPECT_NEAR(p.weight_m, 0.7, 1e-14);
    EXPECT_NEAR(p.weight_n, 0.3, 1e-14);
    Eigen::SelfAdjointEigenSolver<oracle::Mat2e> es(oracle::to_eigen(rho.matrix()));
    const Eigen::Vector2cd top = es.eigenvectors().col(1);
    const PureQubitState top_q = PureQubitState::normalized(top(0), top(1));
    EXPECT_NEAR(std::abs(inner_product(top_q, p.state_m)), 1.0, 1e-12);
    // Dominant weight sits along -(sin, 0, cos) because 2 l0 - 1 < 0.
    expect_vec(bloch_of_pure(p.state_m), {-std::sin(th), 0, -std::cos(th)}, 1e-12);
    expect_vec(bloch_of_pure(p.state_n), {std::sin(th), 0, std::cos(th)}, 1e-12);
  }
}

TEST(Purify, ReconstructsRandomDensityMatrices) {
  oracle::Random rng(36);
  for (int i = 0; i < 1000; ++i) {
    const auto rho = reduced_density(rng.state(), Qubit::First);
    const auto p = purify(rho);
    EXPECT_GE(p.weight_m, p.weight_n);
    EXPECT_NEAR(p.weight_m + p.weight_n, 1.0, 1e-12);
    EXPECT_LT(std::abs(inner_product(p.state_m, p.state_n)), 1e-9);
    const Mat2 rebuilt = DensityMatrix2::from_pure(p.state_m).matrix() * Complex(p.weight_m) +
                         DensityMatrix2::from_pure(p.state_n).matrix() * Complex(p.weight_n);
    EXPECT_LT((rebuilt - rho.matrix()).max_abs(), 1e-9);
    expect_vec(bloch_of_pure(p.state_m), -bloch_of_pure(p.state_n), 1e-9);
    // Gauge: largest component real positive.
    const Complex big = std::abs(p.state_m.a0()) >= std::abs(p.state_m.a1()) ? p.state_m.a0() : p.state_m.a1();
    EXPECT_EQ(big.imag(), 0.0);
    EXPECT_GT(big.real(), 0.0);
  }
}

TEST(SU2ToSO3, Examples) {
  const auto id = su2_to_so3(Unitary2());
  EXPECT_EQ(id.angle(), 0.0);
  EXPECT_EQ(id.axis(), (Vec3{0, 0, 1}));
  const auto minus = su2_to_so3(-Unitary2());
  EXPECT_NEAR(minus.angle(), 0.0, 1e-15);
  const auto q = su2_to_so3(evolution_operator({0, 0, 1}, kPi / 2));
  EXPECT_NEAR(q.angle(), kPi / 2, 1e-15);
  expect_vec(q.axis(), {0, 0, 1}, 1e-15);
}

TEST(SU2ToSO3, FoldsLargeAnglesAndRecoversAxis) {
  oracle::Random rng(37);
  for (int i = 0; i < 500; ++i) {
    const Vec3 n = rng.axis();
    const double t = rng.uniform(0.01, kTwoPi - 0.01);
    const auto p = su2_to_so3(evolution_operator(n, t));
    if (t <= kPi) {
      EXPECT_NEAR(p.angle(), t, 1e-12);
      expect_vec(p.axis(), n, 1e-9);
    } else {
      EXPECT_NEAR(p.angle(), kTwoPi - t, 1e-12);
      expect_vec(p.axis(), -n, 1e-9);
    }
  }
}

TEST(SU2ToSO3, AntipodalIdentification) {
  oracle::Random rng(38);
  for (int i = 0; i < 1000; ++i) {
    const auto u = rng.unitary();
    EXPECT_TRUE(su2_to_so3(u).approx_equal(su2_to_so3(-u), 1e-12));
  }
  // At angle pi the two ends of a diameter are one point.
  const Vec3 n{0.6, -0.8, 0.0};
  EXPECT_EQ(SO3Point(n, kPi), SO3Point(-n, kPi));
  EXPECT_TRUE(SO3Point(n, kPi - 1e-13).approx_equal(SO3Point(-n, kPi - 1e-13), 1e-12));
  EXPECT_FALSE(SO3Point(n, 1.0).approx_equal(SO3Point(-n, 1.0), 1e-6));
}

TEST(SO3Path, EmptySchedule) {
  RotationSchedule s;
  const auto p = so3_path(s, 10);
  ASSERT_EQ(p.samples.size(), 1u);
  EXPECT_EQ(p.samples[0].point.angle(), 0.0);
  EXPECT_TRUE(p.crossings.empty());
}

TEST(SO3Path, FullTurnCrossesOnceAtPi) {
  RotationSchedule s;
  s.segments = {{{0, 0, 1}, kTwoPi}};
  for (int n : {2, 3, 4, 101, 2000}) {
    const auto p = so3_path(s, n);
    ASSERT_EQ(p.crossings.size(), 1u) << n;
    EXPECT_NEAR(p.crossings[0], kPi, 1e-9);
  }
}

TEST(SO3Path, BuiltinsTouchVersusCross) {
  RotationSchedule s;
  s.segments = builtin_minus();
  const auto minus = so3_path(s, 2000);
  ASSERT_EQ(minus.crossings.size(), 1u);
  EXPECT_NEAR(minus.crossings[0], 4 * kPi / 3, 1e-9);
  s.segments = builtin_plus();
  EXPECT_TRUE(so3_path(s, 2000).crossings.empty());
  // Same result when F is not a sample point.
  s.segments = builtin_plus();
  EXPECT_TRUE(so3_path(s, 2).crossings.empty());
}

TEST(SO3Path, CrossingParityMatchesMesPhase) {
  oracle::Random rng(39);
  for (int i = 0; i < 100; ++i) {
    RotationSchedule s;
    s.initial = rng.mes();
    s.segments = oracle::with_completion(rng.segments(5), i % 2 == 1);
    const auto p = so3_path(s, 400);
    const auto out = evolve(s, Timeline(s.segments).boundary(s.segments.size()));
    const double phase = std::arg(inner_product(s.initial, out));
    const bool odd = p.crossings.size() % 2 == 1;
    EXPECT_EQ(odd, std::abs(wrap_angle(phase - kPi)) < 1e-6) << i;
  }
}
