#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phaselab/qstate.hpp"

using namespace phaselab;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void expect_amplitudes(const TwoQubitState& s, const std::array<Complex, 4>& want, double tol) {
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(s.amplitudes()[k].real(), want[k].real(), tol) << "amp " << k;
    EXPECT_NEAR(s.amplitudes()[k].imag(), want[k].imag(), tol) << "amp " << k;
  }
}

}  // namespace

TEST(MakeTwoQubit, BasisStateIsExact) {
  const auto s = make_two_qubit(1.0, 0.0, 0.0, 0.0);
  EXPECT_EQ(s.amplitudes()[0], Complex(1.0));
  EXPECT_EQ(s.amplitudes()[3], Complex(0.0));
}

TEST(MakeTwoQubit, Renormalizes) {
  expect_amplitudes(make_two_qubit(2.0, 0.0, 0.0, 0.0), {1.0, 0.0, 0.0, 0.0}, 0.0);
  expect_amplitudes(make_two_qubit(1.0, 0.0, 0.0, 1.0), {kInvSqrt2, 0.0, 0.0, kInvSqrt2}, 1e-15);
}

TEST(MakeTwoQubit, ZeroNormRejected) {
  EXPECT_THROW(make_two_qubit(0.0, 0.0, 0.0, 0.0), ZeroNorm);
  EXPECT_THROW(make_two_qubit(1e-10, 0.0, 0.0, 0.0), ZeroNorm);
  EXPECT_NO_THROW(make_two_qubit(1e-8, 0.0, 0.0, 0.0));
}

TEST(SchmidtState, Examples) {
  expect_amplitudes(schmidt_state({0.5, 0.0}), {kInvSqrt2, 0.0, 0.0, kInvSqrt2}, 1e-15);
  // Direct substitution at lambda0 = 0.3, theta = pi/2.
  expect_amplitudes(schmidt_state({0.3, kPi / 2}),
                    {std::sqrt(0.15), -std::sqrt(0.35), std::sqrt(0.15), std::sqrt(0.35)}, 1e-15);
  // lambda0 = 1 is the product cos(t/2)|00> + sin(t/2)|10>.
  const double th = 1.1;
  expect_amplitudes(schmidt_state({1.0, th}), {std::cos(th / 2), 0.0, std::sin(th / 2), 0.0}, 1e-15);
  EXPECT_NEAR(schmidt_state({0.37, 2.2}).norm(), 1.0, 1e-15);
}

TEST(SchmidtState, DomainError) {
  EXPECT_THROW(schmidt_state({-0.01, 0.0}), DomainError);
  EXPECT_THROW(schmidt_state({1.01, 0.0}), DomainError);
}

TEST(EvolutionOperator, Examples) {
  const Vec3 z{0, 0, 1};
  EXPECT_LT((evolution_operator(z, 0.0).matrix() - Mat2::identity()).max_abs(), 1e-15);
  EXPECT_LT((evolution_operator(z, kTwoPi).matrix() + Mat2::identity()).max_abs(), 1e-15);

  const double s = std::sqrt(1.0 / 3.0);
  const Vec3 n{-s, -s, -s};
  const auto u = evolution_operator(n, kTwoPi / 3.0);
  EXPECT_NEAR(u(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(u(0, 0).imag(), 0.5, 1e-15);
  const auto ref = oracle::rotation(n, kTwoPi / 3.0);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) EXPECT_LT(std::abs(u(r, c) - ref(r, c)), 1e-14);
}

TEST(EvolutionOperator, RejectsNonUnitAxis) {
  EXPECT_THROW(evolution_operator({1.0, 1.0, 0.0}, 1.0), DomainError);
  EXPECT_NO_THROW(evolution_operator({1.0 + 5e-10, 0.0, 0.0}, 1.0));
}

TEST(EvolutionOperator, UnitaryAndMatchesMatrixExponential) {
  oracle::Random rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 n = rng.axis();
    const double t = rng.uniform(-10.0, 10.0);
    const auto u = evolution_operator(n, t);
    EXPECT_LT((u.matrix().adjoint() * u.matrix() - Mat2::identity()).max_abs(), 1e-12);
    EXPECT_LT(std::abs(u.matrix().det() - 1.0), 1e-12);
    if (i % 10 == 0) {
      const auto ref = oracle::rotation(n, t);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_LT(std::abs(u(r, c) - ref(r, c)), 1e-12);
    }
  }
}

TEST(EvolutionOperator, ComposesAlongOneAxis) {
  oracle::Random rng(12);
  for (int i = 0; i < 200; ++i) {
    const Vec3 n = rng.axis();
    const double t1 = rng.uniform(-7, 7), t2 = rng.uniform(-7, 7);
    const auto lhs = evolution_operator(n, t1 + t2);
    const auto rhs = evolution_operator(n, t2) * evolution_operator(n, t1);
    EXPECT_LT((lhs.matrix() - rhs.matrix()).max_abs(), 1e-12);
  }
}

TEST(ApplyLocal, Examples) {
  oracle::Random rng(3);
  const auto s = rng.state();
  expect_amplitudes(apply_local(Unitary2(), Qubit::First, s), s.amplitudes(), 0.0);
  const auto flipped = apply_local(-Unitary2(), Qubit::First, s);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(flipped.amplitudes()[k], -s.amplitudes()[k]);

  // 4x4 matrix-product oracle: U(z, pi) (x) I on (|00> + |11>)/sqrt2.
  const auto mes = schmidt_state({0.5, 0.0});
  const auto out = apply_local(evolution_operator({0, 0, 1}, kPi), Qubit::First, mes);
  expect_amplitudes(out, {Complex(0, -kInvSqrt2), 0.0, 0.0, Complex(0, kInvSqrt2)}, 1e-15);
}

TEST(ApplyLocal, MatchesLiftedOperatorAndPreservesNorm) {
  oracle::Random rng(4);
  for (int i = 0; i < 300; ++i) {
    auto s = rng.state();
    const int q = rng.integer(1, 2);
    const auto segs = rng.segments(8);
    oracle::Vec4 ref = oracle::to_eigen(s);
    for (const auto& seg : segs) {
      const auto u = evolution_operator(seg.axis, seg.duration);
      s = apply_local(u, q == 1 ? Qubit::First : Qubit::Second, s);
      ref = oracle::lift(oracle::to_eigen(u.matrix()), q) * ref;
    }
    EXPECT_LT(std::abs(s.norm() - 1.0), 1e-12);
    EXPECT_LT((oracle::to_eigen(s) - ref).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ReducedDensity, Examples) {
  const auto rho = reduced_density(make_two_qubit(1, 0, 0, 0), Qubit::First);
  EXPECT_EQ(rho(0, 0), Complex(1.0));
  EXPECT_EQ(rho(1, 1), Complex(0.0));

  const auto rho0 = reduced_density(schmidt_state({0.3, 0.0}), Qubit::First);
  EXPECT_NEAR(rho0(0, 0).real(), 0.3, 1e-15);
  EXPECT_NEAR(rho0(1, 1).real(), 0.7, 1e-15);
  EXPECT_NEAR(std::abs(rho0(0, 1)), 0.0, 1e-15);
}

TEST(ReducedDensity, OffDiagonalCarriesHalfSine) {
  // Partial trace of the full projector: off-diagonal is (l0 - l1) sin(theta) / 2.
  for (double l0 : {0.0, 0.2, 0.3, 0.5, 0.8, 1.0}) {
    for (double th : {0.0, 0.4, kPi / 2, 2.5, kPi}) {
      const auto s = schmidt_state({l0, th});
      const auto rho = reduced_density(s, Qubit::First);
      const auto ref = oracle::partial_trace(oracle::to_eigen(s), 1);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_LT(std::abs(rho(r, c) - ref(r, c)), 1e-15);
      EXPECT_NEAR(rho(0, 1).real(), (2 * l0 - 1) * std::sin(th) / 2, 1e-15);
      EXPECT_NEAR(rho(1, 0).real(), (2 * l0 - 1) * std::sin(th) / 2, 1e-15);
    }
  }
}

TEST(ReducedDensity, RandomStatesMatchPartialTraceOracle) {
  oracle::Random rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto s = rng.state();
    for (int keep : {1, 2}) {
      const auto rho = reduced_density(s, keep == 1 ? Qubit::First : Qubit::Second);
      const auto ref = oracle::partial_trace(oracle::to_eigen(s), keep);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) EXPECT_LT(std::abs(rho(r, c) - ref(r, c)), 1e-14);
      EXPECT_NO_THROW(DensityMatrix2::from_matrix(rho.matrix()));
    }
  }
}

TEST(ReducedDensity, SpectrumInvariantUnderPartnerRotation) {
  oracle::Random rng(6);
  const auto eig = [](const DensityMatrix2& r) {
    Eigen::SelfAdjointEigenSolver<oracle::Mat2e> es(oracle::to_eigen(r.matrix()));
    return es.eigenvalues();
  };
  for (int i = 0; i < 300; ++i) {
    const auto s = rng.state();
    const auto moved = apply_local(rng.unitary(), Qubit::First, s);
    const auto before = eig(reduced_density(s, Qubit::Second));
    const auto after = eig(reduced_density(moved, Qubit::Second));
    EXPECT_LT((before - after).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ReducedDensity, SchmidtEigenvaluesAreWeights) {
  oracle::Random rng(7);
  for (int i = 0; i < 300; ++i) {
    const double l0 = rng.uniform(0.0, 1.0);
    const double th = rng.uniform(-kTwoPi, kTwoPi);
    Eigen::SelfAdjointEigenSolver<oracle::Mat2e> es(
        oracle::to_eigen(reduced_density(schmidt_state({l0, th}), Qubit::First).matrix()));
    EXPECT_NEAR(es.eigenvalues()(0), std::min(l0, 1 - l0), 1e-12);
    EXPECT_NEAR(es.eigenvalues()(1), std::max(l0, 1 - l0), 1e-12);
  }
}

TEST(InnerProduct, Examples) {
  oracle::Random rng(8);
  const auto s = rng.state();
  EXPECT_NEAR(std::abs(inner_product(s, s) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inner_product(s, apply_local(-Unitary2(), Qubit::First, s)) + 1.0), 0.0, 1e-15);
  const auto bell_plus = make_two_qubit(1, 0, 0, 1);
  const auto bell_minus = make_two_qubit(1, 0, 0, -1);
  EXPECT_EQ(inner_product(bell_plus, bell_minus), Complex(0.0));
}

TEST(DensityMatrix, ValidatesInvariants) {
  Mat2 m;
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  EXPECT_NO_THROW(DensityMatrix2::from_matrix(m));
  m(0, 1) = 0.7;
  m(1, 0) = 0.7;
  EXPECT_THROW(DensityMatrix2::from_matrix(m), DomainError);  // negative eigenvalue
  m(1, 0) = 0.1;
  EXPECT_THROW(DensityMatrix2::from_matrix(m), DomainError);  // not Hermitian
}

TEST(WrapAngle, RangeIsHalfOpen) {
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_angle(-1.4 * kPi), 0.6 * kPi, 1e-15);
}
