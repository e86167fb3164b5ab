#include "phaselab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phaselab {

namespace {

constexpr double kZeroNormThreshold = 1e-9;
// Inputs this close to unit norm are left bit-identical so serialized states
// reparse exactly.
constexpr double kUnitSlack = 8.0 * std::numeric_limits<double>::epsilon();

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

PureQubitState PureQubitState::normalized(Complex a0, Complex a1) {
  if (!finite(a0) || !finite(a1)) throw DomainError("non-finite qubit amplitude");
  const double n = std::sqrt(std::norm(a0) + std::norm(a1));
  if (n <= kZeroNormThreshold) throw ZeroNorm("qubit amplitudes have zero norm");
  if (std::abs(n - 1.0) <= kUnitSlack) return {a0, a1};
  return {a0 / n, a1 / n};
}

Complex inner_product(const PureQubitState& a, const PureQubitState& b) {
  return std::conj(a.a0()) * b.a0() + std::conj(a.a1()) * b.a1();
}

double TwoQubitState::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

TwoQubitState make_two_qubit(Complex a00, Complex a01, Complex a10, Complex a11) {
  TwoQubitState::Amplitudes a{a00, a01, a10, a11};
  if (!std::all_of(a.begin(), a.end(), finite)) throw DomainError("non-finite amplitude");
  double n2 = 0.0;
  for (const auto& x : a) n2 += std::norm(x);
  const double n = std::sqrt(n2);
  if (n <= kZeroNormThreshold) throw ZeroNorm("two-qubit amplitudes have zero norm");
  if (std::abs(n - 1.0) > kUnitSlack) {
    for (auto& x : a) x /= n;
  }
  return TwoQubitState(a);
}

TwoQubitState unchecked_two_qubit(const TwoQubitState::Amplitudes& a) { return TwoQubitState(a); }

TwoQubitState schmidt_state(const SchmidtParams& p) {
  if (!(p.lambda0 >= 0.0 && p.lambda0 <= 1.0)) throw DomainError("lambda0 outside [0,1]");
  if (!std::isfinite(p.theta)) throw DomainError("theta not finite");
  const double s0 = std::sqrt(p.lambda0);
  const double s1 = std::sqrt(1.0 - p.lambda0);
  const double c = std::cos(p.theta / 2.0);
  const double s = std::sin(p.theta / 2.0);
  return unchecked_two_qubit({Complex(s0 * c), Complex(-s1 * s), Complex(s0 * s), Complex(s1 * c)});
}

Mat2 Mat2::operator*(const Mat2& o) const {
  const auto& a = *this;
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * o(0, j) + a(i, 1) * o(1, j);
  return r;
}

Mat2 Mat2::operator*(Complex s) const {
  Mat2 r = *this;
  for (auto& x : r.m) x *= s;
  return r;
}

Mat2 Mat2::operator+(const Mat2& o) const {
  Mat2 r = *this;
  for (int k = 0; k < 4; ++k) r.m[k] += o.m[k];
  return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
  Mat2 r = *this;
  for (int k = 0; k < 4; ++k) r.m[k] -= o.m[k];
  return r;
}

Mat2 Mat2::adjoint() const {
  return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

double Mat2::max_abs() const {
  double r = 0.0;
  for (const auto& x : m) r = std::max(r, std::abs(x));
  return r;
}

Unitary2 Unitary2::from_matrix(const Mat2& m, double tol) {
  if ((m.adjoint() * m - Mat2::identity()).max_abs() > tol)
    throw NotSpecialUnitary("matrix is not unitary");
  if (std::abs(m.det() - Complex(1.0)) > tol) throw NotSpecialUnitary("determinant is not 1");
  return Unitary2(m);
}

Unitary2 evolution_operator(const Vec3& axis, double t) {
  if (std::abs(axis.norm() - 1.0) > 1e-9) throw DomainError("rotation axis is not unit length");
  if (!std::isfinite(t)) throw DomainError("rotation time not finite");
  const double c = std::cos(t / 2.0);
  const double s = std::sin(t / 2.0);
  const Complex i(0.0, 1.0);
  const Complex n_minus(axis.x, -axis.y);
  const Complex n_plus(axis.x, axis.y);
  Mat2 u;
  u(0, 0) = Complex(c, -axis.z * s);
  u(0, 1) = -i * n_minus * s;
  u(1, 0) = -i * n_plus * s;
  u(1, 1) = Complex(c, axis.z * s);
  return Unitary2(u);
}

TwoQubitState apply_local(const Unitary2& u, Qubit qubit, const TwoQubitState& s) {
  TwoQubitState::Amplitudes out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out[2 * i + j] = qubit == Qubit::First ? u(i, 0) * s.amp(0, j) + u(i, 1) * s.amp(1, j)
                                             : u(j, 0) * s.amp(i, 0) + u(j, 1) * s.amp(i, 1);
    }
  }
  return unchecked_two_qubit(out);
}

DensityMatrix2 DensityMatrix2::from_matrix(const Mat2& m, double tol) {
  if ((m - m.adjoint()).max_abs() > tol) throw DomainError("density matrix not Hermitian");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol) throw DomainError("density matrix trace is not 1");
  // Eigenvalues of a Hermitian 2x2: tr/2 +- sqrt(((a-d)/2)^2 + |b|^2).
  const double half_gap = std::hypot((m(0, 0).real() - m(1, 1).real()) / 2.0, std::abs(m(0, 1)));
  if (tr / 2.0 - half_gap < -tol) throw DomainError("density matrix has a negative eigenvalue");
  return DensityMatrix2(m);
}

DensityMatrix2 DensityMatrix2::from_pure(const PureQubitState& q) {
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = q[r] * std::conj(q[c]);
  return DensityMatrix2(m);
}

double DensityMatrix2::purity_trace() const {
  double s = 0.0;
  for (const auto& x : rho_.m) s += std::norm(x);
  return s;
}

DensityMatrix2 reduced_density(const TwoQubitState& s, Qubit keep) {
  Mat2 rho;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Complex acc = 0.0;
      for (int k = 0; k < 2; ++k) {
        acc += keep == Qubit::First ? s.amp(r, k) * std::conj(s.amp(c, k))
                                    : s.amp(k, r) * std::conj(s.amp(k, c));
      }
      rho(r, c) = acc;
    }
  }
  return DensityMatrix2(rho);
}

Complex inner_product(const TwoQubitState& a, const TwoQubitState& b) {
  Complex acc = 0.0;
  for (int k = 0; k < 4; ++k) acc += std::conj(a.amplitudes()[k]) * b.amplitudes()[k];
  return acc;
}

double wrap_angle(double phi) {
  double r = std::remainder(phi, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace phaselab
