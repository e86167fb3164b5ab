#pragma once

// Small-dimension complex linear algebra for one and two qubits.

#include <array>
#include <cmath>
#include <complex>

#include "phaselab/errors.hpp"

namespace phaselab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  bool operator==(const Vec3&) const = default;
};

/// Which qubit of the pair an operation acts on (1 or 2).
enum class Qubit { First = 1, Second = 2 };

constexpr Qubit partner(Qubit q) { return q == Qubit::First ? Qubit::Second : Qubit::First; }

/// Normalized single-qubit state a0|0> + a1|1>.
class PureQubitState {
 public:
  /// Normalizes (a0, a1). Throws ZeroNorm below 1e-9.
  static PureQubitState normalized(Complex a0, Complex a1);

  Complex a0() const { return a0_; }
  Complex a1() const { return a1_; }
  Complex operator[](int i) const { return i == 0 ? a0_ : a1_; }

 private:
  PureQubitState(Complex a0, Complex a1) : a0_(a0), a1_(a1) {}
  Complex a0_;
  Complex a1_;
};

Complex inner_product(const PureQubitState& a, const PureQubitState& b);

/// Normalized two-qubit state. amp(i, j) is the coefficient of |i>_1 |j>_2.
class TwoQubitState {
 public:
  using Amplitudes = std::array<Complex, 4>;

  Complex amp(int i, int j) const { return amps_[2 * i + j]; }
  const Amplitudes& amplitudes() const { return amps_; }
  double norm() const;

  bool operator==(const TwoQubitState&) const = default;

 private:
  explicit TwoQubitState(const Amplitudes& a) : amps_(a) {}
  Amplitudes amps_;

  friend TwoQubitState make_two_qubit(Complex, Complex, Complex, Complex);
  friend TwoQubitState unchecked_two_qubit(const Amplitudes&);
};

/// Builds a state from (possibly unnormalized) amplitudes; throws ZeroNorm if
/// the norm is at most 1e-9. Inputs already unit length to within a few ulp
/// keep their exact bits.
TwoQubitState make_two_qubit(Complex a00, Complex a01, Complex a10, Complex a11);

/// Internal: wraps amplitudes that are unit length by construction.
TwoQubitState unchecked_two_qubit(const TwoQubitState::Amplitudes& a);

struct SchmidtParams {
  double lambda0 = 0.5;
  double theta = 0.0;
};

/// sqrt(l0) cos(t/2)|00> - sqrt(l1) sin(t/2)|01> + sqrt(l0) sin(t/2)|10> + sqrt(l1) cos(t/2)|11>
TwoQubitState schmidt_state(const SchmidtParams& p);

/// Row-major 2x2 complex matrix.
struct Mat2 {
  std::array<Complex, 4> m{};

  Complex& operator()(int r, int c) { return m[2 * r + c]; }
  Complex operator()(int r, int c) const { return m[2 * r + c]; }

  static Mat2 identity() { return {{Complex(1), Complex(0), Complex(0), Complex(1)}}; }
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator*(Complex s) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 adjoint() const;
  Complex trace() const { return m[0] + m[3]; }
  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  /// Largest entry magnitude.
  double max_abs() const;
};

/// Element of SU(2).
class Unitary2 {
 public:
  Unitary2() : u_(Mat2::identity()) {}
  /// Validates U^dagger U = I and det U = 1 within `tol`; throws NotSpecialUnitary.
  static Unitary2 from_matrix(const Mat2& m, double tol = 1e-9);

  const Mat2& matrix() const { return u_; }
  Complex operator()(int r, int c) const { return u_(r, c); }
  Unitary2 operator*(const Unitary2& o) const { return Unitary2(u_ * o.u_); }
  Unitary2 operator-() const { return Unitary2(u_ * Complex(-1)); }
  Unitary2 adjoint() const { return Unitary2(u_.adjoint()); }
  Complex trace() const { return u_.trace(); }

 private:
  explicit Unitary2(const Mat2& m) : u_(m) {}
  Mat2 u_;

  friend Unitary2 evolution_operator(const Vec3& axis, double t);
};

/// exp(-i t n.sigma / 2). Throws DomainError if |axis| differs from 1 by more than 1e-9.
Unitary2 evolution_operator(const Vec3& axis, double t);

/// U (x) I for qubit 1, I (x) U for qubit 2.
TwoQubitState apply_local(const Unitary2& u, Qubit qubit, const TwoQubitState& s);

/// Hermitian, unit-trace, positive 2x2 matrix.
class DensityMatrix2 {
 public:
  /// Validates the invariants within `tol`; throws DomainError.
  static DensityMatrix2 from_matrix(const Mat2& m, double tol = 1e-12);
  static DensityMatrix2 from_pure(const PureQubitState& q);

  const Mat2& matrix() const { return rho_; }
  Complex operator()(int r, int c) const { return rho_(r, c); }
  /// Tr(rho^2).
  double purity_trace() const;

 private:
  explicit DensityMatrix2(const Mat2& m) : rho_(m) {}
  Mat2 rho_;

  friend DensityMatrix2 reduced_density(const TwoQubitState& s, Qubit keep);
};

/// Partial trace over the qubit not kept.
DensityMatrix2 reduced_density(const TwoQubitState& s, Qubit keep);

/// <a|b>, conjugate-linear in a.
Complex inner_product(const TwoQubitState& a, const TwoQubitState& b);

/// Maps an angle into (-pi, pi].
double wrap_angle(double phi);

}  // namespace phaselab
