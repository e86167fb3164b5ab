#pragma once

// Bloch-ball and Hopf-base coordinates, entanglement measures, the SU(2) -> SO(3)
// projection and purification of single-qubit density matrices.

#include <vector>

#include "phaselab/qstate.hpp"
#include "phaselab/schedule.hpp"

namespace phaselab {

/// Expectation values (<sigma_x>, <sigma_y>, <sigma_z>).
using BlochVector = Vec3;

BlochVector bloch_of_pure(const PureQubitState& q);

/// <sigma> of rho: x = 2 Re rho_01, y = 2 Im rho_10, z = rho_00 - rho_11.
BlochVector bloch_of_density(const DensityMatrix2& rho);

/// Base point of S7 -> S4: reduced Bloch part of qubit 1 plus the concurrence pair.
struct HopfCoordinates {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double c_r = 0.0;
  double c_i = 0.0;

  double concurrence() const { return std::hypot(c_r, c_i); }
  double ball_radius() const;
};

HopfCoordinates hopf_coords(const TwoQubitState& s);

/// 2 |a00 a11 - a01 a10|, in [0,1].
double concurrence(const TwoQubitState& s);

/// sqrt(1 - C^2): radius of the reduced Bloch ball.
double ball_radius(const TwoQubitState& s);

/// sqrt(2 Tr rho^2 - 1), clamped to [0,1].
double purity_radius(const DensityMatrix2& rho);

struct Purification {
  double weight_m = 1.0;
  PureQubitState state_m = PureQubitState::normalized(1.0, 0.0);
  double weight_n = 0.0;
  PureQubitState state_n = PureQubitState::normalized(0.0, 1.0);
};

/// Spectral decomposition rho = c_m |m><m| + c_n |n><n| with c_m >= c_n. Each
/// eigenvector has its largest-magnitude component made real positive.
/// Throws DegenerateSpectrum when the eigenvalue gap is at most 1e-9.
Purification purify(const DensityMatrix2& rho);

/// A rotation as a point of the radius-pi ball with antipodes identified.
class SO3Point {
 public:
  SO3Point() = default;
  /// Canonicalizes: angle folded into [0, pi] and axis (0,0,1) at angle 0.
  SO3Point(const Vec3& axis, double angle);

  const Vec3& axis() const { return axis_; }
  double angle() const { return angle_; }
  /// axis * angle.
  Vec3 displacement() const { return axis_ * angle_; }

  /// Rotation distance 1 - |<q1, q2>| of the unit quaternions; zero iff same rotation.
  double distance(const SO3Point& o) const;
  bool approx_equal(const SO3Point& o, double tol = 1e-9) const { return distance(o) <= tol; }
  /// Exact comparison after canonicalization; (n, pi) == (-n, pi).
  bool operator==(const SO3Point& o) const;

 private:
  Vec3 axis_{0.0, 0.0, 1.0};
  double angle_ = 0.0;
};

struct SU2Projection {
  SO3Point point;
  double cos_half_angle;  // Re(Tr U)/2, signed, before folding
};

/// Decomposes U = cos(t/2) I - i sin(t/2) n.sigma. Throws NotSpecialUnitary if
/// det U differs from 1 by more than 1e-9.
SU2Projection su2_projection(const Unitary2& u);
SO3Point su2_to_so3(const Unitary2& u);

struct SO3Sample {
  double time;
  SO3Point point;
  double cos_half_angle;
};

struct SO3Path {
  std::vector<SO3Sample> samples;
  /// Times where cos_half_angle changes sign, refined to 1e-10.
  std::vector<double> crossings;
};

/// Cumulative unitary of the schedule projected onto SO(3); requires
/// samples_per_segment >= 2. A tangential touch of the border is not a crossing.
SO3Path so3_path(const RotationSchedule& schedule, int samples_per_segment);
SO3Path so3_path(const Timeline& timeline, int samples_per_segment);

}  // namespace phaselab
