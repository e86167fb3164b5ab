#pragma once

// Total (Pancharatnam), dynamical, geometric and topological phases of a pure
// two-qubit state driven by local rotations on one qubit.
//
// Sign convention: the dynamical phase is -integral <H> dt with H = n.sigma/2,
// the generator of evolution_operator. Geometric phases follow from the
// Bargmann invariant, -arg <psi_0|psi_1><psi_1|psi_2>...<psi_{N-1}|psi_0>.
// Identities between the three are statements modulo 2pi.

#include <optional>
#include <vector>

#include "phaselab/hopf.hpp"
#include "phaselab/schedule.hpp"

namespace phaselab {

/// Overlaps at or below this magnitude leave the phase undefined.
inline constexpr double kOrthogonalEps = 1e-9;
/// Minimum |<psi_0|psi(t)>| below which a dip is a candidate orthogonality crossing.
inline constexpr double kCrossingEps = 1e-6;
inline constexpr int kDefaultSamplesPerSegment = 2000;

/// arg <initial|current> in (-pi, pi]; nullopt at orthogonality.
std::optional<double> total_phase(const TwoQubitState& initial, const TwoQubitState& current);

/// arg Tr(U rho) in (-pi, pi]; nullopt when |Tr(U rho)| <= kOrthogonalEps.
std::optional<double> mixed_total_phase(const Unitary2& u, const DensityMatrix2& rho);

/// Closed-form overlap cos(t/2) - i (n.b) sin(t/2) for one segment starting at
/// the reference state, b the Bloch vector of the evolved qubit.
Complex sp_formula(double t, const Vec3& axis, const BlochVector& b);

/// -sum_k (1/2) n_k . b(t_k) d_k; exact, since <H_k> is constant on segment k.
/// Not wrapped.
double dynamical_phase(const TwoQubitState& s0, const RotationSchedule& schedule);

/// Discrete Bargmann phase of a path of pure states, in (-pi, pi]. With
/// `closed` the leg from the last point back to the first is included.
/// Requires >= 3 points; throws OrthogonalStep if a consecutive overlap vanishes.
double geometric_phase_pure(const std::vector<PureQubitState>& path, bool closed);

struct GeometricPhase {
  double value = 0.0;       // (-pi, pi]
  bool degenerate = false;  // maximally mixed reduced state; value pinned to 0
};

/// Weighted Bargmann phase c_m phi(m(t)) + c_n phi(n(t)) of the purified
/// reduced state of the evolved qubit, both components transported by the
/// schedule's cumulative unitary.
GeometricPhase geometric_phase_mixed(const TwoQubitState& s0, const RotationSchedule& schedule,
                                     int samples_per_segment = kDefaultSamplesPerSegment);

enum class Parity { Even, Odd };

struct Crossings {
  int count = 0;
  Parity parity = Parity::Even;
  std::vector<double> times;
};

/// Transversal zeros of <psi(0)|psi(t)>: dips of |SP| below kCrossingEps across
/// which the phase jumps by about pi. A touch without the jump is not counted.
Crossings topological_crossings(const TwoQubitState& s0, const RotationSchedule& schedule,
                                int samples_per_segment = kDefaultSamplesPerSegment);

struct PhaseBreakdown {
  double total = 0.0;
  double dynamical = 0.0;
  double geometric = 0.0;
  int crossings = 0;
  Parity parity = Parity::Even;
  bool degenerate = false;
  /// Distance from 0 (mod 2pi) of total - dynamical - geometric, less pi per
  /// crossing when the geometric phase is degenerate.
  double closure_residual = 0.0;
};

/// Throws NotCyclic unless |<s0|U_total|s0>| is 1 within 1e-6.
PhaseBreakdown phase_breakdown(const TwoQubitState& s0, const RotationSchedule& schedule,
                               int samples_per_segment = kDefaultSamplesPerSegment);

struct ClosedForms {
  double phi_d;
  double phi_g;
  double phi_t;
};

/// Fixed-axis 2pi loop of a Schmidt state, in the convention where the
/// dynamical phase is +integral <H> dt:
/// phi_d = pi(2 l0 - 1) cos(theta), phi_g = pi + pi(1 - 2 l0) cos(theta), phi_t = pi.
/// The values computed here are their negatives modulo 2pi; see in_engine_convention.
ClosedForms fixed_axis_closed_forms(double lambda0, double theta);

/// Negates every phase, mapping that convention onto this library's.
ClosedForms in_engine_convention(const ClosedForms& f);

/// Click probability (1 - Re <s0|U_total|s0>)/2 of the ancilla interferometer.
double readout_probability(const TwoQubitState& s0, const RotationSchedule& schedule);

struct PhaseSample {
  double time = 0.0;
  Complex sp;
  std::optional<double> total_principal;
  std::optional<double> total_unwrapped;
  double dyn = 0.0;
  BlochVector bloch;
  SO3Point so3;
  bool crossing = false;  // a crossing occurred since the previous sample
};

/// Per-sample phase record along the schedule (from its own initial state).
/// The unwrapped total phase follows minimal jumps, except that each detected
/// crossing contributes a positive jump in [0, 2pi).
std::vector<PhaseSample> phase_series(const RotationSchedule& schedule,
                                      int samples_per_segment = kDefaultSamplesPerSegment);

/// Smallest |a - b| over representatives modulo 2pi.
double angular_distance(double a, double b);

}  // namespace phaselab
