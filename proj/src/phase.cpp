#include "phaselab/phase.hpp"

#include <algorithm>
#include <cmath>

namespace phaselab {

namespace {

constexpr double kCyclicTol = 1e-6;
constexpr double kRefineTol = 1e-12;

std::optional<double> phase_of(Complex z) {
  if (std::abs(z) <= kOrthogonalEps) return std::nullopt;
  return wrap_angle(std::arg(z));
}

// Sums of consecutive overlap phases along a path. In a smooth gauge each term
// is small, so `open` is the real-valued (unwrapped) phase accumulated along
// the path and `closing` the phase of the leg back to the start.
struct BargmannParts {
  double open = 0.0;
  double closing = 0.0;
};

Complex checked_overlap(const PureQubitState& a, const PureQubitState& b) {
  const Complex ov = inner_product(a, b);
  if (std::abs(ov) <= kOrthogonalEps) throw OrthogonalStep("consecutive states are orthogonal");
  return ov;
}

BargmannParts bargmann_parts(const std::vector<PureQubitState>& path) {
  BargmannParts p;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) p.open += std::arg(checked_overlap(path[k], path[k + 1]));
  p.closing = std::arg(checked_overlap(path.back(), path.front()));
  return p;
}

PureQubitState apply(const Unitary2& u, const PureQubitState& q) {
  return PureQubitState::normalized(u(0, 0) * q.a0() + u(0, 1) * q.a1(),
                                    u(1, 0) * q.a0() + u(1, 1) * q.a1());
}

BlochVector local_bloch(const TwoQubitState& s, Qubit q) { return bloch_of_density(reduced_density(s, q)); }

// Overlap <s0|psi(t)> and its time derivative on one schedule.
class OverlapTrack {
 public:
  OverlapTrack(const TwoQubitState& s0, const RotationSchedule& schedule)
      : s0_(s0), qubit_(schedule.evolved_qubit), timeline_(schedule.segments) {}

  const Timeline& timeline() const { return timeline_; }

  Complex value(const Unitary2& u) const { return inner_product(s0_, apply_local(u, qubit_, s0_)); }
  Complex value(double t) const { return value(timeline_.at(t)); }

  // d/dt |<s0|psi(t)>|^2 with dpsi/dt = -i (H_k (x) I) psi, H_k = n_k.sigma / 2.
  double slope_of_norm2(double t) const {
    const std::size_t k = timeline_.segment_index(t);
    const Vec3& n = timeline_.segment(k).axis;
    const auto psi = apply_local(timeline_.at(t), qubit_, s0_);
    Mat2 h;
    h(0, 0) = Complex(0.5 * n.z);
    h(0, 1) = Complex(0.5 * n.x, -0.5 * n.y);
    h(1, 0) = Complex(0.5 * n.x, 0.5 * n.y);
    h(1, 1) = Complex(-0.5 * n.z);
    // Raw amplitudes of H psi; not a state, so skip the normalized wrapper.
    TwoQubitState::Amplitudes hpsi{};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        hpsi[2 * i + j] = qubit_ == Qubit::First ? h(i, 0) * psi.amp(0, j) + h(i, 1) * psi.amp(1, j)
                                                 : h(j, 0) * psi.amp(i, 0) + h(j, 1) * psi.amp(i, 1);
      }
    }
    Complex d = 0.0;
    for (int k2 = 0; k2 < 4; ++k2) d += std::conj(s0_.amplitudes()[k2]) * hpsi[k2];
    d *= Complex(0.0, -1.0);
    return 2.0 * (std::conj(inner_product(s0_, psi)) * d).real();
  }

 private:
  TwoQubitState s0_;
  Qubit qubit_;
  Timeline timeline_;
};

}  // namespace

std::optional<double> total_phase(const TwoQubitState& initial, const TwoQubitState& current) {
  return phase_of(inner_product(initial, current));
}

std::optional<double> mixed_total_phase(const Unitary2& u, const DensityMatrix2& rho) {
  return phase_of((u.matrix() * rho.matrix()).trace());
}

Complex sp_formula(double t, const Vec3& axis, const BlochVector& b) {
  if (std::abs(axis.norm() - 1.0) > 1e-9) throw DomainError("rotation axis is not unit length");
  return {std::cos(t / 2.0), -axis.dot(b) * std::sin(t / 2.0)};
}

double dynamical_phase(const TwoQubitState& s0, const RotationSchedule& schedule) {
  const Timeline timeline(schedule.segments);
  double phi = 0.0;
  for (std::size_t k = 0; k < timeline.segment_count(); ++k) {
    const auto psi = apply_local(timeline.boundary(k), schedule.evolved_qubit, s0);
    const auto& seg = timeline.segment(k);
    phi -= 0.5 * seg.axis.dot(local_bloch(psi, schedule.evolved_qubit)) * seg.duration;
  }
  return phi;
}

double geometric_phase_pure(const std::vector<PureQubitState>& path, bool closed) {
  if (path.size() < 3) throw DomainError("geometric phase needs at least 3 path points");
  Complex prod = 1.0;
  const auto accumulate = [&](const PureQubitState& a, const PureQubitState& b) {
    prod *= checked_overlap(a, b);
    prod /= std::abs(prod);
  };
  for (std::size_t k = 0; k + 1 < path.size(); ++k) accumulate(path[k], path[k + 1]);
  if (closed) accumulate(path.back(), path.front());
  return wrap_angle(-std::arg(prod));
}

GeometricPhase geometric_phase_mixed(const TwoQubitState& s0, const RotationSchedule& schedule,
                                     int samples_per_segment) {
  const auto rho0 = reduced_density(s0, schedule.evolved_qubit);
  if (bloch_of_density(rho0).norm() <= 1e-9) return {0.0, true};
  const auto pur = purify(rho0);
  if (schedule.segments.empty()) return {0.0, false};

  const auto samples = Timeline(schedule.segments).sample(samples_per_segment);
  std::vector<PureQubitState> path_m, path_n;
  path_m.reserve(samples.size());
  path_n.reserve(samples.size());
  for (const auto& s : samples) {
    path_m.push_back(apply(s.unitary, pur.state_m));
    path_n.push_back(apply(s.unitary, pur.state_n));
  }
  const auto m = bargmann_parts(path_m);
  auto n = bargmann_parts(path_n);
  // For a cyclic run both eigenvectors return with the same phase; put the
  // two closing legs on the same branch before weighting.
  n.closing += kTwoPi * std::round((m.closing - n.closing) / kTwoPi);
  const double phi = -(pur.weight_m * (m.open + m.closing) + pur.weight_n * (n.open + n.closing));
  return {wrap_angle(phi), false};
}

Crossings topological_crossings(const TwoQubitState& s0, const RotationSchedule& schedule,
                                int samples_per_segment) {
  Crossings out;
  const OverlapTrack track(s0, schedule);
  const auto samples = track.timeline().sample(samples_per_segment);
  const std::size_t n = samples.size();
  if (n < 3) return out;

  std::vector<double> mag(n);
  double h_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::abs(track.value(samples[i].unitary));
    if (i > 0) h_max = std::max(h_max, samples[i].time - samples[i - 1].time);
  }
  // |d<s0|psi>/dt| <= ||H|| = 1/2, so a zero lies within reach of a sample
  // only if that sample's overlap is below h/4.
  const double candidate_limit = 0.5 * h_max + kCrossingEps;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(mag[i] <= mag[i - 1] && mag[i] <= mag[i + 1] && mag[i] <= candidate_limit)) continue;
    const double t_lo = samples[i - 1].time;
    const double t_hi = samples[i + 1].time;
    // Bisection on the sign of d|SP|^2/dt locates the minimum.
    double lo = t_lo, hi = t_hi;
    while (hi - lo > kRefineTol * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (track.slope_of_norm2(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double t_star = 0.5 * (lo + hi);
    const Complex at = track.value(t_star);
    if (std::abs(at) > kCrossingEps) continue;

    const double delta =
        0.25 * std::min(samples[i].time - t_lo, t_hi - samples[i].time);
    const Complex before = track.value(std::max(t_lo, t_star - delta));
    const Complex after = track.value(std::min(t_hi, t_star + delta));
    const double jump = std::abs(wrap_angle(std::arg(after) - std::arg(before)));
    if (jump <= kPi / 2.0) continue;  // tangential touch
    if (!out.times.empty() && std::abs(t_star - out.times.back()) < 1e-9) continue;
    out.times.push_back(t_star);
  }
  out.count = static_cast<int>(out.times.size());
  out.parity = out.count % 2 == 0 ? Parity::Even : Parity::Odd;
  return out;
}

PhaseBreakdown phase_breakdown(const TwoQubitState& s0, const RotationSchedule& schedule,
                               int samples_per_segment) {
  const Timeline timeline(schedule.segments);
  const Complex v =
      inner_product(s0, apply_local(timeline.boundary(timeline.segment_count()), schedule.evolved_qubit, s0));
  if (std::abs(std::abs(v) - 1.0) > kCyclicTol)
    throw NotCyclic("final state is not the initial ray (|overlap| = " + std::to_string(std::abs(v)) + ")");

  PhaseBreakdown b;
  b.total = wrap_angle(std::arg(v));
  const double dyn = dynamical_phase(s0, schedule);
  b.dynamical = wrap_angle(dyn);
  const auto geo = geometric_phase_mixed(s0, schedule, samples_per_segment);
  b.geometric = geo.value;
  b.degenerate = geo.degenerate;
  const auto cr = topological_crossings(s0, schedule, samples_per_segment);
  b.crossings = cr.count;
  b.parity = cr.parity;
  const double topological = geo.degenerate && cr.parity == Parity::Odd ? kPi : 0.0;
  b.closure_residual = angular_distance(b.total - dyn - geo.value - topological, 0.0);
  return b;
}

ClosedForms fixed_axis_closed_forms(double lambda0, double theta) {
  if (!(lambda0 >= 0.0 && lambda0 <= 1.0)) throw DomainError("lambda0 outside [0,1]");
  const double c = std::cos(theta);
  return {kPi * (2.0 * lambda0 - 1.0) * c, kPi + kPi * (1.0 - 2.0 * lambda0) * c, kPi};
}

ClosedForms in_engine_convention(const ClosedForms& f) { return {-f.phi_d, -f.phi_g, -f.phi_t}; }

double readout_probability(const TwoQubitState& s0, const RotationSchedule& schedule) {
  const Timeline timeline(schedule.segments);
  const Complex v =
      inner_product(s0, apply_local(timeline.boundary(timeline.segment_count()), schedule.evolved_qubit, s0));
  return std::clamp(0.5 * (1.0 - v.real()), 0.0, 1.0);
}

std::vector<PhaseSample> phase_series(const RotationSchedule& schedule, int samples_per_segment) {
  const auto& s0 = schedule.initial;
  const Qubit q = schedule.evolved_qubit;
  const Timeline timeline(schedule.segments);
  const auto samples = timeline.sample(samples_per_segment);
  const auto crossings = topological_crossings(s0, schedule, samples_per_segment);

  // Dynamical phase at each segment start; <H_k> is constant on segment k.
  std::vector<double> dyn_start(timeline.segment_count() + 1, 0.0);
  std::vector<double> rate(timeline.segment_count(), 0.0);
  for (std::size_t k = 0; k < timeline.segment_count(); ++k) {
    const auto psi = apply_local(timeline.boundary(k), q, s0);
    rate[k] = -0.5 * timeline.segment(k).axis.dot(local_bloch(psi, q));
    dyn_start[k + 1] = dyn_start[k] + rate[k] * timeline.segment(k).duration;
  }

  std::vector<PhaseSample> out;
  out.reserve(samples.size());
  std::optional<double> last_principal;
  double unwrapped = 0.0;
  bool crossed_since_defined = false;
  std::size_t next_crossing = 0;
  double prev_time = -1.0;

  for (const auto& [t, u] : samples) {
    PhaseSample s;
    s.time = t;
    const auto psi = apply_local(u, q, s0);
    s.sp = inner_product(s0, psi);
    s.total_principal = phase_of(s.sp);
    s.bloch = local_bloch(psi, q);
    s.so3 = su2_to_so3(u);
    if (timeline.segment_count() > 0) {
      const std::size_t k = timeline.segment_index(t);
      s.dyn = dyn_start[k] + rate[k] * (t - timeline.segment_start(k));
    }
    while (next_crossing < crossings.times.size() && crossings.times[next_crossing] <= t) {
      if (crossings.times[next_crossing] > prev_time) s.crossing = true;
      ++next_crossing;
    }
    crossed_since_defined = crossed_since_defined || s.crossing;

    if (s.total_principal) {
      if (!last_principal) {
        unwrapped = *s.total_principal;
      } else {
        double delta = wrap_angle(*s.total_principal - *last_principal);
        if (crossed_since_defined && delta < 0.0) delta += kTwoPi;
        unwrapped += delta;
      }
      s.total_unwrapped = unwrapped;
      last_principal = s.total_principal;
      crossed_since_defined = false;
    }
    prev_time = t;
    out.push_back(s);
  }
  return out;
}

double angular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace phaselab
