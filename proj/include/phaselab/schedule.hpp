#pragma once

// Piecewise-constant-axis rotation schedules acting on one qubit of a pair.

#include <string>
#include <string_view>
#include <vector>

#include "phaselab/qstate.hpp"

namespace phaselab {

struct RotationSegment {
  Vec3 axis;        // unit length
  double duration;  // rotation angle in radians, > 0

  bool operator==(const RotationSegment&) const = default;
};

struct RotationSchedule {
  std::vector<RotationSegment> segments;
  Qubit evolved_qubit = Qubit::First;
  TwoQubitState initial = schmidt_state({});

  double total_duration() const;
  bool operator==(const RotationSchedule&) const = default;
};

/// A -> B -> F -> D -> A: four 2pi/3 turns about tetrahedral axes; returns to +I.
std::vector<RotationSegment> builtin_plus();

/// A -> B -> F -> E' -> A': same first half as plus, then repeats it; returns to -I.
std::vector<RotationSegment> builtin_minus();

/// Parses the line-oriented "phaselab-schedule v1" format.
/// Throws ParseError (with line number) or ValidationError.
RotationSchedule parse_schedule(std::string_view text);

/// Writes a schedule back in v1 format; built-ins are expanded to segments and
/// the state is written as explicit amplitudes with 17 significant digits.
std::string serialize_schedule(const RotationSchedule& schedule);

struct TimedUnitary {
  double time;
  Unitary2 unitary;
};

/// Exact cumulative evolution U(t) = U_k(t - t_k) U_{k-1}(d_{k-1}) ... U_0(d_0).
/// Boundary products are formed once from whole-segment operators, so
/// evaluation at any time carries no accumulated drift.
class Timeline {
 public:
  explicit Timeline(const std::vector<RotationSegment>& segments);

  double total_duration() const { return starts_.back(); }
  std::size_t segment_count() const { return segments_.size(); }
  double segment_start(std::size_t k) const { return starts_[k]; }
  const RotationSegment& segment(std::size_t k) const { return segments_[k]; }
  /// Cumulative unitary at the start of segment k (k == segment_count() gives the total).
  const Unitary2& boundary(std::size_t k) const { return boundaries_[k]; }

  /// Cumulative unitary at elapsed time `tau` into segment k.
  Unitary2 at(std::size_t k, double tau) const;
  /// Cumulative unitary at absolute time t, clamped to [0, total_duration()].
  Unitary2 at(double t) const;
  /// The segment active at time t (the later one at a shared boundary).
  std::size_t segment_index(double t) const;

  /// Uniform samples: `samples_per_segment` points per segment, both ends
  /// included, shared boundaries emitted once.
  std::vector<TimedUnitary> sample(int samples_per_segment) const;

 private:
  std::vector<RotationSegment> segments_;
  std::vector<double> starts_;
  std::vector<Unitary2> boundaries_;
};

/// List of (time, cumulative unitary) pairs; requires samples_per_segment >= 2.
std::vector<TimedUnitary> cumulative_unitaries(const RotationSchedule& schedule,
                                               int samples_per_segment);

/// The schedule's initial state with `u` applied to its evolved qubit.
TwoQubitState evolve(const RotationSchedule& schedule, const Unitary2& u);

}  // namespace phaselab
