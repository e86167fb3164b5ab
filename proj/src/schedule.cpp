#include "phaselab/schedule.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace phaselab {

namespace {

constexpr double kInvSqrt3 = 0.57735026918962576451;
constexpr double kThirdTurn = kTwoPi / 3.0;

RotationSegment tetra(double sx, double sy, double sz) {
  return {{sx * kInvSqrt3, sy * kInvSqrt3, sz * kInvSqrt3}, kThirdTurn};
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_number(std::string_view tok, std::size_t line) {
  // from_chars rejects a leading '+', which is legal decimal notation.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || tok.empty())
    throw ParseError(line, "malformed number '" + std::string(tok) + "'");
  return v;
}

void expect_args(const std::vector<std::string_view>& toks, std::size_t n, std::size_t line) {
  if (toks.size() != n + 1)
    throw ParseError(line, "'" + std::string(toks[0]) + "' expects " + std::to_string(n) +
                               " argument(s), got " + std::to_string(toks.size() - 1));
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Unit vectors keep their bits so that serialized schedules reparse identically.
Vec3 normalize_axis(Vec3 a, std::size_t line) {
  const double n = a.norm();
  if (!std::isfinite(n) || n <= 1e-9)
    throw ValidationError("line " + std::to_string(line) + ": rotation axis has zero length");
  if (std::abs(n - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon()) return a;
  return a * (1.0 / n);
}

}  // namespace

double RotationSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

std::vector<RotationSegment> builtin_plus() {
  return {tetra(-1, -1, -1), tetra(1, -1, -1), tetra(-1, -1, 1), tetra(-1, 1, 1)};
}

std::vector<RotationSegment> builtin_minus() {
  return {tetra(-1, -1, -1), tetra(1, -1, -1), tetra(-1, -1, -1), tetra(1, -1, -1)};
}

RotationSchedule parse_schedule(std::string_view text) {
  RotationSchedule out;
  bool have_header = false;
  bool have_state = false;
  bool have_qubit = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = tokenize(line);
    if (toks.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "phaselab-schedule")
        throw ParseError(line_no, "expected header 'phaselab-schedule v1'");
      if (toks[1] != "v1")
        throw ParseError(line_no, "unsupported schedule version '" + std::string(toks[1]) + "'");
      have_header = true;
      continue;
    }

    const auto& kw = toks[0];
    if (kw == "state") {
      if (have_state) throw ParseError(line_no, "duplicate state declaration");
      if (toks.size() < 2) throw ParseError(line_no, "state needs a kind (schmidt|amplitudes)");
      if (toks[1] == "schmidt") {
        if (toks.size() != 4) throw ParseError(line_no, "'state schmidt' expects lambda0 theta");
        const double l0 = parse_number(toks[2], line_no);
        const double th = parse_number(toks[3], line_no);
        if (!(l0 >= 0.0 && l0 <= 1.0))
          throw ValidationError("line " + std::to_string(line_no) + ": lambda0 outside [0,1]");
        if (!std::isfinite(th))
          throw ValidationError("line " + std::to_string(line_no) + ": theta not finite");
        out.initial = schmidt_state({l0, th});
      } else if (toks[1] == "amplitudes") {
        if (toks.size() != 10)
          throw ParseError(line_no, "'state amplitudes' expects 8 numbers (re im x4)");
        std::array<Complex, 4> a;
        for (int k = 0; k < 4; ++k)
          a[k] = Complex(parse_number(toks[2 + 2 * k], line_no), parse_number(toks[3 + 2 * k], line_no));
        try {
          out.initial = make_two_qubit(a[0], a[1], a[2], a[3]);
        } catch (const Error& e) {
          throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
      } else {
        throw ParseError(line_no, "unknown state kind '" + std::string(toks[1]) + "'");
      }
      have_state = true;
    } else if (kw == "evolve-qubit") {
      expect_args(toks, 1, line_no);
      if (have_qubit) throw ParseError(line_no, "duplicate evolve-qubit declaration");
      if (toks[1] == "1") {
        out.evolved_qubit = Qubit::First;
      } else if (toks[1] == "2") {
        out.evolved_qubit = Qubit::Second;
      } else {
        throw ParseError(line_no, "evolve-qubit must be 1 or 2");
      }
      have_qubit = true;
    } else if (kw == "segment") {
      expect_args(toks, 4, line_no);
      Vec3 axis{parse_number(toks[1], line_no), parse_number(toks[2], line_no),
                parse_number(toks[3], line_no)};
      const double d = parse_number(toks[4], line_no);
      if (!(d > 0.0) || !std::isfinite(d))
        throw ValidationError("line " + std::to_string(line_no) + ": duration must be > 0");
      out.segments.push_back({normalize_axis(axis, line_no), d});
    } else if (kw == "builtin") {
      expect_args(toks, 1, line_no);
      std::vector<RotationSegment> b;
      if (toks[1] == "plus") {
        b = builtin_plus();
      } else if (toks[1] == "minus") {
        b = builtin_minus();
      } else {
        throw ParseError(line_no, "unknown builtin '" + std::string(toks[1]) + "'");
      }
      out.segments.insert(out.segments.end(), b.begin(), b.end());
    } else {
      throw ParseError(line_no, "unknown directive '" + std::string(kw) + "'");
    }
    if (eol == text.size()) break;
  }

  if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'phaselab-schedule v1'");
  if (!have_state) throw ValidationError("missing state declaration");
  return out;
}

std::string serialize_schedule(const RotationSchedule& schedule) {
  std::ostringstream os;
  os << "phaselab-schedule v1\n";
  os << "state amplitudes";
  for (const auto& a : schedule.initial.amplitudes()) os << ' ' << fmt17(a.real()) << ' ' << fmt17(a.imag());
  os << '\n';
  os << "evolve-qubit " << (schedule.evolved_qubit == Qubit::First ? 1 : 2) << '\n';
  for (const auto& s : schedule.segments) {
    os << "segment " << fmt17(s.axis.x) << ' ' << fmt17(s.axis.y) << ' ' << fmt17(s.axis.z) << ' '
       << fmt17(s.duration) << '\n';
  }
  return os.str();
}

Timeline::Timeline(const std::vector<RotationSegment>& segments) : segments_(segments) {
  starts_.reserve(segments_.size() + 1);
  boundaries_.reserve(segments_.size() + 1);
  starts_.push_back(0.0);
  boundaries_.emplace_back();
  for (const auto& s : segments_) {
    starts_.push_back(starts_.back() + s.duration);
    boundaries_.push_back(evolution_operator(s.axis, s.duration) * boundaries_.back());
  }
}

Unitary2 Timeline::at(std::size_t k, double tau) const {
  if (k >= segments_.size()) return boundaries_.back();
  return evolution_operator(segments_[k].axis, tau) * boundaries_[k];
}

std::size_t Timeline::segment_index(double t) const {
  if (segments_.empty()) return 0;
  const auto it = std::upper_bound(starts_.begin(), starts_.end() - 1, t);
  const auto k = static_cast<std::size_t>(std::distance(starts_.begin(), it));
  return std::min(k == 0 ? 0 : k - 1, segments_.size() - 1);
}

Unitary2 Timeline::at(double t) const {
  if (segments_.empty() || t <= 0.0) return boundaries_.front();
  if (t >= total_duration()) return boundaries_.back();
  const std::size_t k = segment_index(t);
  return at(k, t - starts_[k]);
}

std::vector<TimedUnitary> Timeline::sample(int samples_per_segment) const {
  if (samples_per_segment < 2) throw DomainError("samples_per_segment must be >= 2");
  std::vector<TimedUnitary> out;
  out.reserve(1 + segments_.size() * static_cast<std::size_t>(samples_per_segment - 1));
  out.push_back({0.0, boundaries_.front()});
  const double last = samples_per_segment - 1;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const double d = segments_[k].duration;
    for (int j = 1; j < samples_per_segment; ++j) {
      if (j == samples_per_segment - 1) {
        out.push_back({starts_[k + 1], boundaries_[k + 1]});
      } else {
        const double tau = d * (j / last);
        out.push_back({starts_[k] + tau, at(k, tau)});
      }
    }
  }
  return out;
}

std::vector<TimedUnitary> cumulative_unitaries(const RotationSchedule& schedule,
                                               int samples_per_segment) {
  return Timeline(schedule.segments).sample(samples_per_segment);
}

TwoQubitState evolve(const RotationSchedule& schedule, const Unitary2& u) {
  return apply_local(u, schedule.evolved_qubit, schedule.initial);
}

}  // namespace phaselab
