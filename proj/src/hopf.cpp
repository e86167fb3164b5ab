#include "phaselab/hopf.hpp"

#include <algorithm>
#include <cmath>

namespace phaselab {

namespace {

// |cos(t/2)| at or below this is treated as sitting on the border.
constexpr double kBorderZero = 1e-12;
constexpr double kCrossingTimeTol = 1e-10;

int sign_of(double v) {
  if (v > kBorderZero) return 1;
  if (v < -kBorderZero) return -1;
  return 0;
}

// Unit spinor whose Bloch vector is the unit direction d.
PureQubitState spinor_along(const Vec3& d) {
  const Complex up(1.0 + d.z, 0.0);
  const Complex up_lo(d.x, d.y);
  const Complex dn(d.x, -d.y);
  const Complex dn_lo(1.0 - d.z, 0.0);
  // Both columns are proportional; take the better conditioned one.
  if (std::norm(up) + std::norm(up_lo) >= std::norm(dn) + std::norm(dn_lo))
    return PureQubitState::normalized(up, up_lo);
  return PureQubitState::normalized(dn, dn_lo);
}

PureQubitState fix_gauge(const PureQubitState& q) {
  const Complex big = std::abs(q.a0()) >= std::abs(q.a1()) ? q.a0() : q.a1();
  const Complex phase = std::conj(big) / std::abs(big);
  return PureQubitState::normalized(q.a0() * phase, q.a1() * phase);
}

}  // namespace

BlochVector bloch_of_pure(const PureQubitState& q) {
  const Complex c = std::conj(q.a0()) * q.a1();
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(q.a0()) - std::norm(q.a1())};
}

BlochVector bloch_of_density(const DensityMatrix2& rho) {
  return {2.0 * rho(0, 1).real(), 2.0 * rho(1, 0).imag(), rho(0, 0).real() - rho(1, 1).real()};
}

double HopfCoordinates::ball_radius() const {
  return std::sqrt(std::max(0.0, 1.0 - c_r * c_r - c_i * c_i));
}

HopfCoordinates hopf_coords(const TwoQubitState& s) {
  const Complex a = s.amp(0, 0), b = s.amp(0, 1), g = s.amp(1, 0), d = s.amp(1, 1);
  const Complex xy = std::conj(a) * g + std::conj(b) * d;
  const Complex c = a * d - b * g;
  HopfCoordinates h;
  h.x = 2.0 * xy.real();
  h.y = 2.0 * xy.imag();
  h.z = std::norm(a) + std::norm(b) - std::norm(g) - std::norm(d);
  h.c_r = 2.0 * c.real();
  h.c_i = 2.0 * c.imag();
  return h;
}

double concurrence(const TwoQubitState& s) {
  return std::min(1.0, 2.0 * std::abs(s.amp(0, 0) * s.amp(1, 1) - s.amp(0, 1) * s.amp(1, 0)));
}

double ball_radius(const TwoQubitState& s) {
  const double c = concurrence(s);
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

double purity_radius(const DensityMatrix2& rho) {
  return std::sqrt(std::clamp(2.0 * rho.purity_trace() - 1.0, 0.0, 1.0));
}

Purification purify(const DensityMatrix2& rho) {
  const BlochVector b = bloch_of_density(rho);
  const double r = b.norm();  // eigenvalue gap
  if (r <= 1e-9) throw DegenerateSpectrum("density matrix is maximally mixed");
  const Vec3 d = b * (1.0 / r);
  Purification p;
  p.weight_m = 0.5 * (1.0 + std::min(r, 1.0));
  p.weight_n = 1.0 - p.weight_m;
  p.state_m = fix_gauge(spinor_along(d));
  p.state_n = fix_gauge(spinor_along(-d));
  return p;
}

SO3Point::SO3Point(const Vec3& axis, double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  Vec3 n = axis;
  if (a > kPi) {
    a = kTwoPi - a;
    n = -n;
  }
  const double len = n.norm();
  if (a == 0.0 || len == 0.0) {
    axis_ = {0.0, 0.0, 1.0};
    angle_ = 0.0;
    return;
  }
  n = n * (1.0 / len);
  if (a == kPi) {
    // Antipodal pair: pick the representative whose first nonzero component is positive.
    const double lead = n.x != 0.0 ? n.x : (n.y != 0.0 ? n.y : n.z);
    if (lead < 0.0) n = -n;
  }
  axis_ = n;
  angle_ = a;
}

double SO3Point::distance(const SO3Point& o) const {
  const double c1 = std::cos(angle_ / 2.0), s1 = std::sin(angle_ / 2.0);
  const double c2 = std::cos(o.angle_ / 2.0), s2 = std::sin(o.angle_ / 2.0);
  const double dot = c1 * c2 + s1 * s2 * axis_.dot(o.axis_);
  return std::max(0.0, 1.0 - std::abs(dot));
}

bool SO3Point::operator==(const SO3Point& o) const {
  return angle_ == o.angle_ && axis_ == o.axis_;
}

SU2Projection su2_projection(const Unitary2& u) {
  if (std::abs(u.matrix().det() - Complex(1.0)) > 1e-9)
    throw NotSpecialUnitary("determinant is not 1");
  double c = 0.5 * u.trace().real();
  Vec3 v{-0.5 * (u(0, 1).imag() + u(1, 0).imag()), 0.5 * (u(1, 0).real() - u(0, 1).real()),
         0.5 * (u(1, 1).imag() - u(0, 0).imag())};
  const double cos_half = c;
  // q and -q are the same rotation; fold onto the hemisphere c >= 0.
  if (c < 0.0) {
    c = -c;
    v = -v;
  }
  const double s = v.norm();
  const double angle = 2.0 * std::atan2(s, c);
  SO3Point point = s > 0.0 ? SO3Point(v * (1.0 / s), angle) : SO3Point();
  return {point, cos_half};
}

SO3Point su2_to_so3(const Unitary2& u) { return su2_projection(u).point; }

SO3Path so3_path(const RotationSchedule& schedule, int samples_per_segment) {
  return so3_path(Timeline(schedule.segments), samples_per_segment);
}

SO3Path so3_path(const Timeline& timeline, int samples_per_segment) {
  SO3Path path;
  const auto samples = timeline.sample(samples_per_segment);
  path.samples.reserve(samples.size());
  for (const auto& [t, u] : samples) {
    const auto proj = su2_projection(u);
    path.samples.push_back({t, proj.point, proj.cos_half_angle});
  }

  const auto cos_half_at = [&](double t) { return 0.5 * timeline.at(t).trace().real(); };

  // Transversal sign changes; samples on the border are skipped so that a
  // touch (+, 0, +) does not count while a pass (+, 0, -) does.
  int last_sign = 0;
  double last_time = 0.0;
  for (const auto& s : path.samples) {
    const int sg = sign_of(s.cos_half_angle);
    if (sg == 0) continue;
    if (last_sign != 0 && sg != last_sign) {
      double lo = last_time, hi = s.time;
      while (hi - lo > kCrossingTimeTol) {
        const double mid = 0.5 * (lo + hi);
        if (sign_of(cos_half_at(mid)) == last_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      path.crossings.push_back(0.5 * (lo + hi));
    }
    last_sign = sg;
    last_time = s.time;
  }
  return path;
}

}  // namespace phaselab
