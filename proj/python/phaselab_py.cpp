#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>

#include "phaselab/phase.hpp"

namespace py = pybind11;
using namespace phaselab;

namespace {

Qubit to_qubit(int q) {
  if (q == 1) return Qubit::First;
  if (q == 2) return Qubit::Second;
  throw py::value_error("qubit must be 1 or 2");
}

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::array<double, 3> from_vec(const Vec3& v) { return {v.x, v.y, v.z}; }

std::array<std::array<Complex, 2>, 2> rows(const Mat2& m) {
  return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

}  // namespace

PYBIND11_MODULE(phaselab, m) {
  m.doc() = "Phases of pure two-qubit states under local rotation schedules";

  auto base = py::register_exception<Error>(m, "PhaselabError", PyExc_ValueError);
  py::register_exception<ZeroNorm>(m, "ZeroNorm", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<DegenerateSpectrum>(m, "DegenerateSpectrum", base.ptr());
  py::register_exception<NotSpecialUnitary>(m, "NotSpecialUnitary", base.ptr());
  py::register_exception<OrthogonalStep>(m, "OrthogonalStep", base.ptr());
  py::register_exception<NotCyclic>(m, "NotCyclic", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  py::class_<TwoQubitState>(m, "TwoQubitState")
      .def_property_readonly("amplitudes",
                             [](const TwoQubitState& s) {
                               const auto& a = s.amplitudes();
                               return std::vector<Complex>(a.begin(), a.end());
                             })
      .def("__eq__", [](const TwoQubitState& a, const TwoQubitState& b) { return a == b; })
      .def("__repr__", [](const TwoQubitState& s) {
        return "TwoQubitState(" + py::repr(py::cast(std::vector<Complex>(s.amplitudes().begin(),
                                                                      s.amplitudes().end())))
                                      .cast<std::string>() +
               ")";
      });

  m.def(
      "make_two_qubit",
      [](const std::array<Complex, 4>& a) { return make_two_qubit(a[0], a[1], a[2], a[3]); },
      py::arg("amplitudes"), "State from four amplitudes (a00, a01, a10, a11), normalized.");
  m.def(
      "schmidt_state", [](double l0, double theta) { return schmidt_state({l0, theta}); },
      py::arg("lambda0"), py::arg("theta"));
  m.def("inner_product", py::overload_cast<const TwoQubitState&, const TwoQubitState&>(&inner_product));

  py::class_<Unitary2>(m, "Unitary2")
      .def_property_readonly("matrix", [](const Unitary2& u) { return rows(u.matrix()); })
      .def("__matmul__", [](const Unitary2& a, const Unitary2& b) { return a * b; });
  m.def(
      "evolution_operator",
      [](const std::array<double, 3>& axis, double t) { return evolution_operator(to_vec(axis), t); },
      py::arg("axis"), py::arg("t"));
  m.def(
      "apply_local",
      [](const Unitary2& u, int qubit, const TwoQubitState& s) { return apply_local(u, to_qubit(qubit), s); },
      py::arg("u"), py::arg("qubit"), py::arg("state"));
  m.def(
      "reduced_density",
      [](const TwoQubitState& s, int keep) { return rows(reduced_density(s, to_qubit(keep)).matrix()); },
      py::arg("state"), py::arg("keep"));
  m.def(
      "reduced_bloch",
      [](const TwoQubitState& s, int keep) { return from_vec(bloch_of_density(reduced_density(s, to_qubit(keep)))); },
      py::arg("state"), py::arg("keep"));

  py::class_<HopfCoordinates>(m, "HopfCoordinates")
      .def_readonly("x", &HopfCoordinates::x)
      .def_readonly("y", &HopfCoordinates::y)
      .def_readonly("z", &HopfCoordinates::z)
      .def_readonly("c_r", &HopfCoordinates::c_r)
      .def_readonly("c_i", &HopfCoordinates::c_i)
      .def_property_readonly("concurrence", &HopfCoordinates::concurrence)
      .def_property_readonly("ball_radius", &HopfCoordinates::ball_radius);
  m.def("hopf_coords", &hopf_coords);
  m.def("concurrence", &concurrence);
  m.def("ball_radius", py::overload_cast<const TwoQubitState&>(&ball_radius));
  m.def(
      "su2_to_so3",
      [](const Unitary2& u) {
        const auto p = su2_to_so3(u);
        return py::make_tuple(from_vec(p.axis()), p.angle());
      },
      "(axis, angle) with angle in [0, pi].");

  py::class_<RotationSegment>(m, "RotationSegment")
      .def(py::init([](const std::array<double, 3>& axis, double d) { return RotationSegment{to_vec(axis), d}; }),
           py::arg("axis"), py::arg("duration"))
      .def_property_readonly("axis", [](const RotationSegment& s) { return from_vec(s.axis); })
      .def_readonly("duration", &RotationSegment::duration);
  m.def("builtin_plus", &builtin_plus);
  m.def("builtin_minus", &builtin_minus);

  py::class_<RotationSchedule>(m, "RotationSchedule")
      .def(py::init([](const std::vector<RotationSegment>& segs, int qubit, const TwoQubitState& initial) {
             return RotationSchedule{segs, to_qubit(qubit), initial};
           }),
           py::arg("segments"), py::arg("evolved_qubit"), py::arg("initial"))
      .def_readonly("segments", &RotationSchedule::segments)
      .def_property_readonly("evolved_qubit",
                             [](const RotationSchedule& s) { return s.evolved_qubit == Qubit::First ? 1 : 2; })
      .def_readonly("initial", &RotationSchedule::initial)
      .def_property_readonly("total_duration", &RotationSchedule::total_duration);
  m.def("parse_schedule", [](const std::string& text) { return parse_schedule(text); }, py::arg("text"));
  m.def("serialize_schedule", &serialize_schedule);

  m.def("total_phase", &total_phase, "arg <initial|current>, or None at orthogonality.");
  m.def(
      "dynamical_phase", [](const RotationSchedule& s) { return dynamical_phase(s.initial, s); },
      py::arg("schedule"));
  m.def(
      "geometric_phase_mixed",
      [](const RotationSchedule& s, int steps) {
        const auto g = geometric_phase_mixed(s.initial, s, steps);
        return py::make_tuple(g.value, g.degenerate);
      },
      py::arg("schedule"), py::arg("steps") = kDefaultSamplesPerSegment, "(value, degenerate)");
  m.def(
      "topological_crossings",
      [](const RotationSchedule& s, int steps) { return topological_crossings(s.initial, s, steps).times; },
      py::arg("schedule"), py::arg("steps") = kDefaultSamplesPerSegment, "Crossing times.");
  m.def(
      "readout_probability", [](const RotationSchedule& s) { return readout_probability(s.initial, s); },
      py::arg("schedule"));
  m.def(
      "fixed_axis_closed_forms",
      [](double l0, double theta) {
        const auto f = fixed_axis_closed_forms(l0, theta);
        return py::dict(py::arg("phi_d") = f.phi_d, py::arg("phi_g") = f.phi_g, py::arg("phi_t") = f.phi_t);
      },
      py::arg("lambda0"), py::arg("theta"), "Closed forms for a fixed-axis 2pi loop (dynamical phase +integral <H> dt).");

  py::class_<PhaseBreakdown>(m, "PhaseBreakdown")
      .def_readonly("total", &PhaseBreakdown::total)
      .def_readonly("dynamical", &PhaseBreakdown::dynamical)
      .def_readonly("geometric", &PhaseBreakdown::geometric)
      .def_readonly("crossings", &PhaseBreakdown::crossings)
      .def_property_readonly("parity",
                             [](const PhaseBreakdown& b) { return b.parity == Parity::Odd ? "odd" : "even"; })
      .def_readonly("degenerate", &PhaseBreakdown::degenerate)
      .def_readonly("closure_residual", &PhaseBreakdown::closure_residual);
  m.def(
      "phase_breakdown", [](const RotationSchedule& s, int steps) { return phase_breakdown(s.initial, s, steps); },
      py::arg("schedule"), py::arg("steps") = kDefaultSamplesPerSegment);

  m.def(
      "phase_series",
      [](const RotationSchedule& s, int steps) {
        const auto series = phase_series(s, steps);
        std::vector<double> t, principal, unwrapped, dyn;
        for (const auto& p : series) {
          t.push_back(p.time);
          principal.push_back(p.total_principal.value_or(std::numeric_limits<double>::quiet_NaN()));
          unwrapped.push_back(p.total_unwrapped.value_or(std::numeric_limits<double>::quiet_NaN()));
          dyn.push_back(p.dyn);
        }
        return py::dict(py::arg("t") = t, py::arg("phase_total_principal") = principal,
                        py::arg("phase_total_unwrapped") = unwrapped, py::arg("phase_dyn") = dyn);
      },
      py::arg("schedule"), py::arg("steps") = kDefaultSamplesPerSegment,
      "Columns of the per-sample phase record (NaN where undefined).");
}
