#include "phaselab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "phaselab/phase.hpp"

namespace phaselab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

RotationSchedule load_schedule(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read schedule file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_schedule(ss.str());
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : "nan"; }

ordered_json opt_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

const char* parity_name(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

// Maps library exceptions onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kInput;
  } catch (const NotCyclic& e) {
    err << "NotCyclic: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  }
}

void write_run_csv(std::ostream& os, const std::vector<PhaseSample>& series) {
  os << kRunCsvHeader << '\n';
  for (const auto& s : series) {
    const Vec3 ax = s.so3.axis();
    os << format_number(s.time) << ',' << format_number(s.sp.real()) << ',' << format_number(s.sp.imag())
       << ',' << opt_number(s.total_principal) << ',' << opt_number(s.total_unwrapped) << ','
       << format_number(s.dyn) << ',' << format_number(s.bloch.x) << ',' << format_number(s.bloch.y) << ','
       << format_number(s.bloch.z) << ',' << format_number(ax.x) << ',' << format_number(ax.y) << ','
       << format_number(ax.z) << ',' << format_number(s.so3.angle()) << ',' << (s.crossing ? 1 : 0) << '\n';
  }
}

void write_run_json(std::ostream& os, const std::vector<PhaseSample>& series) {
  ordered_json rows = ordered_json::array();
  for (const auto& s : series) {
    const Vec3 ax = s.so3.axis();
    rows.push_back(ordered_json{{"t", s.time},
                                {"sp_re", s.sp.real()},
                                {"sp_im", s.sp.imag()},
                                {"phase_total_principal", opt_json(s.total_principal)},
                                {"phase_total_unwrapped", opt_json(s.total_unwrapped)},
                                {"phase_dyn", s.dyn},
                                {"bloch_x", s.bloch.x},
                                {"bloch_y", s.bloch.y},
                                {"bloch_z", s.bloch.z},
                                {"so3_ax", ax.x},
                                {"so3_ay", ax.y},
                                {"so3_az", ax.z},
                                {"so3_angle", s.so3.angle()},
                                {"crossing_flag", s.crossing ? 1 : 0}});
  }
  os << ordered_json{{"samples", rows}}.dump() << '\n';
}

Vec3 axis_vector(char axis) {
  switch (axis) {
    case 'x':
      return {1.0, 0.0, 0.0};
    case 'y':
      return {0.0, 1.0, 0.0};
    case 'z':
      return {0.0, 0.0, 1.0};
  }
  throw ValidationError(std::string("unknown axis '") + axis + "'");
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Range parse_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 3) throw ValidationError("range must look like a:b:n, got '" + std::string(text) + "'");
  const auto num = [&](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
      throw ValidationError("malformed number '" + std::string(s) + "' in range");
    return v;
  };
  Range r;
  r.first = num(parts[0]);
  r.last = num(parts[1]);
  int n = 0;
  const auto [p, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (parts[2].empty() || ec != std::errc() || p != parts[2].data() + parts[2].size() || n < 1)
    throw ValidationError("range count must be an integer >= 1, got '" + std::string(parts[2]) + "'");
  r.count = n;
  return r;
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto schedule = load_schedule(opt.schedule_file);
    const auto series = phase_series(schedule, opt.steps);
    const auto crossings = topological_crossings(schedule.initial, schedule, opt.steps);

    const Complex v = series.back().sp;
    if (std::abs(std::abs(v) - 1.0) > 1e-6)
      err << "warning: NotCyclic: final |overlap| = " << format_number(std::abs(v)) << '\n';

    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw ValidationError("cannot write output file '" + opt.out + "'");
    if (opt.format == "json") {
      write_run_json(file, series);
    } else {
      write_run_csv(file, series);
    }
    if (!file.flush()) throw ValidationError("failed writing '" + opt.out + "'");

    out << "final total phase: " << opt_number(series.back().total_principal) << '\n';
    out << "crossings: " << crossings.count << '\n';
    out << "parity: " << parity_name(crossings.parity) << '\n';
    return int(kOk);
  });
}

int cmd_breakdown(const BreakdownOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto schedule = load_schedule(opt.schedule_file);
    const auto b = phase_breakdown(schedule.initial, schedule, opt.steps);
    const ordered_json j{{"total", b.total},
                         {"dynamical", b.dynamical},
                         {"geometric", b.geometric},
                         {"crossings", b.crossings},
                         {"parity", parity_name(b.parity)},
                         {"degenerate", b.degenerate},
                         {"closure_residual", b.closure_residual}};
    out << j.dump() << '\n';
    return int(kOk);
  });
}

int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.lambda0.count < 1 || opt.theta.count < 1) throw ValidationError("grid counts must be >= 1");
    for (int i = 0; i < opt.lambda0.count; ++i) {
      const double l0 = opt.lambda0.at(i);
      if (!(l0 >= 0.0 && l0 <= 1.0)) throw ValidationError("lambda0 range leaves [0,1]");
    }
    if (opt.turns < 1) throw ValidationError("turns must be >= 1");
    const Vec3 axis = axis_vector(opt.axis);
    const std::size_t n = std::size_t(opt.lambda0.count) * std::size_t(opt.theta.count);

    std::vector<PhaseBreakdown> results(n);
    std::vector<std::string> failures(n);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t idx = next++; idx < n; idx = next++) {
        const double l0 = opt.lambda0.at(int(idx / opt.theta.count));
        const double th = opt.theta.at(int(idx % opt.theta.count));
        RotationSchedule s;
        s.initial = schmidt_state({l0, th});
        s.segments = {{axis, kTwoPi * opt.turns}};
        try {
          results[idx] = phase_breakdown(s.initial, s, opt.steps);
        } catch (const Error& e) {
          failures[idx] = e.what();
        }
      }
    };
    unsigned threads = opt.threads != 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = unsigned(std::min<std::size_t>(threads, n));
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
      worker();
    }
    for (const auto& f : failures)
      if (!f.empty()) throw Error(f);

    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw ValidationError("cannot write output file '" + opt.out + "'");
    file << kSweepCsvHeader << '\n';
    for (std::size_t idx = 0; idx < n; ++idx) {
      const auto& b = results[idx];
      file << format_number(opt.lambda0.at(int(idx / opt.theta.count))) << ','
           << format_number(opt.theta.at(int(idx % opt.theta.count))) << ',' << format_number(b.total) << ','
           << format_number(b.dynamical) << ',' << format_number(b.geometric) << ',' << b.crossings << ','
           << format_number(b.closure_residual) << '\n';
    }
    if (!file.flush()) throw ValidationError("failed writing '" + opt.out + "'");
    out << "wrote " << n << " grid points to " << opt.out << '\n';
    return int(kOk);
  });
}

int cmd_readout(const ReadoutOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto schedule = load_schedule(opt.schedule_file);
    const double p = readout_probability(schedule.initial, schedule);
    out << "probability: " << format_number(p) << '\n';
    out << "abs_cos_phi: " << format_number(std::abs(1.0 - 2.0 * p)) << '\n';
    return int(kOk);
  });
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"phaselab: total, dynamical, geometric and topological phases of two-qubit states"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Write the phase time series of a schedule");
  run_cmd->add_option("schedule_file", run.schedule_file, "Schedule file (phaselab-schedule v1)")->required();
  run_cmd->add_option("--steps", run.steps, "Samples per segment")->check(CLI::Range(2, 100000000));
  run_cmd->add_option("--out", run.out, "Output file")->required();
  run_cmd->add_option("--format", run.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  BreakdownOptions bd;
  auto* bd_cmd = app.add_subcommand("breakdown", "Print the phase decomposition of a cyclic schedule as JSON");
  bd_cmd->add_option("schedule_file", bd.schedule_file, "Schedule file")->required();
  bd_cmd->add_option("--steps", bd.steps, "Samples per segment")->check(CLI::Range(2, 100000000));

  SweepOptions sw;
  std::string lambda_text, theta_text;
  auto* sw_cmd = app.add_subcommand("sweep", "Fixed-axis loop over a (lambda0, theta) grid");
  sw_cmd->add_option("--lambda0", lambda_text, "a:b:n")->required();
  sw_cmd->add_option("--theta", theta_text, "a:b:m")->required();
  sw_cmd->add_option("--axis", sw.axis, "x, y or z")->check(CLI::IsMember({'x', 'y', 'z'}));
  sw_cmd->add_option("--turns", sw.turns, "Full 2pi turns per loop")->check(CLI::PositiveNumber);
  sw_cmd->add_option("--steps", sw.steps, "Samples per segment")->check(CLI::Range(2, 100000000));
  sw_cmd->add_option("--threads", sw.threads, "Worker threads (0: all cores)");
  sw_cmd->add_option("--out", sw.out, "Output CSV")->required();

  ReadoutOptions ro;
  auto* ro_cmd = app.add_subcommand("readout", "Interferometric click probability of a schedule");
  ro_cmd->add_option("schedule_file", ro.schedule_file, "Schedule file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int(kOk) : int(kUsage);
  }

  if (*run_cmd) return cmd_run(run, out, err);
  if (*bd_cmd) return cmd_breakdown(bd, out, err);
  if (*sw_cmd) {
    try {
      sw.lambda0 = parse_range(lambda_text);
      sw.theta = parse_range(theta_text);
    } catch (const ValidationError& e) {
      err << "validation error: " << e.what() << '\n';
      return kInput;
    }
    return cmd_sweep(sw, out, err);
  }
  return cmd_readout(ro, out, err);
}

}  // namespace phaselab::cli
