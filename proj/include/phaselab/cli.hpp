#pragma once

// Command implementations behind the `phaselab` executable. Human summaries go
// to `out`, diagnostics to `err`; machine-readable data only to files.

#include <iosfwd>
#include <string>
#include <string_view>

namespace phaselab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kNumeric = 3 };

inline constexpr const char* kRunCsvHeader =
    "t,sp_re,sp_im,phase_total_principal,phase_total_unwrapped,phase_dyn,bloch_x,bloch_y,bloch_z,"
    "so3_ax,so3_ay,so3_az,so3_angle,crossing_flag";
inline constexpr const char* kSweepCsvHeader =
    "lambda0,theta,phi_total,phi_dyn,phi_geo,crossings,closure_residual";

struct RunOptions {
  std::string schedule_file;
  int steps = 2000;
  std::string out;
  std::string format = "csv";
};

struct BreakdownOptions {
  std::string schedule_file;
  int steps = 2000;
};

/// Inclusive linear grid "a:b:n".
struct Range {
  double first = 0.0;
  double last = 0.0;
  int count = 1;

  double at(int i) const { return count == 1 ? first : first + (last - first) * i / (count - 1); }
};

/// Throws ValidationError on malformed text or count < 1.
Range parse_range(std::string_view text);

struct SweepOptions {
  Range lambda0;
  Range theta;
  char axis = 'z';
  int turns = 1;
  int steps = 2000;
  unsigned threads = 0;  // 0: hardware concurrency
  std::string out;
};

struct ReadoutOptions {
  std::string schedule_file;
};

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err);
int cmd_breakdown(const BreakdownOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);
int cmd_readout(const ReadoutOptions& opt, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a command.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// %.17g.
std::string format_number(double v);

}  // namespace phaselab::cli
