#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "urel/report_io.hpp"

namespace urel::cli {

enum class Command { verify_random, oscillator, qubit_family, show_report };
enum class OutputFormat { json, csv };

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct RunConfig {
  Command command = Command::verify_random;
  std::int64_t dim = 4;
  std::int64_t rank = 0;  // 0: full rank (= dim)
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  double beta = 1.0;
  std::vector<std::int64_t> fock_dims = {20, 40, 60};
  double tol = 1e-9;
  bool centered = true;
  OutputFormat output_format = OutputFormat::json;
  std::string output_path;  // empty: stdout
  unsigned threads = 0;     // 0: hardware concurrency
};

/// Invalid flag combination; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws UsageError describing the first violated constraint.
void validate(const RunConfig& config);

std::string command_name(Command command);

struct CommandResult {
  int exit_code = kExitPass;
  io::Document document;
};

/// `trials` seeded instances (rho, A, B) of one dimension and rank, each
/// evaluated and verified. Trial i draws rho, A, B in that order from
/// trial_rng(seed, i); rank 1 uses the pure-state ensemble.
CommandResult cmd_verify_random(const RunConfig& config);

/// Thermal oscillator truncation sweep. Passes iff the deviation from the
/// closed forms at the last dimension is within tol.
CommandResult cmd_oscillator(const RunConfig& config);

/// A = sigma_x, B = sigma_y, rho = diag(p, 1-p) for p = 0.05, 0.10, ..., 0.95.
CommandResult cmd_qubit_family(const RunConfig& config);

/// Full report for the single instance verify-random would draw as trial 0.
CommandResult cmd_show_report(const RunConfig& config);

CommandResult run(const RunConfig& config);

/// Serialized document in the configured format.
std::string render(const CommandResult& result, OutputFormat format);

/// Parses argv into a config. Returns the exit code to use immediately
/// (help or usage error) or -1 to continue.
int parse_args(int argc, const char* const* argv, RunConfig& config);

/// Entire CLI: parse, run, write. Returns the process exit code.
int main_entry(int argc, const char* const* argv);

}  // namespace urel::cli
