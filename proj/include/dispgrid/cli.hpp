#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dispgrid/empty_box.hpp"
#include "dispgrid/grid.hpp"
#include "dispgrid/guard.hpp"

namespace dispgrid {

inline constexpr const char* kVersion = "1.0.0";

enum class OutputFormat { csv, jsonl, text };

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntimeError = 1,
  kExitCertificateFailed = 2,
  kExitGuardExceeded = 3,
  kExitIoError = 4,
  kExitAuditFailed = 5,
  kExitUsage = 64,
};

struct RunConfig {
  std::string subcommand;
  std::optional<int> k;
  std::optional<double> eps;
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t max_attempts = 1000;
  double target = 0.5;
  std::size_t max_n = std::size_t{1} << 24;
  std::vector<double> eps_list;
  std::vector<std::size_t> d_list;
  std::vector<int> k_list;
  int k_min = 2;
  int k_max = 20;
  std::string in_path;
  std::string out_path;
  OutputFormat format = OutputFormat::csv;
  unsigned threads = 1;
  EnumerationGuard guard;
  bool confirm_exact = false;
  SearchMode mode = SearchMode::exhaustive;

  /// Canonical command line reproducing the run (omits --threads and --out,
  /// which do not change results).
  std::string echo() const;
};

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, bool help = false)
      : std::runtime_error(message), help_(help) {}
  /// The message is help text requested by the user.
  bool help() const { return help_; }

 private:
  bool help_;
};

/// argv[0] is the program name. Throws UsageError naming the offending flag.
RunConfig parse_cli(int argc, const char* const* argv);

/// Executes the subcommand, writing results to `out` (or config.out_path)
/// and diagnostics to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dispgrid
