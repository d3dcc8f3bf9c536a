#pragma once

// Command-line front end: subcommands constraints, deficiency, expsum,
// primes and selftest.
//
// Exit status: 0 all certifications pass, 1 a certification failed, 2 the
// configuration could not be parsed or was rejected, 3 an internal invariant
// was breached.

#include <cstdint>
#include <iosfwd>
#include <string>

namespace sqmod::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCertificationFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInternalError = 3;

struct RunConfig {
  std::string subcommand;

  std::string sigma = "1/19.5";
  std::string varpi = "1/4000";
  std::string delta = "0";
  std::string eta = "0";

  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0xC0FFEE;
  int replicates = 16;
  int threads = 1;  ///< never affects machine output
  std::string isa = "auto";
  std::string output;  ///< machine output path; empty disables it
  std::string format = "csv";

  // deficiency
  std::string omega = "upper";     ///< upper | table
  std::string sampling = "log";    ///< log | folded | box
  bool strict_gap = false;

  // expsum
  std::string corpus;  ///< JSON lines; empty uses a generated corpus
  int cases = 100;
  std::string scale = "1e8";         ///< X for the smoothness factor
  std::string smooth_delta = "1/4";  ///< delta for the smoothness factor

  // primes
  std::uint64_t x = 100'000'000;
  int k = 2;
  std::int64_t a = 1;
  std::uint64_t max_members = 0;
};

/// Runs one resolved configuration. Human-readable summary to `out`,
/// diagnostics to `err`, machine output to config.output.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags (and an optional --config file) and runs.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqmod::cli
