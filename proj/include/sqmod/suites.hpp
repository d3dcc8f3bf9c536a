#pragma once

// Randomized property suites over the exponential-sum kernels. Shared by the
// selftest subcommand, the unit tests and the acceptance runner. Every suite
// is deterministic in its seed.

#include <cstdint>

namespace sqmod {

struct WeilSuite {
  int cases = 0;
  int skipped_degenerate = 0;
  int violations = 0;      ///< |S| > 4 sqrt(p)
  double max_ratio = 0.0;  ///< max |S| / (4 sqrt(p))
};

/// Complete sums mod p for random nondegenerate phases, 5 <= p <= p_max.
WeilSuite run_weil_suite(std::uint64_t seed, int cases, std::uint64_t p_max = 499);

struct CochraneZhengSuite {
  int cases = 0;
  int skipped_degenerate = 0;
  int bound_violations = 0;     ///< |S| > (deg f1 + deg f2) p
  int branch_violations = 0;    ///< non-critical branch with |S_alpha| >= 1e-6 p
  double max_ratio = 0.0;       ///< max |S| / ((deg f1 + deg f2) p)
  double max_noncritical = 0.0; ///< max |S_alpha| / p over non-critical alpha
  int max_critical = 0;
};

/// Complete sums mod p^2 for random nondegenerate phases, 5 <= p <= p_max.
CochraneZhengSuite run_cochrane_zheng_suite(std::uint64_t seed, int cases, std::uint64_t p_max = 199);

struct RamanujanSuite {
  long checked = 0;
  long bound_violations = 0;    ///< |c_q(n)| > (n, q)
  long formula_mismatches = 0;  ///< c_q(n) != mu(q/g) phi(q) / phi(q/g)
};

/// Every 1 <= q <= q_max and |n| <= n_max.
RamanujanSuite run_ramanujan_suite(std::uint64_t q_max = 500, std::int64_t n_max = 500);

struct CrtSuite {
  int moduli = 0;
  int splits = 0;
  double max_residual = 0.0;
};

/// All coprime splits of `count` random cube-free q <= q_max.
CrtSuite run_crt_suite(std::uint64_t seed, int count = 100, std::uint64_t q_max = 10'000);

struct CompletionSuite {
  int cases = 0;
  double max_scaled_residual = 0.0;  ///< max residual / N
  double max_tail = 0.0;
};

CompletionSuite run_completion_suite(std::uint64_t seed, int cases = 60);

inline constexpr double kWeilConstant = 4.0;
inline constexpr double kBranchTolerance = 1e-6;
inline constexpr double kCrtTolerance = 1e-10;
inline constexpr double kCompletionTolerance = 1e-8;

}  // namespace sqmod
