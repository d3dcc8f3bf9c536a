#pragma once

// Desk-scale instances of the smooth-square moduli family and the count of
// primes p = a (d^2) in (X, 2X] for each member.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqmod/rational.hpp"
#include "sqmod/sieve.hpp"

namespace sqmod {

struct FamilyConfig {
  std::uint64_t X = 100'000'000;
  int K = 2;
  Rational varpi{1, 4000};
  Rational delta{0};
  std::uint64_t max_members = 0;  ///< 0 keeps every member
  std::uint64_t seed = 0xC0FFEE;  ///< used only when sampling members
  /// Replaces P^(1/2) as the base of the dyadic intervals (testing hook).
  std::optional<double> interval_base;
};

struct PrimeInterval {
  int j = 0;
  double lo = 0;  ///< open
  double hi = 0;  ///< closed
  std::vector<std::uint64_t> primes;
};

struct FamilyMember {
  std::uint64_t d = 1;
  std::vector<std::uint64_t> primes;  ///< p_j in I_j, j = 1..K
  std::uint64_t r = 1;                ///< p_1 ... p_{K0}
  std::uint64_t q = 1;                ///< p_{K0+1} ... p_K
};

struct ModuliFamily {
  std::uint64_t X = 0;
  int K = 0;
  Rational d_exp;  ///< 1/2 + 2 varpi
  double D = 0;
  double P = 0;  ///< D^(1/K)
  double base = 0;  ///< P^(1/2) unless overridden
  double d_sq_lo = 0;  ///< 2^(K(K-1)) D, open
  double d_sq_hi = 0;  ///< 2^(K(K+1)) D, closed
  std::vector<PrimeInterval> intervals;

  int split_index = 0;         ///< K0
  Rational q_exp;              ///< log_X Q = (K - K0)/K * d_exp
  RationalInterval q_target;   ///< [16 varpi + 8 delta, 16 varpi + 9 delta]
  bool split_in_window = false;
  std::string split_note;

  std::uint64_t total_members = 0;  ///< before sampling
  std::vector<FamilyMember> members;  ///< sorted by d
};

/// Throws std::invalid_argument for X < 10^6 or K < 1, and std::domain_error
/// naming the first interval without primes.
ModuliFamily build_family(const FamilyConfig& config);

struct CountRow {
  std::uint64_t d = 0;
  std::uint64_t d_sq = 0;
  std::uint64_t count = 0;
  double expectation = 0;
  double ratio = 0;
  double z = 0;
};

struct CountReport {
  std::uint64_t X = 0;
  std::int64_t a = 0;
  std::uint64_t interval_primes = 0;  ///< pi(2X) - pi(X)
  std::vector<CountRow> rows;
  std::vector<std::string> skipped;  ///< one line per member with (a, d^2) > 1
  double mean_ratio = 0;
  double fraction_below_threshold = 0;  ///< ratio <= 0.05
  double fraction_in_band = 0;          ///< |z| <= 3
  std::vector<std::uint64_t> anomalies; ///< d with count 0 and expectation > 25
};

inline constexpr double kRatioThreshold = 0.05;
inline constexpr double kPoissonBand = 3.0;

/// Throws std::invalid_argument for an empty family.
CountReport equidistribution_report(const ModuliFamily& family, std::int64_t a, const SieveOptions& options = {});

/// Applies the z-score rules to precomputed counts (kept separate for tests).
CountReport summarize_counts(std::uint64_t X, std::int64_t a, std::uint64_t interval_primes,
                             std::vector<CountRow> rows, std::vector<std::string> skipped);

}  // namespace sqmod
