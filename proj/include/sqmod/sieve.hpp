#pragma once

// Segmented odd-only sieve of Eratosthenes over (X, 2X] with a presieved
// wheel for 3, 5, 7, 11, 13.

#include <cstdint>
#include <span>
#include <vector>

namespace sqmod {

inline constexpr std::uint64_t kSieveMaxX = 10'000'000'000ull;
inline constexpr std::uint64_t kSieveMaxModulus = 10'000'000ull;

struct SieveOptions {
  int threads = 1;
  std::uint64_t segment_bytes = 1u << 18;  ///< odd numbers per segment
};

/// Number of primes in (lo, hi].
std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});

/// Primes in (X, 2X] congruent to a mod m. a is reduced mod m first; m = 1
/// counts all primes. Throws std::invalid_argument when (a, m) > 1 for m > 1,
/// or when X or m are out of range.
std::uint64_t prime_count_in_progression(std::uint64_t X, std::uint64_t m, std::int64_t a,
                                         const SieveOptions& options = {});

/// One sieve pass, several progressions: result[i] counts primes in (X, 2X]
/// that are = residues[i] (mod moduli[i]). Residues must be reduced and
/// coprime to their modulus (or the modulus must be 1).
std::vector<std::uint64_t> prime_counts_in_progressions(std::uint64_t X, std::span<const std::uint64_t> moduli,
                                                        std::span<const std::uint64_t> residues,
                                                        const SieveOptions& options = {});

/// Reference count by a Miller-Rabin scan of (X, 2X].
std::uint64_t prime_count_in_progression_scan(std::uint64_t X, std::uint64_t m, std::int64_t a);

}  // namespace sqmod
