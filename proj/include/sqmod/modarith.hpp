#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sqmod {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m);

/// Canonical residue of a (possibly negative) integer.
inline u64 mod_floor(i64 a, u64 m) {
  const i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Inverse of a modulo m, or nullopt when gcd(a, m) > 1. For m == 1 returns 0.
std::optional<u64> mod_inverse(u64 a, u64 m);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

/// Prime factorization in increasing order of primes. n >= 1.
std::vector<std::pair<u64, int>> factorize(u64 n);

bool is_cube_free(u64 n);
bool is_squarefree(u64 n);
int moebius(u64 n);
u64 euler_phi(u64 n);
u64 divisor_count(u64 n);
u64 largest_prime_factor(u64 n);

/// lcm; throws std::overflow_error when the result exceeds 64 bits.
u64 lcm_checked(u64 a, u64 b);

/// Primes p with lo < p <= hi (simple sieve; hi up to a few times 10^7).
std::vector<u64> primes_in(u64 lo, u64 hi);

}  // namespace sqmod
