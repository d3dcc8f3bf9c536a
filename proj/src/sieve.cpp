#include "sqmod/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "sqmod/kernels/kernels.hpp"
#include "sqmod/modarith.hpp"

namespace sqmod {

namespace {

using u64 = std::uint64_t;

constexpr u64 kWheelPrimes[] = {3, 5, 7, 11, 13};
constexpr u64 kWheelPeriod = 15015;  // odd residues of 30030

const std::vector<std::uint8_t>& wheel_pattern() {
  static const std::vector<std::uint8_t> pattern = [] {
    std::vector<std::uint8_t> p(kWheelPeriod, 1);
    for (u64 k = 0; k < kWheelPeriod; ++k)
      for (u64 w : kWheelPrimes)
        if ((2 * k + 1) % w == 0) p[k] = 0;
    return p;
  }();
  return pattern;
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Odd-number sieve over (lo, hi]. Segment s covers the odd numbers
/// first_odd + 2 * [s * seg, (s + 1) * seg).
class OddSegments {
 public:
  OddSegments(u64 lo, u64 hi, u64 segment) : lo_(lo), hi_(hi), segment_(segment) {
    first_odd_ = (lo + 1) | 1;
    count_ = hi >= first_odd_ ? (hi - first_odd_) / 2 + 1 : 0;
    for (u64 p : primes_in(2, isqrt(hi))) {
      if (p >= 17) sieving_.push_back(p);
    }
  }

  u64 segments() const { return (count_ + segment_ - 1) / segment_; }

  /// Fills flags for segment s (1 = prime) and returns the first odd value.
  u64 fill(u64 s, std::vector<std::uint8_t>& flags) const {
    const u64 begin = s * segment_;
    const u64 len = std::min(segment_, count_ - begin);
    const u64 start = first_odd_ + 2 * begin;
    flags.resize(len);
    const auto& pattern = wheel_pattern();
    u64 k = ((start - 1) / 2) % kWheelPeriod;
    for (u64 i = 0; i < len;) {
      const u64 chunk = std::min(len - i, kWheelPeriod - k);
      std::copy_n(pattern.begin() + static_cast<std::ptrdiff_t>(k), chunk, flags.begin() + static_cast<std::ptrdiff_t>(i));
      i += chunk;
      k = 0;
    }
    const u64 end = start + 2 * (len - 1);
    for (u64 p : sieving_) {
      u64 m = std::max(p * p, (start + p - 1) / p * p);
      if ((m & 1) == 0) m += p;
      for (; m <= end; m += 2 * p) flags[(m - start) / 2] = 0;
    }
    // Repair values the wheel or the loop got wrong.
    for (u64 w : kWheelPrimes)
      if (w >= start && w <= end) flags[(w - start) / 2] = 1;
    if (start == 1) flags[0] = 0;
    return start;
  }

  bool includes_two() const { return lo_ < 2 && hi_ >= 2; }

 private:
  u64 lo_, hi_, segment_;
  u64 first_odd_ = 1;
  u64 count_ = 0;
  std::vector<u64> sieving_;
};

template <typename PerSegment>
void for_each_segment(const OddSegments& sieve, int threads, PerSegment&& body) {
  const u64 n = sieve.segments();
  const int workers = static_cast<int>(std::clamp<u64>(static_cast<u64>(std::max(threads, 1)), 1, std::max<u64>(n, 1)));
  auto work = [&](int w) {
    std::vector<std::uint8_t> flags;
    for (u64 s = static_cast<u64>(w); s < n; s += static_cast<u64>(workers)) {
      const u64 start = sieve.fill(s, flags);
      body(s, start, flags);
    }
  };
  if (workers == 1) {
    work(0);
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
}

void check_x(u64 X) {
  if (X == 0 || X > kSieveMaxX) throw std::invalid_argument("X must lie in [1, 10^10]");
}

}  // namespace

std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
  if (hi <= lo) return 0;
  const OddSegments sieve(lo, hi, options.segment_bytes);
  std::vector<u64> per_segment(sieve.segments(), 0);
  for_each_segment(sieve, options.threads, [&](u64 s, u64, const std::vector<std::uint8_t>& flags) {
    per_segment[s] = flags.size() - kernels::active().count_zero_bytes(flags);
  });
  return std::accumulate(per_segment.begin(), per_segment.end(), u64{0}) + (sieve.includes_two() ? 1 : 0);
}

std::vector<std::uint64_t> prime_counts_in_progressions(std::uint64_t X, std::span<const std::uint64_t> moduli,
                                                        std::span<const std::uint64_t> residues,
                                                        const SieveOptions& options) {
  check_x(X);
  if (moduli.size() != residues.size()) throw std::invalid_argument("moduli and residues differ in length");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] == 0 || moduli[i] > kSieveMaxModulus) throw std::invalid_argument("modulus out of range");
    if (residues[i] >= moduli[i]) throw std::invalid_argument("residue not reduced");
    if (moduli[i] > 1 && std::gcd(residues[i], moduli[i]) != 1)
      throw std::invalid_argument("residue shares a factor with its modulus");
  }
  const OddSegments sieve(X, 2 * X, options.segment_bytes);
  const std::size_t k = moduli.size();
  std::vector<u64> per_segment(sieve.segments() * k, 0);
  for_each_segment(sieve, options.threads, [&](u64 s, u64 start, const std::vector<std::uint8_t>& flags) {
    std::vector<u64> primes;
    primes.reserve(flags.size() / 8);
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i]) primes.push_back(start + 2 * i);
    for (std::size_t j = 0; j < k; ++j)
      per_segment[s * k + j] = kernels::active().count_congruent(primes, moduli[j], residues[j]);
  });
  std::vector<u64> out(k, 0);
  for (u64 s = 0; s < sieve.segments(); ++s)
    for (std::size_t j = 0; j < k; ++j) out[j] += per_segment[s * k + j];
  if (sieve.includes_two())
    for (std::size_t j = 0; j < k; ++j) out[j] += (2 % moduli[j] == residues[j]);
  return out;
}

std::uint64_t prime_count_in_progression(std::uint64_t X, std::uint64_t m, std::int64_t a,
                                         const SieveOptions& options) {
  check_x(X);
  if (m == 0 || m > kSieveMaxModulus) throw std::invalid_argument("modulus must lie in [1, 10^7]");
  const u64 r = mod_floor(a, m);
  if (m > 1 && std::gcd(r, m) != 1)
    throw std::invalid_argument("(a, m) = " + std::to_string(std::gcd(r, m)) + " > 1");
  if (m == 1) return count_primes(X, 2 * X, options);
  const u64 moduli[] = {m};
  const u64 residues[] = {r};
  return prime_counts_in_progressions(X, moduli, residues, options)[0];
}

std::uint64_t prime_count_in_progression_scan(std::uint64_t X, std::uint64_t m, std::int64_t a) {
  check_x(X);
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  const u64 r = mod_floor(a, m);
  if (m > 1 && std::gcd(r, m) != 1) throw std::invalid_argument("(a, m) > 1");
  u64 count = 0;
  for (u64 n = X + 1; n <= 2 * X; ++n)
    if (n % m == r && is_prime(n)) ++count;
  return count;
}

}  // namespace sqmod
