#include "sqmod/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "sqmod/expsum.hpp"
#include "sqmod/modarith.hpp"

namespace sqmod {

namespace {

struct Draw {
  std::mt19937_64 rng;
  explicit Draw(u64 seed) : rng(seed) {}
  u64 in(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); }
  u64 unit(u64 p, u64 m) {  // residue mod m not divisible by p
    for (;;) {
      const u64 v = in(1, m - 1);
      if (v % p) return v;
    }
  }
};

std::vector<u64> odd_primes(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

}  // namespace

WeilSuite run_weil_suite(std::uint64_t seed, int cases, std::uint64_t p_max) {
  const auto primes = odd_primes(5, p_max);
  Draw draw(seed);
  WeilSuite out;
  while (out.cases < cases) {
    const u64 p = primes[draw.in(0, primes.size() - 1)];
    // At least one pole term; either modulus may be trivial.
    const int shape = static_cast<int>(draw.in(0, 2));
    const u64 d1 = shape == 1 ? 1 : p;
    const u64 d2 = shape == 0 ? 1 : p;
    const RationalPhase phase(static_cast<i64>(draw.unit(p, p)), d1, static_cast<i64>(draw.unit(p, p)), d2,
                              static_cast<i64>(draw.unit(p, p)), static_cast<i64>(draw.in(0, p - 1)));
    try {
      critical_points(phase, p);
    } catch (const DegeneratePhase&) {
      ++out.skipped_degenerate;
      continue;
    }
    const double ratio = std::abs(complete_sum_prime(phase, p)) / (kWeilConstant * std::sqrt(static_cast<double>(p)));
    out.max_ratio = std::max(out.max_ratio, ratio);
    out.violations += ratio > 1.0;
    ++out.cases;
  }
  return out;
}

CochraneZhengSuite run_cochrane_zheng_suite(std::uint64_t seed, int cases, std::uint64_t p_max) {
  const auto primes = odd_primes(5, p_max);
  Draw draw(seed);
  CochraneZhengSuite out;
  while (out.cases < cases) {
    const u64 p = primes[draw.in(0, primes.size() - 1)];
    const u64 q = p * p;
    // [d1, d2] = p^2 with d1 in {p, p^2}, d2 in {1, p, p^2}.
    const int shape = static_cast<int>(draw.in(0, 4));
    u64 d1 = q, d2 = q;
    if (shape == 1) d2 = 1;
    if (shape == 2) d2 = p;
    if (shape == 3) d1 = p;
    const RationalPhase phase(static_cast<i64>(draw.unit(p, d1)), d1, static_cast<i64>(draw.unit(p, d2 > 1 ? d2 : p)), d2,
                              static_cast<i64>(draw.unit(p, q)), static_cast<i64>(draw.in(0, q - 1)));
    PrimeSquareSum s;
    try {
      s = complete_sum_prime_square(phase, p);
    } catch (const DegeneratePhase&) {
      ++out.skipped_degenerate;
      continue;
    }
    const double mag = std::abs(s.total);
    out.max_ratio = std::max(out.max_ratio, mag / s.bound);
    if (mag > s.bound * (1.0 + 1e-12)) ++out.bound_violations;
    out.max_critical = std::max(out.max_critical, static_cast<int>(s.critical.size()));
    for (u64 a = 0; a < p; ++a) {
      if (std::binary_search(s.critical.begin(), s.critical.end(), a)) continue;
      const double rel = std::abs(s.branch_sums[a]) / static_cast<double>(p);
      out.max_noncritical = std::max(out.max_noncritical, rel);
      if (rel >= kBranchTolerance) ++out.branch_violations;
    }
    ++out.cases;
  }
  return out;
}

RamanujanSuite run_ramanujan_suite(std::uint64_t q_max, std::int64_t n_max) {
  RamanujanSuite out;
  for (u64 q = 1; q <= q_max; ++q) {
    const u64 phi_q = euler_phi(q);
    for (i64 n = -n_max; n <= n_max; ++n) {
      const i64 c = ramanujan(q, n);
      const u64 g = std::gcd(static_cast<u64>(n < 0 ? -n : n), q);
      if (static_cast<u64>(c < 0 ? -c : c) > g) ++out.bound_violations;
      const u64 m = q / g;
      const i64 expected = moebius(m) * static_cast<i64>(phi_q / euler_phi(m));
      if (c != expected) ++out.formula_mismatches;
      ++out.checked;
    }
  }
  return out;
}

CrtSuite run_crt_suite(std::uint64_t seed, int count, std::uint64_t q_max) {
  Draw draw(seed);
  CrtSuite out;
  while (out.moduli < count) {
    const u64 q = draw.in(6, q_max);
    if (!is_cube_free(q)) continue;
    const auto f = factorize(q);
    if (f.size() < 2) continue;
    std::vector<u64> blocks;
    for (auto [p, e] : f) blocks.push_back(e == 1 ? p : p * p);
    // phase over the full modulus with a second pole on a unitary divisor
    const u64 d2 = blocks[draw.in(0, blocks.size() - 1)];
    const RationalPhase phase(static_cast<i64>(draw.in(1, q - 1)), q, static_cast<i64>(draw.in(1, d2)), d2,
                              static_cast<i64>(draw.in(0, q - 1)), static_cast<i64>(draw.in(0, q - 1)));
    const u64 k = blocks.size();
    for (u64 mask = 1; mask + 1 < (u64{1} << k); ++mask) {
      u64 q1 = 1;
      for (u64 i = 0; i < k; ++i)
        if (mask >> i & 1) q1 *= blocks[i];
      out.max_residual = std::max(out.max_residual, crt_split_check(phase, q1, q / q1));
      ++out.splits;
    }
    ++out.moduli;
  }
  return out;
}

CompletionSuite run_completion_suite(std::uint64_t seed, int cases) {
  Draw draw(seed);
  CompletionSuite out;
  while (out.cases < cases) {
    const u64 q = draw.in(2, 400);
    if (!is_cube_free(q)) continue;
    const RationalPhase phase(static_cast<i64>(draw.in(0, q - 1)), q, 0, 1, 0, static_cast<i64>(draw.in(0, q - 1)));
    Window w;
    w.x0 = static_cast<double>(static_cast<i64>(draw.in(0, 2000)) - 1000) + 0.25;
    w.length = static_cast<double>(draw.in(q / 2 + 1, 3 * q + 10));
    w.shape = out.cases % 4 == 3 ? Window::Shape::Box : Window::Shape::Bump;
    const auto c = completion_identity_check(phase, w);
    out.max_scaled_residual = std::max(out.max_scaled_residual, c.residual / w.length);
    out.max_tail = std::max(out.max_tail, c.tail);
    ++out.cases;
  }
  return out;
}

}  // namespace sqmod
