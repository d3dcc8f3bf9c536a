#include "sqmod/modarith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sqmod {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<u64> mod_inverse(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    const i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return std::nullopt;
  return mod_floor(t, m);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, int>> factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  std::vector<std::pair<u64, int>> result;
  for (u64 p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    result.emplace_back(p, e);
  }
  std::vector<u64> rest;
  factor_into(n, rest);
  std::sort(rest.begin(), rest.end());
  for (u64 p : rest) {
    if (!result.empty() && result.back().first == p)
      ++result.back().second;
    else
      result.emplace_back(p, 1);
  }
  return result;
}

bool is_cube_free(u64 n) {
  for (auto [p, e] : factorize(n))
    if (e >= 3) return false;
  return true;
}

bool is_squarefree(u64 n) {
  for (auto [p, e] : factorize(n))
    if (e >= 2) return false;
  return true;
}

int moebius(u64 n) {
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

u64 divisor_count(u64 n) {
  u64 t = 1;
  for (auto [p, e] : factorize(n)) t *= static_cast<u64>(e + 1);
  return t;
}

u64 largest_prime_factor(u64 n) {
  const auto f = factorize(n);
  return f.empty() ? 1 : f.back().first;
}

u64 lcm_checked(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  const unsigned __int128 l = static_cast<unsigned __int128>(a / std::gcd(a, b)) * b;
  if (l >> 64) throw std::overflow_error("lcm exceeds 64 bits");
  return static_cast<u64>(l);
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || hi <= lo) return out;
  std::vector<bool> composite(hi + 1, false);
  for (u64 p = 2; p * p <= hi; ++p)
    if (!composite[p])
      for (u64 m = p * p; m <= hi; m += p) composite[m] = true;
  for (u64 n = std::max<u64>(lo + 1, 2); n <= hi; ++n)
    if (!composite[n]) out.push_back(n);
  return out;
}

}  // namespace sqmod
