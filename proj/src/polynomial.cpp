#include "sqmod/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "sqmod/modarith.hpp"

namespace sqmod {

namespace {

void trim_int(std::vector<__int128>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

std::uint64_t reduce_one(__int128 v, std::uint64_t p) {
  __int128 r = v % static_cast<__int128>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

IntPoly::IntPoly(std::vector<__int128> c) : coeffs(std::move(c)) { trim_int(coeffs); }

IntPoly IntPoly::derivative() const {
  std::vector<__int128> d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.push_back(coeffs[i] * static_cast<__int128>(i));
  return IntPoly(std::move(d));
}

std::vector<std::uint64_t> IntPoly::reduce(std::uint64_t p) const {
  modp::Poly r;
  for (auto c : coeffs) r.push_back(reduce_one(c, p));
  modp::trim(r);
  return r;
}

std::uint64_t IntPoly::content_gcd(std::uint64_t p) const {
  std::uint64_t g = p;
  for (auto c : coeffs) g = std::gcd(g, reduce_one(c, p));
  return g;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<__int128> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return IntPoly(std::move(c));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<__int128> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<__int128> c(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return IntPoly(std::move(c));
}

namespace modp {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::uint64_t x = i < a.size() ? a[i] : 0;
    const std::uint64_t y = i < b.size() ? b[i] : 0;
    c[i] = x >= y ? x - y : x + (p - y);
  }
  trim(c);
  return c;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(c);
  return c;
}

Poly derivative(const Poly& a, std::uint64_t p) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mulmod(a[i], i % p, p));
  trim(d);
  return d;
}

std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = (mulmod(r, x, p) + a[i]) % p;
  return r;
}

}  // namespace modp

modp::Poly IntRationalFunction::derivative_numerator_mod(std::uint64_t p) const {
  const modp::Poly n = num.reduce(p);
  const modp::Poly d = den.reduce(p);
  return modp::sub(modp::mul(modp::derivative(n, p), d, p), modp::mul(n, modp::derivative(d, p), p), p);
}

}  // namespace sqmod
