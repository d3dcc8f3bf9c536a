#pragma once

// Integer polynomials just large enough for the phase functions
// A/n + B/(n + tau) + xi n after clearing denominators.

#include <cstdint>
#include <vector>

namespace sqmod {

/// Coefficients in increasing degree; trailing zeros trimmed.
struct IntPoly {
  std::vector<__int128> coeffs;

  IntPoly() = default;
  explicit IntPoly(std::vector<__int128> c);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }

  IntPoly derivative() const;
  /// Coefficients reduced into [0, p).
  std::vector<std::uint64_t> reduce(std::uint64_t p) const;
  /// gcd of p with all coefficients.
  std::uint64_t content_gcd(std::uint64_t p) const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
};

/// Polynomials over Z/pZ, coefficients in [0, p), trimmed.
namespace modp {
using Poly = std::vector<std::uint64_t>;
void trim(Poly& a);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
Poly derivative(const Poly& a, std::uint64_t p);
std::uint64_t eval(const Poly& a, std::uint64_t x, std::uint64_t p);
}  // namespace modp

/// f = num / den over Z, coprime as integer polynomials.
struct IntRationalFunction {
  IntPoly num;
  IntPoly den;

  /// Numerator of f' = (num' den - num den') / den^2, reduced mod p.
  modp::Poly derivative_numerator_mod(std::uint64_t p) const;
};

}  // namespace sqmod
