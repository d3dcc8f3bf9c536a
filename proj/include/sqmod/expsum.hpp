#pragma once

// Complete and incomplete exponential sums with rational phases, and the
// bound formulas they are compared against.
//
// Convention: e_q(a/b) = 0 whenever b is not invertible modulo q.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sqmod/modarith.hpp"
#include "sqmod/polynomial.hpp"

namespace sqmod {

using cplx = std::complex<double>;

/// The phase is degenerate modulo p: (p, f1) > 1 or every coefficient of the
/// numerator of f' vanishes mod p.
class DegeneratePhase : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// n -> e_{d1}(c1/n) e_{d2}(c2/(n+tau)) e_{[d1,d2]}(xi n), d1 and d2 cube-free.
class RationalPhase {
 public:
  RationalPhase(i64 c1, u64 d1, i64 c2 = 0, u64 d2 = 1, i64 tau = 0, i64 xi = 0);

  i64 c1() const { return c1_; }
  u64 d1() const { return d1_; }
  i64 c2() const { return c2_; }
  u64 d2() const { return d2_; }
  i64 tau() const { return tau_; }
  i64 xi() const { return xi_; }
  /// [d1, d2]
  u64 modulus() const { return l_; }

  /// f(n) mod [d1,d2], or nullopt when a denominator is not invertible.
  std::optional<u64> residue(i64 n) const;
  cplx value(i64 n) const;

  /// f = f1/f2 over Z in lowest terms, with A = (c1 mod d1)[d1,d2]/d1,
  /// B = (c2 mod d2)[d1,d2]/d2 and xi, tau reduced mod [d1,d2]:
  /// f = A/n + B/(n+tau) + xi n. Vanishing terms are dropped.
  IntRationalFunction z_form() const;

 private:
  i64 c1_, c2_, tau_, xi_;
  u64 d1_, d2_, l_;
  u64 a_, b_, x_;  // reduced coefficients
};

/// Sum over n mod p. Requires p prime and [d1,d2] | p.
cplx complete_sum_prime(const RationalPhase& phase, u64 p);

/// Residues alpha mod p with f2(alpha) != 0 and f'(alpha) = 0 (mod p).
/// Throws DegeneratePhase, or std::invalid_argument for p not an odd prime.
std::vector<u64> critical_points(const RationalPhase& phase, u64 p);

struct PrimeSquareSum {
  cplx total;
  std::vector<cplx> branch_sums;  ///< indexed by alpha mod p
  std::vector<u64> critical;
  int deg_f1 = 0;
  int deg_f2 = 0;
  double bound = 0.0;  ///< (deg f1 + deg f2) p
};

/// Sum over n mod p^2 split into branches n = alpha (p). Requires p odd prime,
/// p^2 <= 10^8 and [d1,d2] = p^2; degenerate phases throw DegeneratePhase.
PrimeSquareSum complete_sum_prime_square(const RationalPhase& phase, u64 p);

/// c_q(n) by direct summation.
i64 ramanujan(u64 q, i64 n);

/// Max over n mod q1 q2 of |e_q(f(n)) - e_{q1}(f(n)/q2) e_{q2}(f(n)/q1)|,
/// f taken in lowest terms. Requires (q1, q2) = 1 and [d1,d2] | q1 q2.
double crt_split_check(const RationalPhase& phase, u64 q1, u64 q2);

/// Smooth weight psi((x - x0)/N). Bump: the fixed C-infinity bump on [1, 2],
/// equal to 1 on [1.05, 1.95]. Box: indicator of [x0 + N, x0 + 2N].
struct Window {
  enum class Shape { Bump, Box };
  double x0 = 0.0;
  double length = 0.0;
  Shape shape = Shape::Bump;

  /// Box window covering exactly the integers in [a, b].
  static Window box(i64 a, i64 b);
  double weight(double x) const;
  /// Integer range carrying nonzero weight; empty when first > last.
  i64 first() const;
  i64 last() const;
};

/// The reference bump on [1, 2].
double reference_bump(double t);

/// sum_n psi_N(n) phase(n).
cplx incomplete_sum(const RationalPhase& phase, const Window& window);

struct CompletionCheck {
  cplx lhs;
  cplx main_term;       ///< (M'/q) sum_n f(n)
  double residual = 0;  ///< |lhs - full dual sum|
  double cutoff = 0;    ///< q N^(eps-1)
  double tail = 0;      ///< sum of |dual terms| with |xi| > cutoff
};

/// Finite Fourier identity sum_m psi(m) f(m) = sum_xi psihat(xi) Fhat(xi) for
/// f given by its q values.
CompletionCheck completion_identity_check(std::span<const cplx> f, const Window& window, double eps = 0.1);
CompletionCheck completion_identity_check(const RationalPhase& phase, const Window& window, double eps = 0.1);

struct BoundContext {
  u64 b = 1;
  u64 q = 1;
  u64 q1 = 1;
  u64 delta0 = 1;
  u64 delta1p = 1;
  u64 delta2p = 1;
  i64 c1 = 0;
  i64 c2 = 0;
  double N = 0;
};

/// Builds the context for summing `phase` over n = t (b) with length N.
/// Throws std::invalid_argument if b is not a unitary divisor of [d1,d2] or
/// (q/delta0, delta0) > 1.
BoundContext make_bound_context(const RationalPhase& phase, u64 b, double N);

/// q1^(1/2) + (N/b) (c1,d1')/d1' (c2,d2')/d2'; X^eps omitted.
double pv_bound(const BoundContext& ctx);

struct SmoothFactorization {
  u64 q1 = 1;
  u64 r = 1;
  u64 s = 1;
  double delta = 0;
  double X = 1;
  double r_lo = 1;  ///< X^(-2 delta/3) q1^(1/3)
  double r_hi = 1;  ///< X^(delta/3) q1^(1/3)
};

/// Greedy split q1 = r s. Throws std::invalid_argument if q1 is not cube-free
/// or has a prime factor >= X^(delta/2), std::domain_error if no admissible r
/// is found.
SmoothFactorization smooth_factorize(u64 q1, double delta, double X);

/// (N/b)^(1/2) q1^(1/6) X^(delta/6) + (N/b) (c1,d1')/d1' (c2,d2')/d2'.
double vdc_bound(const BoundContext& ctx, const SmoothFactorization& fact);

struct GcdSumCheck {
  u64 sum = 0;
  u64 bound = 0;
  bool ok = false;
};

GcdSumCheck gcd_sum_check(i64 q, u64 L);

}  // namespace sqmod
