#include "sqmod/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <string>

#include "sqmod/kernels/kernels.hpp"

namespace sqmod {

namespace {

constexpr u64 kTableLimit = u64{1} << 22;

const kernels::PhaseTable& table_for(u64 q) {
  thread_local std::map<u64, std::unique_ptr<kernels::PhaseTable>> cache;
  auto it = cache.find(q);
  if (it != cache.end()) return *it->second;
  if (cache.size() >= 256) cache.clear();
  auto [pos, _] = cache.emplace(q, std::make_unique<kernels::PhaseTable>(static_cast<std::uint32_t>(q)));
  return *pos->second;
}

cplx e_q(u64 r, u64 q) {
  const double t = 2.0 * std::numbers::pi * (static_cast<double>(r) / static_cast<double>(q));
  return {std::cos(t), std::sin(t)};
}

/// Sum of e_q(r) over the given residues.
cplx residue_sum(std::span<const std::uint32_t> residues, u64 q) {
  if (q <= kTableLimit) {
    const auto& t = table_for(q);
    return kernels::active().phase_sum(residues, t.cos_values(), t.sin_values());
  }
  cplx s = 0;
  for (auto r : residues) s += e_q(r, q);
  return s;
}

u64 abs_gcd(i64 c, u64 m) { return std::gcd(static_cast<u64>(c < 0 ? -c : c), m); }

void require_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

}  // namespace

RationalPhase::RationalPhase(i64 c1, u64 d1, i64 c2, u64 d2, i64 tau, i64 xi)
    : c1_(c1), c2_(c2), tau_(tau), xi_(xi), d1_(d1), d2_(d2) {
  if (d1 == 0 || d2 == 0) throw std::invalid_argument("phase moduli must be positive");
  if (!is_cube_free(d1) || !is_cube_free(d2)) throw std::invalid_argument("phase moduli must be cube-free");
  l_ = lcm_checked(d1, d2);
  if (l_ > 0xFFFFFFFFull) throw std::invalid_argument("[d1,d2] must fit in 32 bits");
  a_ = mod_floor(c1, d1) * (l_ / d1);
  b_ = mod_floor(c2, d2) * (l_ / d2);
  x_ = mod_floor(xi, l_);
}

std::optional<u64> RationalPhase::residue(i64 n) const {
  u64 r = 0;
  if (d1_ > 1) {
    const auto inv = mod_inverse(mod_floor(n, d1_), d1_);
    if (!inv) return std::nullopt;
    r = mulmod(mod_floor(c1_, d1_), *inv, d1_) * (l_ / d1_);
  }
  if (d2_ > 1) {
    const auto inv = mod_inverse((mod_floor(n, d2_) + mod_floor(tau_, d2_)) % d2_, d2_);
    if (!inv) return std::nullopt;
    r = (r + mulmod(mod_floor(c2_, d2_), *inv, d2_) * (l_ / d2_)) % l_;
  }
  r = (r + mulmod(x_, mod_floor(n, l_), l_)) % l_;
  return r;
}

cplx RationalPhase::value(i64 n) const {
  const auto r = residue(n);
  return r ? e_q(*r, l_) : cplx{0.0, 0.0};
}

IntRationalFunction RationalPhase::z_form() const {
  using I = __int128;
  const I t = static_cast<I>(mod_floor(tau_, l_));
  I a = a_, b = b_;
  const I x = x_;
  if (t == 0) {
    a = (a + b) % l_;
    b = 0;
  }
  IntRationalFunction f;
  if (a != 0 && b != 0) {
    // A(n + t) + B n + x n^2 (n + t) over n (n + t)
    f.num = IntPoly({a * t, a + b}) + IntPoly({0, 0, x * t, x});
    f.den = IntPoly({0, t, 1});
  } else if (a != 0) {
    f.num = IntPoly({a, 0, x});
    f.den = IntPoly({0, 1});
  } else if (b != 0) {
    f.num = IntPoly({b, x * t, x});
    f.den = IntPoly({t, 1});
  } else {
    f.num = IntPoly({0, x});
    f.den = IntPoly({1});
  }
  return f;
}

cplx complete_sum_prime(const RationalPhase& phase, u64 p) {
  require_prime(p);
  if (p % phase.modulus() != 0) throw std::invalid_argument("[d1,d2] must divide p");
  std::vector<std::uint32_t> residues;
  residues.reserve(p);
  const u64 scale = p / phase.modulus();
  for (u64 n = 0; n < p; ++n)
    if (auto r = phase.residue(static_cast<i64>(n))) residues.push_back(static_cast<std::uint32_t>(*r * scale));
  return residue_sum(residues, p);
}

std::vector<u64> critical_points(const RationalPhase& phase, u64 p) {
  require_prime(p);
  if (p == 2) throw std::invalid_argument("critical points need an odd prime");
  const IntRationalFunction f = phase.z_form();
  if (f.den.content_gcd(p) != 1) throw DegeneratePhase("(p, f2) > 1");
  if (f.num.content_gcd(p) != 1) throw DegeneratePhase("(p, f1) > 1");
  const modp::Poly deriv = f.derivative_numerator_mod(p);
  if (deriv.empty()) throw DegeneratePhase("f' vanishes identically mod p");
  const modp::Poly den = f.den.reduce(p);
  std::vector<u64> out;
  for (u64 a = 0; a < p; ++a)
    if (modp::eval(den, a, p) != 0 && modp::eval(deriv, a, p) == 0) out.push_back(a);
  return out;
}

PrimeSquareSum complete_sum_prime_square(const RationalPhase& phase, u64 p) {
  require_prime(p);
  if (p == 2) throw std::invalid_argument("p must be odd");
  const u64 q = p * p;
  if (q > 100'000'000) throw std::invalid_argument("p^2 exceeds 10^8");
  if (phase.modulus() != q) throw std::invalid_argument("[d1,d2] must equal p^2");

  PrimeSquareSum out;
  out.critical = critical_points(phase, p);
  const IntRationalFunction f = phase.z_form();
  out.deg_f1 = f.num.degree();
  out.deg_f2 = f.den.degree();
  out.bound = static_cast<double>(out.deg_f1 + out.deg_f2) * static_cast<double>(p);

  out.branch_sums.assign(p, cplx{});
  std::vector<std::uint32_t> residues;
  residues.reserve(p);
  for (u64 alpha = 0; alpha < p; ++alpha) {
    residues.clear();
    for (u64 t = 0; t < p; ++t)
      if (auto r = phase.residue(static_cast<i64>(alpha + t * p))) residues.push_back(static_cast<std::uint32_t>(*r));
    out.branch_sums[alpha] = residue_sum(residues, q);
  }
  for (const auto& s : out.branch_sums) out.total += s;
  return out;
}

i64 ramanujan(u64 q, i64 n) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  std::vector<std::uint32_t> residues;
  const u64 nm = mod_floor(n, q);
  for (u64 a = 0; a < q; ++a)
    if (std::gcd(a, q) == 1) residues.push_back(static_cast<std::uint32_t>(mulmod(a, nm, q)));
  const cplx s = residue_sum(residues, q);
  const double rounded = std::round(s.real());
  if (std::abs(s.imag()) >= 1e-9 || std::abs(s.real() - rounded) >= 1e-6)
    throw std::logic_error("Ramanujan sum is not an integer to working precision");
  return static_cast<i64>(rounded);
}

double crt_split_check(const RationalPhase& phase, u64 q1, u64 q2) {
  if (q1 == 0 || q2 == 0) throw std::invalid_argument("factors must be positive");
  if (std::gcd(q1, q2) != 1) throw std::invalid_argument("CRT factors must be coprime");
  const u64 q = q1 * q2;
  if (q % phase.modulus() != 0) throw std::invalid_argument("[d1,d2] must divide q1 q2");
  const IntRationalFunction f = phase.z_form();
  const u64 scale = q / phase.modulus();
  modp::Poly num = f.num.reduce(q);
  for (auto& c : num) c = mulmod(c, scale, q);
  const modp::Poly den = f.den.reduce(q);

  auto split_factor = [&](u64 a, u64 b, u64 qj) -> cplx {
    const auto inv = mod_inverse(mulmod(b % qj, (q / qj) % qj, qj), qj);
    if (!inv) return 0.0;
    return e_q(mulmod(a % qj, *inv, qj), qj);
  };

  double worst = 0.0;
  for (u64 n = 0; n < q; ++n) {
    const u64 a = modp::eval(num, n, q);
    const u64 b = modp::eval(den, n, q);
    const auto inv = mod_inverse(b, q);
    const cplx direct = inv ? e_q(mulmod(a, *inv, q), q) : cplx{0.0, 0.0};
    const cplx split = split_factor(a, b, q1) * split_factor(a, b, q2);
    worst = std::max(worst, std::abs(direct - split));
  }
  return worst;
}

namespace {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

constexpr double kRamp = 0.05;

}  // namespace

double reference_bump(double t) {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  if (t < 1.0 + kRamp) return smooth_step((t - 1.0) / kRamp);
  if (t > 2.0 - kRamp) return smooth_step((2.0 - t) / kRamp);
  return 1.0;
}

Window Window::box(i64 a, i64 b) {
  Window w;
  w.length = static_cast<double>(b - a);
  w.x0 = static_cast<double>(a) - w.length;
  w.shape = Shape::Box;
  return w;
}

double Window::weight(double x) const {
  if (length <= 0.0) return 0.0;
  if (shape == Shape::Box) return (x >= x0 + length && x <= x0 + 2.0 * length) ? 1.0 : 0.0;
  return reference_bump((x - x0) / length);
}

i64 Window::first() const { return static_cast<i64>(std::ceil(x0 + length)); }
i64 Window::last() const { return length <= 0.0 ? first() - 1 : static_cast<i64>(std::floor(x0 + 2.0 * length)); }

cplx incomplete_sum(const RationalPhase& phase, const Window& window) {
  if (window.length > 1e7) throw std::invalid_argument("window length exceeds 10^7");
  cplx s = 0;
  for (i64 n = window.first(); n <= window.last(); ++n) {
    const double w = window.weight(static_cast<double>(n));
    if (w != 0.0) s += w * phase.value(n);
  }
  return s;
}

CompletionCheck completion_identity_check(std::span<const cplx> f, const Window& window, double eps) {
  const u64 q = f.size();
  if (q == 0) throw std::invalid_argument("empty function table");
  CompletionCheck out;
  std::vector<double> mass(q, 0.0);  // sum of psi(m) over m = r (q)
  for (i64 m = window.first(); m <= window.last(); ++m) {
    const double w = window.weight(static_cast<double>(m));
    if (w == 0.0) continue;
    const u64 r = mod_floor(m, q);
    mass[r] += w;
    out.lhs += w * f[r];
  }
  cplx rhs = 0;
  out.cutoff = window.length > 0 ? static_cast<double>(q) * std::pow(window.length, eps - 1.0) : 0.0;
  for (u64 xi = 0; xi < q; ++xi) {
    cplx psi_hat = 0, f_hat = 0;
    for (u64 r = 0; r < q; ++r) {
      const u64 k = mulmod(xi, r, q);
      if (mass[r] != 0.0) psi_hat += mass[r] * e_q((q - k) % q, q);
      f_hat += f[r] * e_q(k, q);
    }
    psi_hat /= static_cast<double>(q);
    const cplx term = psi_hat * f_hat;
    rhs += term;
    if (xi == 0) out.main_term = term;
    const double centered = xi <= q / 2 ? static_cast<double>(xi) : static_cast<double>(q - xi);
    if (centered > out.cutoff) out.tail += std::abs(term);
  }
  out.residual = std::abs(out.lhs - rhs);
  return out;
}

CompletionCheck completion_identity_check(const RationalPhase& phase, const Window& window, double eps) {
  std::vector<cplx> f(phase.modulus());
  for (u64 n = 0; n < f.size(); ++n) f[n] = phase.value(static_cast<i64>(n));
  return completion_identity_check(f, window, eps);
}

BoundContext make_bound_context(const RationalPhase& phase, u64 b, double N) {
  const u64 l = phase.modulus();
  if (b == 0 || l % b != 0) throw std::invalid_argument("b must divide [d1,d2]");
  if (std::gcd(b, l / b) != 1) throw std::invalid_argument("(b, [d1,d2]/b) must be 1");
  BoundContext ctx;
  ctx.b = b;
  ctx.q = l / b;
  ctx.q1 = ctx.q / phase.z_form().num.content_gcd(ctx.q);
  const u64 g = std::gcd(phase.d1(), phase.d2());
  const u64 delta1 = phase.d1() / g;
  const u64 delta2 = phase.d2() / g;
  ctx.delta1p = delta1 / std::gcd(b, delta1);
  ctx.delta2p = delta2 / std::gcd(b, delta2);
  ctx.delta0 = std::gcd(ctx.q, g);
  if (std::gcd(ctx.q / ctx.delta0, ctx.delta0) != 1)
    throw std::invalid_argument("hypothesis (q/delta0, delta0) = 1 fails");
  ctx.c1 = phase.c1();
  ctx.c2 = phase.c2();
  ctx.N = N;
  return ctx;
}

namespace {

double diagonal_term(const BoundContext& ctx) {
  const double r1 = static_cast<double>(abs_gcd(ctx.c1, ctx.delta1p)) / static_cast<double>(ctx.delta1p);
  const double r2 = static_cast<double>(abs_gcd(ctx.c2, ctx.delta2p)) / static_cast<double>(ctx.delta2p);
  return ctx.N / static_cast<double>(ctx.b) * r1 * r2;
}

void require_smooth(u64 q1, double delta, double X) {
  if (!is_cube_free(q1)) throw std::invalid_argument("q1 must be cube-free");
  const double limit = std::pow(X, delta / 2.0);
  for (auto [p, e] : factorize(q1))
    if (static_cast<double>(p) >= limit)
      throw std::invalid_argument("q1 has prime factor " + std::to_string(p) + " >= X^(delta/2)");
}

}  // namespace

double pv_bound(const BoundContext& ctx) { return std::sqrt(static_cast<double>(ctx.q1)) + diagonal_term(ctx); }

SmoothFactorization smooth_factorize(u64 q1, double delta, double X) {
  if (q1 == 0) throw std::invalid_argument("q1 must be positive");
  require_smooth(q1, delta, X);
  SmoothFactorization out;
  out.q1 = q1;
  out.delta = delta;
  out.X = X;
  const double target = std::cbrt(static_cast<double>(q1));
  out.r_lo = std::pow(X, -2.0 * delta / 3.0) * target;
  out.r_hi = std::pow(X, delta / 3.0) * target;

  std::vector<u64> blocks;
  for (auto [p, e] : factorize(q1)) blocks.push_back(e == 1 ? p : p * p);
  std::sort(blocks.begin(), blocks.end());
  const double slack = 1.0 + 1e-12;
  u64 r = 1;
  for (u64 f : blocks) {
    if (static_cast<double>(r) >= target) break;
    if (static_cast<double>(r) * static_cast<double>(f) > out.r_hi * slack) continue;
    r *= f;
  }
  if (static_cast<double>(r) * slack < out.r_lo || static_cast<double>(r) > out.r_hi * slack)
    throw std::domain_error("no factor of " + std::to_string(q1) + " lands in the r window");
  out.r = r;
  out.s = q1 / r;
  if (std::gcd(out.r, out.s) != 1) throw std::logic_error("smooth factorization is not coprime");
  return out;
}

double vdc_bound(const BoundContext& ctx, const SmoothFactorization& fact) {
  if (fact.q1 != ctx.q1) throw std::invalid_argument("factorization does not match q1");
  require_smooth(fact.q1, fact.delta, fact.X);
  const double lead = std::sqrt(ctx.N / static_cast<double>(ctx.b)) * std::cbrt(std::sqrt(static_cast<double>(ctx.q1))) *
                      std::pow(fact.X, fact.delta / 6.0);
  return lead + diagonal_term(ctx);
}

GcdSumCheck gcd_sum_check(i64 q, u64 L) {
  if (q == 0) throw std::invalid_argument("q must be nonzero");
  if (L == 0) throw std::invalid_argument("L must be at least 1");
  const u64 aq = static_cast<u64>(q < 0 ? -q : q);
  GcdSumCheck out;
  for (u64 l = 1; l <= L; ++l) out.sum += std::gcd(l, aq);
  out.bound = divisor_count(aq) * L;
  out.ok = out.sum <= out.bound;
  return out;
}

}  // namespace sqmod
