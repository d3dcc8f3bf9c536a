#include <doctest.h>

#include <stdexcept>

#include "sqmod/params.hpp"

using sqmod::Rational;
using sqmod::parse_rational;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("parse_rational accepts fractions and decimals") {
  CHECK(q("1/19.5") == frac(2, 39));
  CHECK(q("0.00001") == frac(1, 100000));
  CHECK(q("3") == Rational(3));
  CHECK(q("-2/4") == frac(-1, 2));
  CHECK_THROWS_AS(q("abc"), std::invalid_argument);
  CHECK_THROWS_AS(q("1/0"), std::invalid_argument);
}

TEST_CASE("derived exponents are exact") {
  auto p = sqmod::derive_parameters(q("1/19.5"), q("1/4000"), q("1/100000"), Rational(0));
  CHECK(p.z_exp == frac(2, 39) - frac(1, 2000) - frac(1, 100000));
  CHECK(p.d_exp == frac(1, 2) + frac(1, 2000));
  CHECK(p.alpha_threshold == frac(1, 8) + frac(1, 39) - frac(5, 8000));
  CHECK(p.gap.outer.lo == frac(1, 2) - frac(2, 39));
  CHECK(p.gap.inner.hi == frac(1, 2) + frac(1, 2000));
  CHECK_FALSE(p.gamma.has_value());
}

TEST_CASE("derive_parameters rejects degenerate input") {
  CHECK_THROWS_AS(sqmod::derive_parameters(q("1/4"), q("1/8"), Rational(0), Rational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sqmod::derive_parameters(Rational(0), q("1/4000"), Rational(0), Rational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sqmod::derive_parameters(q("1/19.5"), Rational(1), Rational(0), Rational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sqmod::derive_parameters(q("1/19.5"), q("1/4000"), frac(-1, 10), Rational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sqmod::derive_parameters(q("1/2"), q("1/4000"), Rational(0), Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("max admissible delta") {
  auto ref = sqmod::max_admissible_delta(q("1/19.5"), q("1/4000"));
  const Rational expected = (1 - Rational(19) / q("19.5") - frac(90, 4000)) / 71;
  CHECK(ref.value == expected);
  CHECK(Rational(19) / q("19.5") + frac(90, 4000) + 71 * ref.value == 1);
  CHECK(ref.value > 0);
  CHECK(ref.value.get_d() == doctest::Approx(4.424e-5).epsilon(1e-3));
  // gamma = sigma makes the Type II constraint and the sigma constraint coincide
  CHECK(ref.binding == "type_ii_main");

  CHECK(sqmod::max_admissible_delta(q("1/19"), q("1/4000")).value <= 0);
  CHECK(sqmod::max_admissible_delta(q("1/40"), Rational(0)).value == frac(21, 2840));
}

TEST_CASE("delta threshold is monotone in sigma") {
  Rational prev = sqmod::max_admissible_delta(q("1/30"), q("1/4000")).value;
  for (int k = 29; k >= 19; --k) {
    Rational cur = sqmod::max_admissible_delta(Rational(1, k), q("1/4000")).value;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("type II range membership") {
  auto p = sqmod::derive_parameters(q("1/19.5"), q("1/4000"), q("1/100000"), Rational(0));
  CHECK_FALSE(sqmod::check_type_ii_range(frac(1, 2), p));
  CHECK(sqmod::check_type_ii_range(frac(1, 2) - q("1/19.5"), p));
  CHECK(sqmod::check_type_ii_range(q("0.46"), p));
  CHECK_FALSE(sqmod::check_type_ii_range(frac(1, 2) - q("1/19.5") - frac(1, 1000000), p));
  // inner gap includes delta
  CHECK_FALSE(sqmod::check_type_ii_range(frac(1, 2) - frac(1, 2000) - frac(1, 100000), p));
  CHECK(sqmod::check_type_ii_range(frac(1, 2) - frac(1, 2000) - frac(2, 100000), p));
}

TEST_CASE("type II range is symmetric about 1/2") {
  auto p = sqmod::SieveParameters::reference();
  for (int k = 1; k < 1000; ++k) {
    Rational x(k, 1000);
    CHECK(sqmod::check_type_ii_range(x, p) == sqmod::check_type_ii_range(1 - x, p));
  }
}

TEST_CASE("gap set membership") {
  auto p = sqmod::SieveParameters::reference();
  CHECK(p.gap.contains(frac(45, 100)));
  CHECK_FALSE(p.gap.contains(frac(1, 2)));
  CHECK(p.gap.contains(frac(1, 2) + frac(1, 2000)) == false);
  CHECK(p.gap.contains(frac(1, 2) + frac(1, 1999)));
  auto f = p.gap.fast();
  CHECK(f.contains(0.54));
  CHECK_FALSE(f.contains(0.44));
  CHECK_FALSE(f.contains(0.5));
}

TEST_CASE("factorization windows") {
  auto p = sqmod::derive_parameters(q("1/19.5"), q("1/4000"), q("1/100000"), Rational(0));
  const Rational w = q("1/4000"), d = q("1/100000"), g = q("1/19.5");

  auto edge = sqmod::factorization_windows(p, 2 * w + d);
  CHECK(edge.w_exp == 0);

  auto top = sqmod::factorization_windows(p, g);
  CHECK(top.q_window.lo == 4 * w + 2 * g + 2 * d);
  CHECK(top.q_window.hi == 4 * w + 2 * g + 3 * d);
  CHECK(top.type_i_q_window.lo == 16 * w + 8 * d);
  CHECK(top.type_i_q_window.hi == 16 * w + 9 * d);
  // M = X^(1/2+gamma), RQ = X^(1/2+2 varpi)
  CHECK(top.w_exp == 2 * (frac(1, 2) + g) - 2 * d - 2 * (frac(1, 2) + 2 * w));

  CHECK_THROWS_AS(sqmod::factorization_windows(p, 2 * w), std::invalid_argument);
  CHECK_THROWS_AS(sqmod::factorization_windows(p, g + frac(1, 1000000)), std::invalid_argument);
}

TEST_CASE("windows are ordered over the legal gamma range") {
  auto p = sqmod::derive_parameters(q("1/19.5"), q("1/4000"), q("1/100000"), Rational(0));
  const Rational lo = 2 * p.varpi + p.delta;
  const Rational hi = p.sigma;
  for (int i = 0; i <= 64; ++i) {
    Rational g = lo + (hi - lo) * Rational(i, 64);
    auto fw = sqmod::factorization_windows(p, g);
    CHECK(fw.r_window.lo <= fw.r_window.hi);
    CHECK(fw.q_window.lo <= fw.q_window.hi);
    CHECK(fw.type_i_q_window.lo <= fw.type_i_q_window.hi);
    CHECK(fw.w_exp >= 0);
  }
}

TEST_CASE("derivation is pure") {
  auto a = sqmod::derive_parameters(q("1/19.5"), q("1/4000"), q("1/100000"), Rational(0));
  auto b = sqmod::derive_parameters(q("1/19.5"), q("1/4000"), q("1/100000"), Rational(0));
  CHECK(a.z_exp == b.z_exp);
  CHECK(a.alpha_threshold == b.alpha_threshold);
  CHECK(a.gap.outer.lo == b.gap.outer.lo);
  CHECK(sqmod::to_string(a.z_exp) == sqmod::to_string(b.z_exp));
}

TEST_CASE("constraint report") {
  auto p = sqmod::SieveParameters::reference();
  auto rep = sqmod::check_constraints(p);
  CHECK(rep.all_satisfied());
  for (const auto& e : rep.entries) {
    CHECK(e.margin == e.bound - e.value);
    CHECK(e.satisfied == (e.strict ? e.margin > 0 : e.margin >= 0));
  }

  auto at_limit = sqmod::derive_parameters(q("1/19.5"), q("1/4000"),
                                           sqmod::max_admissible_delta(q("1/19.5"), q("1/4000")).value,
                                           Rational(0));
  auto rep2 = sqmod::check_constraints(at_limit);
  CHECK_FALSE(rep2.all_satisfied());
  bool sigma_failed = false;
  for (const auto& e : rep2.entries)
    if (e.name == "sigma") sigma_failed = !e.satisfied && e.margin == 0;
  CHECK(sigma_failed);

  auto bad = sqmod::derive_parameters(q("1/19"), q("1/4000"), Rational(0), Rational(0));
  CHECK_FALSE(sqmod::check_constraints(bad).all_satisfied());
}
