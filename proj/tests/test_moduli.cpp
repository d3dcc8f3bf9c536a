#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sqmod/modarith.hpp"
#include "sqmod/moduli.hpp"
#include "sqmod/sieve.hpp"

using sqmod::u64;

TEST_CASE("the K = 2 family at X = 1e8") {
  sqmod::FamilyConfig cfg;
  auto f = sqmod::build_family(cfg);
  CHECK(f.D == doctest::Approx(std::pow(1e8, 0.5005)));
  CHECK(f.base == doctest::Approx(std::pow(1e8, 0.5005 / 4)));
  REQUIRE(f.intervals.size() == 2);
  CHECK(f.intervals[0].primes == std::vector<u64>{11, 13, 17, 19});
  CHECK(f.intervals[1].primes == std::vector<u64>{23, 29, 31, 37});
  CHECK(f.total_members == 16);
  CHECK(f.members.size() == 16);
  CHECK(f.members.front().d == 11 * 23);
  CHECK(f.members.back().d == 19 * 37);
  for (std::size_t i = 1; i < f.members.size(); ++i) CHECK(f.members[i - 1].d < f.members[i].d);
  // Q = 1 at this scale; the split is logged rather than forced
  CHECK(f.split_index == 2);
  CHECK_FALSE(f.split_in_window);
  CHECK_FALSE(f.split_note.empty());
}

TEST_CASE("family invariants") {
  for (int K : {1, 2, 3, 4}) {
    sqmod::FamilyConfig cfg;
    cfg.K = K;
    cfg.X = 100'000'000;
    auto f = sqmod::build_family(cfg);
    CHECK(f.d_sq_lo == doctest::Approx(std::pow(2.0, K * (K - 1)) * f.D));
    CHECK(f.d_sq_hi == doctest::Approx(std::pow(2.0, K * (K + 1)) * f.D));
    for (const auto& m : f.members) {
      const double d_sq = static_cast<double>(m.d) * static_cast<double>(m.d);
      CHECK(d_sq > f.d_sq_lo);
      CHECK(d_sq <= f.d_sq_hi);
      CHECK(m.r * m.q == m.d);
      CHECK(std::gcd(m.r, m.q) == 1);
      CHECK(sqmod::is_squarefree(m.d));
      REQUIRE(m.primes.size() == static_cast<std::size_t>(K));
      for (int j = 0; j < K; ++j) {
        CHECK(static_cast<double>(m.primes[j]) > f.intervals[j].lo);
        CHECK(static_cast<double>(m.primes[j]) <= f.intervals[j].hi);
      }
    }
  }
}

TEST_CASE("K = 1 gives squares of single primes") {
  sqmod::FamilyConfig cfg;
  cfg.K = 1;
  auto f = sqmod::build_family(cfg);
  REQUIRE(f.intervals.size() == 1);
  CHECK(f.members.size() == f.intervals[0].primes.size());
  for (const auto& m : f.members) {
    CHECK(m.primes.size() == 1);
    CHECK(m.d == m.primes[0]);
  }
}

TEST_CASE("sampling members is seeded") {
  sqmod::FamilyConfig cfg;
  cfg.K = 3;
  cfg.max_members = 10;
  auto a = sqmod::build_family(cfg), b = sqmod::build_family(cfg);
  CHECK(a.members.size() == 10);
  CHECK(a.total_members > 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(a.members[i].d == b.members[i].d);
}

TEST_CASE("family errors") {
  sqmod::FamilyConfig cfg;
  cfg.X = 999'999;
  CHECK_THROWS_AS(sqmod::build_family(cfg), std::invalid_argument);
  cfg.X = 100'000'000;
  cfg.K = 0;
  CHECK_THROWS_AS(sqmod::build_family(cfg), std::invalid_argument);
  cfg.K = 2;
  cfg.interval_base = 7.1;  // (7.1, 14.2] holds 11 and 13, (14.2, 28.4] is fine too
  CHECK_NOTHROW(sqmod::build_family(cfg));
  cfg.interval_base = 0.45;  // (0.45, 0.9] has no prime
  try {
    sqmod::build_family(cfg);
    FAIL("expected an empty interval");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("I_1") != std::string::npos);
  }
  cfg.interval_base = 1.5;  // (1.5, 3], (3, 6] fine
  CHECK_NOTHROW(sqmod::build_family(cfg));
}

TEST_CASE("z-score summary") {
  std::vector<sqmod::CountRow> rows(3);
  rows[0] = {7, 49, 100, 100.0, 0, 0};
  rows[1] = {11, 121, 0, 30.0, 0, 0};
  rows[2] = {13, 169, 0, 20.0, 0, 0};
  auto rep = sqmod::summarize_counts(1000, 1, 500, rows, {});
  CHECK(rep.rows[0].ratio == 1.0);
  CHECK(rep.rows[0].z == 0.0);
  CHECK(rep.rows[1].z == doctest::Approx(-std::sqrt(30.0)));
  CHECK(rep.anomalies == std::vector<u64>{11});
  CHECK(rep.fraction_below_threshold == doctest::Approx(2.0 / 3.0));
  CHECK(rep.fraction_in_band == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("equidistribution at moderate scale") {
  sqmod::FamilyConfig cfg;
  cfg.X = 10'000'000;
  auto f = sqmod::build_family(cfg);
  auto rep = sqmod::equidistribution_report(f, 1);
  CHECK(rep.skipped.empty());
  CHECK(rep.rows.size() == f.members.size());
  const u64 pi = sqmod::prime_count_in_progression_scan(cfg.X, 1, 0);
  CHECK(rep.interval_primes == pi);
  CHECK(rep.anomalies.empty());
  for (const auto& row : rep.rows) {
    CHECK(row.expectation == doctest::Approx(static_cast<double>(pi) / static_cast<double>(sqmod::euler_phi(row.d_sq))));
    CHECK(row.count == sqmod::prime_count_in_progression_scan(cfg.X, row.d_sq, 1));
  }
  // expectations are only 5 to 20 here, so only the Poisson band is meaningful
  CHECK(rep.fraction_in_band >= 0.9);

  // a = 11 shares a factor with the moduli containing 11
  auto skip = sqmod::equidistribution_report(f, 11);
  CHECK(skip.skipped.size() == 4);
  CHECK(skip.rows.size() == f.members.size() - 4);
}

TEST_CASE("empty family is rejected") {
  sqmod::ModuliFamily f;
  CHECK_THROWS_AS(sqmod::equidistribution_report(f, 1), std::invalid_argument);
}
