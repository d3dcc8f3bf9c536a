#include "sqmod/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sqmod/modarith.hpp"

namespace sqmod {

namespace {

Rational distance(const Rational& x, const RationalInterval& w) {
  if (x < w.lo) return w.lo - x;
  if (x > w.hi) return x - w.hi;
  return 0;
}

}  // namespace

ModuliFamily build_family(const FamilyConfig& config) {
  if (config.X < 1'000'000) throw std::invalid_argument("X must be at least 10^6");
  if (config.K < 1 || config.K > 8) throw std::invalid_argument("K must lie in [1, 8]");

  ModuliFamily f;
  f.X = config.X;
  f.K = config.K;
  f.d_exp = Rational(1, 2) + 2 * config.varpi;
  f.D = std::pow(static_cast<double>(config.X), to_double(f.d_exp));
  f.P = std::pow(f.D, 1.0 / config.K);
  f.base = config.interval_base.value_or(std::sqrt(f.P));
  const double k = config.K;
  f.d_sq_lo = std::ldexp(f.D, static_cast<int>(k * (k - 1)));
  f.d_sq_hi = std::ldexp(f.D, static_cast<int>(k * (k + 1)));

  for (int j = 1; j <= config.K; ++j) {
    PrimeInterval iv;
    iv.j = j;
    iv.lo = std::ldexp(f.base, j - 1);
    iv.hi = std::ldexp(f.base, j);
    iv.primes = primes_in(static_cast<u64>(std::floor(iv.lo)), static_cast<u64>(std::floor(iv.hi)));
    std::erase_if(iv.primes, [&](u64 p) { return !(static_cast<double>(p) > iv.lo); });
    if (iv.primes.empty()) {
      std::ostringstream msg;
      msg << "interval I_" << j << " = (" << iv.lo << ", " << iv.hi << "] contains no prime";
      throw std::domain_error(msg.str());
    }
    f.intervals.push_back(std::move(iv));
  }

  // K0: the split whose Q exponent is closest to the Type I window.
  f.q_target = {16 * config.varpi + 8 * config.delta, 16 * config.varpi + 9 * config.delta};
  Rational best = -1;
  for (int k0 = 0; k0 <= config.K; ++k0) {
    const Rational qe = Rational(config.K - k0, config.K) * f.d_exp;
    const Rational dist = distance(qe, f.q_target);
    if (best < 0 || dist < best) {
      best = dist;
      f.split_index = k0;
      f.q_exp = qe;
    }
  }
  f.split_in_window = best == 0;
  if (!f.split_in_window) {
    f.split_note = "no split puts Q in [X^" + to_string(f.q_target.lo) + ", X^" + to_string(f.q_target.hi) +
                   "]; using K0 = " + std::to_string(f.split_index) + " with Q = X^" + to_string(f.q_exp);
  }

  u64 total = 1;
  for (const auto& iv : f.intervals) total *= iv.primes.size();
  f.total_members = total;

  std::vector<u64> indices(total);
  std::iota(indices.begin(), indices.end(), u64{0});
  if (config.max_members > 0 && config.max_members < total) {
    std::vector<u64> chosen;
    std::mt19937_64 rng(config.seed);
    std::sample(indices.begin(), indices.end(), std::back_inserter(chosen), config.max_members, rng);
    indices = std::move(chosen);
  }
  for (u64 idx : indices) {
    FamilyMember m;
    u64 rest = idx;
    for (const auto& iv : f.intervals) {
      m.primes.push_back(iv.primes[rest % iv.primes.size()]);
      rest /= iv.primes.size();
    }
    for (int j = 0; j < config.K; ++j) {
      m.d *= m.primes[j];
      (j < f.split_index ? m.r : m.q) *= m.primes[j];
    }
    f.members.push_back(std::move(m));
  }
  std::sort(f.members.begin(), f.members.end(), [](const auto& a, const auto& b) { return a.d < b.d; });
  return f;
}

CountReport summarize_counts(std::uint64_t X, std::int64_t a, std::uint64_t interval_primes,
                             std::vector<CountRow> rows, std::vector<std::string> skipped) {
  CountReport rep;
  rep.X = X;
  rep.a = a;
  rep.interval_primes = interval_primes;
  rep.skipped = std::move(skipped);
  std::size_t below = 0, in_band = 0;
  double ratio_sum = 0;
  for (auto& row : rows) {
    if (!(row.expectation > 0)) throw std::logic_error("expectation must be positive");
    row.ratio = static_cast<double>(row.count) / row.expectation;
    row.z = (static_cast<double>(row.count) - row.expectation) / std::sqrt(row.expectation);
    ratio_sum += row.ratio;
    below += row.ratio <= kRatioThreshold;
    in_band += std::abs(row.z) <= kPoissonBand;
    if (row.count == 0 && row.expectation > 25) rep.anomalies.push_back(row.d);
  }
  if (!rows.empty()) {
    const double n = static_cast<double>(rows.size());
    rep.mean_ratio = ratio_sum / n;
    rep.fraction_below_threshold = static_cast<double>(below) / n;
    rep.fraction_in_band = static_cast<double>(in_band) / n;
  }
  rep.rows = std::move(rows);
  return rep;
}

CountReport equidistribution_report(const ModuliFamily& family, std::int64_t a, const SieveOptions& options) {
  if (family.members.empty()) throw std::invalid_argument("empty moduli family");
  std::vector<u64> moduli, residues;
  std::vector<CountRow> rows;
  std::vector<std::string> skipped;
  for (const auto& m : family.members) {
    const u64 d_sq = m.d * m.d;
    const u64 r = mod_floor(a, d_sq);
    if (std::gcd(r, d_sq) != 1) {
      skipped.push_back("skip d=" + std::to_string(m.d) + ": (a, d^2) = " + std::to_string(std::gcd(r, d_sq)));
      continue;
    }
    moduli.push_back(d_sq);
    residues.push_back(r);
    CountRow row;
    row.d = m.d;
    row.d_sq = d_sq;
    rows.push_back(row);
  }
  const u64 interval_primes = count_primes(family.X, 2 * family.X, options);
  const auto counts = prime_counts_in_progressions(family.X, moduli, residues, options);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].count = counts[i];
    rows[i].expectation = static_cast<double>(interval_primes) / static_cast<double>(euler_phi(rows[i].d_sq));
  }
  return summarize_counts(family.X, a, interval_primes, std::move(rows), std::move(skipped));
}

}  // namespace sqmod
