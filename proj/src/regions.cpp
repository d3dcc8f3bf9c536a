#include "sqmod/regions.hpp"

#include <cmath>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sqmod {

std::string_view region_name(RegionId id) {
  switch (id) {
    case RegionId::F131: return "F131";
    case RegionId::F132: return "F132";
    case RegionId::G132: return "G132";
    case RegionId::F2: return "F2";
    case RegionId::G2: return "G2";
    case RegionId::F3: return "F3";
  }
  return "?";
}

RegionId region_from_name(std::string_view name) {
  for (RegionId id : kAllRegions)
    if (region_name(id) == name) return id;
  throw std::invalid_argument("unknown region '" + std::string(name) + "'");
}

int region_dimension(RegionId id) {
  switch (id) {
    case RegionId::F131: return 6;
    case RegionId::F132: return 4;
    case RegionId::G132: return 5;
    case RegionId::F2: return 2;
    case RegionId::G2: return 3;
    case RegionId::F3: return 2;
  }
  return 0;
}

WeightKind region_weight_kind(RegionId id) {
  return (id == RegionId::F132 || id == RegionId::F2) ? WeightKind::Prime : WeightKind::AlmostPrime;
}

IndexFamily all_subsets(int k) {
  IndexFamily out;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) out.push_back(mask);
  return out;
}

bool subset_sums_avoid(std::span<const double> alpha, const GapSet& gap, const IndexFamily& families) {
  const auto fast = gap.fast();
  for (std::uint32_t mask : families) {
    double s = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j)
      if (mask & (1u << j)) s += alpha[j];
    if (mask >> alpha.size()) throw std::invalid_argument("index family refers past the end of alpha");
    if (fast.contains(s)) return false;
  }
  return true;
}

double SamplingChart::measure() const {
  if (empty()) return 0.0;
  double m = 1.0;
  for (std::size_t j = 0; j < lo.size(); ++j) m *= logarithmic ? std::log(hi[j] / lo[j]) : hi[j] - lo[j];
  for (int i = 2; i <= sorted_prefix; ++i) m /= i;
  return m;
}

bool SamplingChart::empty() const {
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (!(hi[j] > lo[j]) || (logarithmic && !(lo[j] > 0.0))) return true;
  return false;
}

Region::Region(RegionId id, const SieveParameters& params, bool strict_gap)
    : id_(id),
      dim_(region_dimension(id)),
      strict_gap_(strict_gap),
      params_(params),
      gap_(params.gap.fast()),
      lo_(to_double(params.sigma - 2 * params.varpi)),
      half_minus_sigma_(to_double(Rational(1, 2) - params.sigma)),
      half_plus_sigma_(to_double(Rational(1, 2) + params.sigma)),
      half_minus_2varpi_(to_double(Rational(1, 2) - 2 * params.varpi)),
      alpha_thr_(to_double(params.alpha_threshold)) {}

bool Region::indicator(std::span<const double> alpha) const {
  if (static_cast<int>(alpha.size()) != dim_)
    throw std::invalid_argument(std::string("region ") + std::string(name()) + " expects " +
                                std::to_string(dim_) + " coordinates, got " + std::to_string(alpha.size()));
  return contains(alpha.data());
}

bool Region::subset_sums_clear(const double* a, int k) const {
  double sums[64];
  sums[0] = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const int low = __builtin_ctz(mask);
    sums[mask] = sums[mask & (mask - 1)] + a[low];
    if (gap_hit(sums[mask])) return false;
  }
  return true;
}

// Ordering, the upper cut 1/2 - sigma and the S1 conditions shared by the
// four-variable sets.
bool Region::in_v(const double* a) const {
  if (!(lo_ < a[3] && a[3] < a[2] && a[2] < a[1] && a[1] < a[0] && a[0] < half_minus_sigma_)) return false;
  if (!(a[0] + a[1] <= half_minus_sigma_)) return false;
  if (!(2 * a[1] <= std::max(2 * alpha_thr_, half_plus_sigma_ - a[0]))) return false;
  double partial = 0.0;
  for (int k = 0; k < 4; ++k) {
    partial += a[k];
    if (!(a[k] + partial <= 1.0)) return false;
  }
  if (!(partial >= half_minus_2varpi_)) return false;
  return subset_sums_clear(a, 4);
}

bool Region::in_w(const double* a) const {
  return lo_ < a[1] && a[1] < a[0] && a[0] + a[1] <= half_minus_sigma_ && a[1] > alpha_thr_ &&
         a[0] + 2 * a[1] > half_plus_sigma_;
}

bool Region::contains(const double* a) const {
  switch (id_) {
    case RegionId::F131: {
      if (!(lo_ < a[5])) return false;
      for (int j = 0; j < 5; ++j)
        if (!(a[j + 1] < a[j])) return false;
      if (!(a[0] < half_minus_sigma_)) return false;
      if (!(a[0] + a[1] + a[2] + a[3] <= half_minus_sigma_)) return false;
      if (!(2 * a[1] <= std::max(2 * alpha_thr_, half_plus_sigma_ - a[0]))) return false;
      double partial = 0.0;
      for (int k = 0; k < 6; ++k) {
        partial += a[k];
        if (!(a[k] + partial <= 1.0)) return false;
      }
      return subset_sums_clear(a, 6);
    }
    case RegionId::F132:
      return in_v(a);
    case RegionId::G132: {
      if (!in_v(a)) return false;
      const double s4 = a[0] + a[1] + a[2] + a[3];
      if (!(a[3] < a[4] && a[4] <= (1.0 - s4) / 2)) return false;
      return subset_sums_clear(a, 5);
    }
    case RegionId::F2:
      return in_w(a);
    case RegionId::G2: {
      if (!in_w(a)) return false;
      if (!(a[1] < a[2] && a[2] <= (1.0 - a[0] - a[1]) / 2)) return false;
      if (strict_gap_) return subset_sums_clear(a, 3);
      return !gap_hit(a[0] + a[2]) && !gap_hit(a[1] + a[2]);
    }
    case RegionId::F3: {
      if (!(lo_ < a[1] && a[1] < a[0] && a[0] < 0.5)) return false;
      if (!(a[0] + a[1] > half_minus_2varpi_ && a[0] + 2 * a[1] < 1.0)) return false;
      if (strict_gap_) return subset_sums_clear(a, 2);
      return !gap_hit(a[0]) && !gap_hit(a[0] + a[1]);
    }
  }
  return false;
}

SamplingChart Region::bounding_box() const {
  SamplingChart c;
  c.lo.assign(dim_, lo_);
  c.hi.assign(dim_, half_plus_sigma_);
  c.sorted_prefix = 0;
  return c;
}

SamplingChart Region::folded_chart() const {
  SamplingChart c;
  auto cube = [&](int k, double lo, double hi) {
    c.lo.assign(k, lo);
    c.hi.assign(k, hi);
    c.sorted_prefix = k;
  };
  switch (id_) {
    case RegionId::F131:
      // alpha_1 <= (1/2 - sigma) - alpha_2 - alpha_3 - alpha_4 < (1/2 - sigma) - 3 lo.
      cube(6, lo_, half_minus_sigma_ - 3 * lo_);
      break;
    case RegionId::F132:
      cube(4, lo_, half_minus_sigma_ - lo_);
      break;
    case RegionId::G132:
      cube(4, lo_, half_minus_sigma_ - lo_);
      // lo < alpha_4 < alpha_5 <= (1 - sum_4)/2 < (1 - 4 lo)/2.
      c.lo.push_back(lo_);
      c.hi.push_back((1.0 - 4 * lo_) / 2);
      break;
    case RegionId::F2:
    case RegionId::G2: {
      // alpha_1 > alpha_2 > max(lo, alpha) and alpha_1 + alpha_2 <= 1/2 - sigma.
      const double floor = std::max(lo_, alpha_thr_);
      cube(2, floor, half_minus_sigma_ - floor);
      if (id_ == RegionId::G2) {
        c.lo.push_back(floor);
        c.hi.push_back((1.0 - 2 * floor) / 2);
      }
      break;
    }
    case RegionId::F3:
      cube(2, lo_, 0.5);
      break;
  }
  return c;
}

}  // namespace sqmod
