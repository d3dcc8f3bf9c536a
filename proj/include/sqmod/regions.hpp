#pragma once

// Integration domains of the discarded Buchstab terms.
//
// Each region is the characteristic function of a set of exponent vectors
// alpha (log p_j / log X), transcribed literally from the decomposition of the
// sieve: strict and non-strict inequalities follow the printed signs.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sqmod/params.hpp"

namespace sqmod {

enum class RegionId { F131, F132, G132, F2, G2, F3 };
enum class WeightKind { AlmostPrime, Prime };

inline constexpr std::array<RegionId, 6> kAllRegions = {RegionId::F131, RegionId::F132, RegionId::G132,
                                                        RegionId::F2,   RegionId::G2,   RegionId::F3};

std::string_view region_name(RegionId id);
/// Inverse of region_name; throws std::invalid_argument.
RegionId region_from_name(std::string_view name);
int region_dimension(RegionId id);
WeightKind region_weight_kind(RegionId id);

/// Index families as bitmasks over alpha (bit j <-> alpha_{j+1}).
using IndexFamily = std::vector<std::uint32_t>;

/// All nonempty subsets of {1, ..., k}.
IndexFamily all_subsets(int k);

/// True iff no listed subset sum of alpha lies in the gap set.
bool subset_sums_avoid(std::span<const double> alpha, const GapSet& gap, const IndexFamily& families);

/// Sampling domain for one region: coordinates [0, sorted_prefix) are drawn
/// from the common cube [lo[0], hi[0]] and sorted in decreasing order; the
/// remaining coordinates are drawn independently from [lo[j], hi[j]].
/// A logarithmic chart draws log(alpha_j) uniformly instead; the integrator
/// then multiplies the integrand by the Jacobian prod alpha_j.
struct SamplingChart {
  std::vector<double> lo;
  std::vector<double> hi;
  int sorted_prefix = 0;
  bool logarithmic = false;

  /// Volume of the parameter domain (in log coordinates when logarithmic),
  /// divided by sorted_prefix!.
  double measure() const;
  bool empty() const;
};

class Region {
 public:
  /// strict_gap applies the gap exclusion to every subset sum in G2 and F3
  /// instead of only the printed sums.
  Region(RegionId id, const SieveParameters& params, bool strict_gap = false);

  RegionId id() const { return id_; }
  std::string_view name() const { return region_name(id_); }
  int dimension() const { return dim_; }
  WeightKind weight_kind() const { return region_weight_kind(id_); }
  bool strict_gap() const { return strict_gap_; }
  const SieveParameters& params() const { return params_; }

  /// Throws std::invalid_argument when alpha.size() != dimension().
  bool indicator(std::span<const double> alpha) const;

  /// indicator() without the size check; alpha must hold dimension() values.
  bool contains(const double* alpha) const;

  /// [sigma - 2 varpi, 1/2 + sigma]^k.
  SamplingChart bounding_box() const;

  /// Tighter chart derived from the region's own inequalities (the ordered
  /// block is folded onto a cube); contains the region.
  SamplingChart folded_chart() const;

 private:
  bool gap_hit(double x) const { return gap_.contains(x); }
  bool subset_sums_clear(const double* alpha, int k) const;
  bool in_v(const double* a) const;
  bool in_w(const double* a) const;

  RegionId id_;
  int dim_;
  bool strict_gap_;
  SieveParameters params_;
  GapSet::Fast gap_;
  double lo_;          // sigma - 2 varpi
  double half_minus_sigma_;
  double half_plus_sigma_;
  double half_minus_2varpi_;
  double alpha_thr_;
};

}  // namespace sqmod
