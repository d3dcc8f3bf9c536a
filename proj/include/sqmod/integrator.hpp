#pragma once

// Randomized quasi-Monte-Carlo estimation of the deficiency integrals.
//
// Each replicate applies an independent random digital shift (XOR with a
// uniformly random 32-bit word per coordinate) to the same Sobol' points, so
// the replicate means are i.i.d. unbiased estimates; the reported error bound
// is the 99% Student-t half-width over replicates.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sqmod/buchstab.hpp"
#include "sqmod/regions.hpp"

namespace sqmod {

struct QmcOptions {
  std::uint64_t samples = 1'000'000;  ///< total points, split evenly over replicates
  std::uint64_t seed = 0xC0FFEE;
  int replicates = 16;
  int threads = 1;
};

struct QmcEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  std::uint64_t samples = 0;  ///< points actually evaluated
  std::uint64_t seed = 0;
  std::vector<double> replicate_values;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Integral of `integrand` over the chart image. The integrand sees points
/// with the sorted prefix already ordered decreasingly.
QmcEstimate integrate_chart(const SamplingChart& chart, const Integrand& integrand, const QmcOptions& options);

/// Sample-standard-deviation based 99% half-width for `replicates` values.
double student_t_99(int degrees_of_freedom);

enum class OmegaSource { UpperBound, Table };
/// FoldedLog: folded chart in logarithmic coordinates (importance sampling
/// against the 1/alpha factors of the weights).
enum class Sampling { FoldedLog, Folded, BoundingBox };

struct DeficiencyOptions {
  QmcOptions qmc;
  OmegaSource omega = OmegaSource::UpperBound;
  Sampling sampling = Sampling::FoldedLog;
  bool strict_gap = false;
  /// Required when omega == Table.
  const BuchstabTable* table = nullptr;
};

struct DeficiencyEstimate {
  RegionId region;
  double value = 0.0;
  double error_bound = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  WeightKind weight_kind;
  OmegaSource omega;
};

/// Integrand of the region: indicator times its almost-prime or prime weight.
/// Throws std::logic_error if the weight is not finite on an accepted point.
double deficiency_integrand(const Region& region, std::span<const double> alpha, OmegaSource omega,
                            const BuchstabTable* table);

/// Throws std::invalid_argument for fewer than 10^4 samples.
DeficiencyEstimate integrate(const Region& region, const DeficiencyOptions& options);

/// Published upper bounds, in kAllRegions order.
inline constexpr std::array<double, 6> kPaperBounds = {0.0095, 0.016, 0.0038, 0.155, 0.0456, 0.71153};
double paper_bound(RegionId id);

inline constexpr double kRequiredMargin = 0.05;

struct TotalDeficiency {
  std::vector<DeficiencyEstimate> estimates;  ///< kAllRegions order
  double s1 = 0.0;                            ///< F131 + F132 + G132
  double s2 = 0.0;                            ///< F2 + G2
  double s3 = 0.0;                            ///< F3
  double total = 0.0;
  double margin = 0.0;  ///< 1 - total
  double error_sum = 0.0;
  bool regions_certified = false;  ///< value + error < paper bound for every region
  bool margin_certified = false;   ///< margin - error_sum > 0.05
};

TotalDeficiency total_deficiency(const SieveParameters& params, const DeficiencyOptions& options);

}  // namespace sqmod
