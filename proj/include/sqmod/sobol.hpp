#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sqmod {

/// Sobol' low-discrepancy sequence in up to kMaxDimension dimensions
/// (Joe-Kuo direction numbers), 32-bit resolution, Gray-code order.
class SobolSequence {
 public:
  static constexpr int kMaxDimension = 8;
  static constexpr int kBits = 32;

  explicit SobolSequence(int dimension);

  int dimension() const { return dim_; }

  /// Integer coordinates of the next point; the first point is the origin.
  std::span<const std::uint32_t> next();

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> direction_;  // dim_ * kBits
  std::vector<std::uint32_t> state_;
};

}  // namespace sqmod
