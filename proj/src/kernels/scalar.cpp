#include "sqmod/kernels/kernels.hpp"

#include <cmath>
#include <numbers>

namespace sqmod::kernels {

PhaseTable::PhaseTable(std::uint32_t modulus) : cos_(modulus), sin_(modulus) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(modulus);
  for (std::uint32_t k = 0; k < modulus; ++k) {
    const double angle = step * static_cast<double>(k);
    cos_[k] = std::cos(angle);
    sin_[k] = std::sin(angle);
  }
}

namespace {

double sum_scalar(std::span<const double> values) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = values.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lane[0] += values[i];
    lane[1] += values[i + 1];
    lane[2] += values[i + 2];
    lane[3] += values[i + 3];
  }
  for (std::size_t j = 0; i < n; ++i, ++j) lane[j] += values[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

std::complex<double> phase_sum_scalar(std::span<const std::uint32_t> residues,
                                      std::span<const double> cos_table,
                                      std::span<const double> sin_table) {
  double re[4] = {0.0, 0.0, 0.0, 0.0};
  double im[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = residues.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      re[l] += cos_table[residues[i + l]];
      im[l] += sin_table[residues[i + l]];
    }
  }
  for (std::size_t l = 0; i < n; ++i, ++l) {
    re[l] += cos_table[residues[i]];
    im[l] += sin_table[residues[i]];
  }
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] + im[1]) + (im[2] + im[3])};
}

std::uint64_t count_zero_bytes_scalar(std::span<const std::uint8_t> bytes) {
  std::uint64_t count = 0;
  for (const std::uint8_t b : bytes) count += (b == 0);
  return count;
}

std::uint64_t count_congruent_scalar(std::span<const std::uint64_t> values,
                                     std::uint64_t m, std::uint64_t a) {
  std::uint64_t count = 0;
  for (const std::uint64_t v : values) count += (v % m == a);
  return count;
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{Isa::Scalar, sum_scalar, phase_sum_scalar,
                             count_zero_bytes_scalar, count_congruent_scalar};
  return set;
}

}  // namespace sqmod::kernels
