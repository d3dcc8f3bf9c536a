#pragma once

// Data-parallel inner loops shared by the integrator, the exponential-sum
// evaluators and the prime sieve.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2 variant selected at runtime. Floating-point reductions use four
// interleaved partial sums (lane i accumulates elements i, i+4, i+8, ...) that
// are combined as (l0 + l1) + (l2 + l3), in both variants. The scalar and
// vector paths therefore produce bit-identical results and can be swapped
// without perturbing reproducible output.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sqmod::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// cos/sin of 2*pi*k/q for k in [0, q).
struct PhaseTable {
  explicit PhaseTable(std::uint32_t modulus);

  std::uint32_t modulus() const { return static_cast<std::uint32_t>(cos_.size()); }
  std::span<const double> cos_values() const { return cos_; }
  std::span<const double> sin_values() const { return sin_; }

 private:
  std::vector<double> cos_;
  std::vector<double> sin_;
};

struct KernelSet {
  Isa isa;

  /// Lane-striped sum of a double array.
  double (*sum)(std::span<const double> values);

  /// Sum of e(k/q) over the residues k in `residues` (each < q).
  std::complex<double> (*phase_sum)(std::span<const std::uint32_t> residues,
                                    std::span<const double> cos_table,
                                    std::span<const double> sin_table);

  /// Number of zero bytes.
  std::uint64_t (*count_zero_bytes)(std::span<const std::uint8_t> bytes);

  /// Number of v in `values` with v mod m == a. Requires values < 2^52,
  /// 1 <= m < 2^26 and a < m.
  std::uint64_t (*count_congruent)(std::span<const std::uint64_t> values,
                                   std::uint64_t m, std::uint64_t a);
};

const KernelSet& scalar_kernels();

/// True when the running CPU and this build both support the AVX2 kernels.
bool avx2_available();

/// The AVX2 kernel set; throws std::runtime_error if unavailable.
const KernelSet& avx2_kernels();

/// Kernel set used by the library. Defaults to the best available ISA unless
/// the environment variable SQMOD_FORCE_SCALAR is set to a non-empty value.
const KernelSet& active();

/// Override the active kernel set (process-wide). Throws if unavailable.
void set_active(Isa isa);

}  // namespace sqmod::kernels
