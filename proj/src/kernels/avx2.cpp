#include "sqmod/kernels/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace sqmod::kernels {

namespace {

double sum_avx2(std::span<const double> values) {
  const double* data = values.data();
  const std::size_t n = values.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(data + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t j = 0; i < n; ++i, ++j) lane[j] += data[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

std::complex<double> phase_sum_avx2(std::span<const std::uint32_t> residues,
                                    std::span<const double> cos_table,
                                    std::span<const double> sin_table) {
  const std::uint32_t* idx = residues.data();
  const double* ct = cos_table.data();
  const double* st = sin_table.data();
  const std::size_t n = residues.size();
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i k = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + i));
    re = _mm256_add_pd(re, _mm256_i32gather_pd(ct, k, 8));
    im = _mm256_add_pd(im, _mm256_i32gather_pd(st, k, 8));
  }
  alignas(32) double lre[4];
  alignas(32) double lim[4];
  _mm256_store_pd(lre, re);
  _mm256_store_pd(lim, im);
  for (std::size_t l = 0; i < n; ++i, ++l) {
    lre[l] += ct[idx[i]];
    lim[l] += st[idx[i]];
  }
  return {(lre[0] + lre[1]) + (lre[2] + lre[3]), (lim[0] + lim[1]) + (lim[2] + lim[3])};
}

std::uint64_t count_zero_bytes_avx2(std::span<const std::uint8_t> bytes) {
  const std::uint8_t* data = bytes.data();
  const std::size_t n = bytes.size();
  const __m256i zero = _mm256_setzero_si256();
  std::uint64_t count = 0;
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    const auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
    count += static_cast<std::uint64_t>(std::popcount(mask));
  }
  for (; i < n; ++i) count += (data[i] == 0);
  return count;
}

// v < 2^52: OR the integer into the mantissa of 2^52 and subtract 2^52.
inline __m256d u52_to_pd(__m256i v) {
  const __m256i magic_bits = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256d magic = _mm256_castsi256_pd(magic_bits);
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(v, magic_bits)), magic);
}

std::uint64_t count_congruent_avx2(std::span<const std::uint64_t> values,
                                   std::uint64_t m, std::uint64_t a) {
  const std::uint64_t* data = values.data();
  const std::size_t n = values.size();
  const __m256d md = _mm256_set1_pd(static_cast<double>(m));
  const __m256d inv = _mm256_set1_pd(1.0 / static_cast<double>(m));
  const __m256d ad = _mm256_set1_pd(static_cast<double>(a));
  const __m256d zero = _mm256_setzero_pd();
  std::uint64_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = u52_to_pd(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i)));
    const __m256d q = _mm256_floor_pd(_mm256_mul_pd(v, inv));
    // q*m is an integer below 2^53, so the product and difference are exact.
    __m256d r = _mm256_sub_pd(v, _mm256_mul_pd(q, md));
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), md));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, md, _CMP_GE_OQ), md));
    const int hits = _mm256_movemask_pd(_mm256_cmp_pd(r, ad, _CMP_EQ_OQ));
    count += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(hits)));
  }
  for (; i < n; ++i) count += (data[i] % m == a);
  return count;
}

}  // namespace

const KernelSet& avx2_kernels_impl() {
  static const KernelSet set{Isa::Avx2, sum_avx2, phase_sum_avx2, count_zero_bytes_avx2,
                             count_congruent_avx2};
  return set;
}

}  // namespace sqmod::kernels
