#include "sqmod/sobol.hpp"

#include <bit>
#include <stdexcept>

namespace sqmod {

namespace {

// new-joe-kuo-6.21201, dimensions 2..8: degree s, coefficient a, initial m_i.
struct Primitive {
  int s;
  std::uint32_t a;
  std::uint32_t m[5];
};

constexpr Primitive kPrimitives[] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
};

}  // namespace

SobolSequence::SobolSequence(int dimension) : dim_(dimension) {
  if (dimension < 1 || dimension > kMaxDimension)
    throw std::invalid_argument("Sobol dimension must be in [1, 8]");
  direction_.assign(static_cast<std::size_t>(dim_) * kBits, 0);
  state_.assign(dim_, 0);

  for (int i = 0; i < kBits; ++i) direction_[i] = 1u << (kBits - 1 - i);

  for (int d = 1; d < dim_; ++d) {
    const Primitive& p = kPrimitives[d - 1];
    std::uint32_t* v = &direction_[static_cast<std::size_t>(d) * kBits];
    for (int i = 0; i < p.s && i < kBits; ++i) v[i] = p.m[i] << (kBits - 1 - i);
    for (int i = p.s; i < kBits; ++i) {
      std::uint32_t value = v[i - p.s] ^ (v[i - p.s] >> p.s);
      for (int k = 1; k < p.s; ++k)
        if ((p.a >> (p.s - 1 - k)) & 1u) value ^= v[i - k];
      v[i] = value;
    }
  }
}

std::span<const std::uint32_t> SobolSequence::next() {
  if (index_ == 0) {
    ++index_;
    return state_;
  }
  // Gray code: flip the direction number of the lowest zero bit of index-1.
  const int bit = std::countr_one(index_ - 1);
  if (bit >= kBits) throw std::length_error("Sobol sequence exhausted");
  for (int d = 0; d < dim_; ++d) state_[d] ^= direction_[static_cast<std::size_t>(d) * kBits + bit];
  ++index_;
  return state_;
}

}  // namespace sqmod
