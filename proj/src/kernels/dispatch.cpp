#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "sqmod/kernels/kernels.hpp"

namespace sqmod::kernels {

#ifdef SQMOD_HAVE_AVX2
const KernelSet& avx2_kernels_impl();
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#ifdef SQMOD_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelSet& avx2_kernels() {
#ifdef SQMOD_HAVE_AVX2
  if (avx2_available()) return avx2_kernels_impl();
#endif
  throw std::runtime_error("AVX2 kernels are not available on this CPU/build");
}

namespace {

const KernelSet* initial_kernels() {
  const char* force = std::getenv("SQMOD_FORCE_SCALAR");
  if ((force == nullptr || *force == '\0') && avx2_available()) return &avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelSet*>& current() {
  static std::atomic<const KernelSet*> ptr{initial_kernels()};
  return ptr;
}

}  // namespace

const KernelSet& active() { return *current().load(std::memory_order_acquire); }

void set_active(Isa isa) {
  const KernelSet& set = isa == Isa::Avx2 ? avx2_kernels() : scalar_kernels();
  current().store(&set, std::memory_order_release);
}

}  // namespace sqmod::kernels
