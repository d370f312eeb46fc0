#include <atomic>
#include <cstdlib>
#include <string>

#include "finsler/error.hpp"
#include "finsler/simd/kernels.hpp"

namespace finsler::simd {

namespace {

std::atomic<const Kernels*> g_active{nullptr};
std::atomic<Isa> g_active_isa{Isa::Scalar};

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(FINSLER_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() noexcept {
  if (const char* env = std::getenv("FINSLER_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_supported(isa)) fail(ErrorKind::InvalidArgument, "instruction set not supported on this machine");
#if defined(FINSLER_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::avx2_kernels;
#endif
  return detail::scalar_kernels;
}

const Kernels& kernels() {
  const Kernels* k = g_active.load(std::memory_order_acquire);
  if (k == nullptr) {
    set_active_isa(detected_isa());
    k = g_active.load(std::memory_order_acquire);
  }
  return *k;
}

Isa active_isa() noexcept {
  if (g_active.load(std::memory_order_acquire) == nullptr) return detected_isa();
  return g_active_isa.load();
}

void set_active_isa(Isa isa) {
  const Kernels& k = kernels_for(isa);
  g_active_isa.store(isa);
  g_active.store(&k, std::memory_order_release);
}

}  // namespace finsler::simd
