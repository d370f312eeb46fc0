#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// optional AVX2 variants chosen at runtime.
//
// The counting kernels use only IEEE add/mul/compare in a fixed order (no
// contraction), so every variant returns exactly the scalar count. dot() is
// reassociated by the vector variants and agrees to rounding.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace finsler::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

struct Kernels {
  // Number of k in [0, n) whose chord (p[k], cos, sin) crosses chord
  // (pi, ci, si) strictly inside the unit disk:
  //   pi^2 + p^2 - 2 pi p C + C^2 < 1 with C = ci c + si s.
  std::uint64_t (*count_crossings_with)(double pi, double ci, double si, const double* p, const double* c,
                                        const double* s, std::size_t n);
  // Number of k with p[k] strictly between the offsets x1 s - y1 c and
  // x2 s - y2 c of the two points.
  std::uint64_t (*count_separating)(double x1, double y1, double x2, double y2, const double* p,
                                    const double* c, const double* s, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
};

bool isa_supported(Isa isa) noexcept;

// Best supported ISA, unless FINSLER_SIMD=scalar|avx2 overrides it.
Isa detected_isa() noexcept;

// Kernel table for an ISA; throws Error{InvalidArgument} if unsupported.
const Kernels& kernels_for(Isa isa);

// Process-wide selection (defaults to detected_isa()).
const Kernels& kernels();
Isa active_isa() noexcept;
void set_active_isa(Isa isa);

namespace detail {
extern const Kernels scalar_kernels;
#if defined(FINSLER_HAVE_AVX2)
extern const Kernels avx2_kernels;
#endif
}  // namespace detail

}  // namespace finsler::simd
