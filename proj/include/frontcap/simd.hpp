#pragma once

// Data-parallel inner loops behind a runtime-selected function table.
//
// Every variant must produce bit-identical output to the scalar reference:
// variants use the same operation order, no fused multiply-add, and
// per-row (never cross-lane) reductions.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace frontcap::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    const char* name;

    // out[k] = minmod{(next-cur)/dx, (next-prev)/(2dx), (cur-prev)/dx}
    void (*minmod3)(const double* prev, const double* cur, const double* next, std::size_t n, double dx,
                    double* out);
    // plus = rho + h*slope, minus = rho - h*slope
    void (*edges)(const double* rho, const double* slope, std::size_t n, double h, double* plus,
                  double* minus);
    // flux = max(u,0)*left + min(u,0)*right
    void (*upwind_flux)(const double* left, const double* right, const double* u, std::size_t n,
                        double* flux);
    // out[i] = lambda*(flux[i+1] - flux[i]) for i < n
    void (*flux_divergence)(const double* flux, std::size_t n, double lambda, double* out);
    void (*add)(const double* a, const double* b, std::size_t n, double* out);
    // out = (rho - div) / (1 - dt*growth)
    void (*implicit_growth_update)(const double* rho, const double* div, const double* growth, std::size_t n,
                                   double dt, double* out);
    // out = scale*(hi - lo)
    void (*scaled_difference)(const double* hi, const double* lo, std::size_t n, double scale, double* out);
    void (*csr_matvec)(std::size_t rows, const std::int32_t* row_ptr, const std::int32_t* col, const double* val,
                       const double* x, double* y);
};

bool isa_supported(Isa isa) noexcept;

/// Table for a specific instruction set; throws ContractViolation if the
/// variant was not compiled in or the CPU lacks it.
const KernelTable& kernels_for(Isa isa);

/// Kernels used by the library. Chosen once from CPU features; the
/// FRONTCAP_ISA environment variable ("scalar" or "avx2") overrides.
const KernelTable& active() noexcept;
Isa active_isa() noexcept;
void select_isa(Isa isa);

std::string_view to_string(Isa isa) noexcept;

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(FRONTCAP_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
}  // namespace detail

}  // namespace frontcap::simd
