#include "frontcap/simd.hpp"

namespace frontcap::simd::detail {

namespace {

void minmod3(const double* prev, const double* cur, const double* next, std::size_t n, double dx, double* out) {
    const double two_dx = 2.0 * dx;
    for (std::size_t k = 0; k < n; ++k) {
        const double fwd = (next[k] - cur[k]) / dx;
        const double ctr = (next[k] - prev[k]) / two_dx;
        const double bwd = (cur[k] - prev[k]) / dx;
        double s = 0.0;
        if (fwd > 0.0 && ctr > 0.0 && bwd > 0.0) {
            s = fwd < ctr ? fwd : ctr;
            s = s < bwd ? s : bwd;
        } else if (fwd < 0.0 && ctr < 0.0 && bwd < 0.0) {
            s = fwd > ctr ? fwd : ctr;
            s = s > bwd ? s : bwd;
        }
        out[k] = s;
    }
}

void edges(const double* rho, const double* slope, std::size_t n, double h, double* plus, double* minus) {
    for (std::size_t k = 0; k < n; ++k) {
        const double d = h * slope[k];
        plus[k] = rho[k] + d;
        minus[k] = rho[k] - d;
    }
}

void upwind_flux(const double* left, const double* right, const double* u, std::size_t n, double* flux) {
    for (std::size_t k = 0; k < n; ++k) {
        const double up = u[k] > 0.0 ? u[k] : 0.0;
        const double dn = u[k] < 0.0 ? u[k] : 0.0;
        flux[k] = up * left[k] + dn * right[k];
    }
}

void flux_divergence(const double* flux, std::size_t n, double lambda, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = lambda * (flux[i + 1] - flux[i]);
}

void add(const double* a, const double* b, std::size_t n, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void implicit_growth_update(const double* rho, const double* div, const double* growth, std::size_t n, double dt,
                            double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (rho[i] - div[i]) / (1.0 - dt * growth[i]);
}

void scaled_difference(const double* hi, const double* lo, std::size_t n, double scale, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = scale * (hi[i] - lo[i]);
}

void csr_matvec(std::size_t rows, const std::int32_t* row_ptr, const std::int32_t* col, const double* val,
                const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0.0;
        for (std::int32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) sum = sum + val[k] * x[col[k]];
        y[r] = sum;
    }
}

constexpr KernelTable kTable{
    "scalar", minmod3, edges, upwind_flux, flux_divergence, add, implicit_growth_update, scaled_difference, csr_matvec,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kTable; }

}  // namespace frontcap::simd::detail
