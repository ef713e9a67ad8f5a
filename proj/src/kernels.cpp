#include "frontcap/kernels.hpp"

#include <cmath>

#include "frontcap/error.hpp"
#include "frontcap/simd.hpp"

namespace frontcap {

std::vector<double> minmod_slopes(std::span<const double> rho, double dx) {
    const std::size_t n = rho.size();
    std::vector<double> s(n, 0.0);
    if (n >= 3) simd::active().minmod3(rho.data(), rho.data() + 1, rho.data() + 2, n - 2, dx, s.data() + 1);
    return s;
}

EdgeStates reconstruct(std::span<const double> rho, std::span<const double> slopes, double dx) {
    const std::size_t n = rho.size();
    if (slopes.size() != n) throw ContractViolation("reconstruct: slope array length mismatch");
    std::vector<double> plus(n), minus(n);
    simd::active().edges(rho.data(), slopes.data(), n, 0.5 * dx, plus.data(), minus.data());

    EdgeStates e;
    e.left.resize(n + 1);
    e.right.resize(n + 1);
    e.left[0] = e.right[0] = rho.empty() ? 0.0 : rho[0];
    for (std::size_t k = 1; k < n; ++k) {
        e.left[k] = plus[k - 1];
        e.right[k] = minus[k];
    }
    if (n > 0) e.left[n] = e.right[n] = rho[n - 1];
    return e;
}

std::vector<double> llf_flux(const EdgeStates& edges, std::span<const double> u) {
    const std::size_t nf = u.size();
    if (edges.left.size() != nf || edges.right.size() != nf)
        throw ContractViolation("llf_flux: edge states and velocity are not face-aligned");
    std::vector<double> f(nf);
    simd::active().upwind_flux(edges.left.data(), edges.right.data(), u.data(), nf, f.data());
    return f;
}

double llf_flux_formula(double left, double right, double u) noexcept {
    return 0.5 * (left * u + right * u - std::abs(u) * (right - left));
}

std::vector<double> minmod_slopes_x(const Grid2D& grid, std::span<const double> rho) {
    if (rho.size() != grid.cells()) throw ContractViolation("minmod_slopes_x: shape mismatch");
    const std::size_t nx = grid.nx();
    std::vector<double> s(rho.size(), 0.0);
    const auto& k = simd::active();
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double* row = rho.data() + j * nx;
        k.minmod3(row, row + 1, row + 2, nx - 2, grid.dx(), s.data() + j * nx + 1);
    }
    return s;
}

std::vector<double> minmod_slopes_y(const Grid2D& grid, std::span<const double> rho) {
    if (rho.size() != grid.cells()) throw ContractViolation("minmod_slopes_y: shape mismatch");
    const std::size_t nx = grid.nx();
    std::vector<double> s(rho.size(), 0.0);
    const auto& k = simd::active();
    for (std::size_t j = 1; j + 1 < grid.ny(); ++j) {
        k.minmod3(rho.data() + (j - 1) * nx, rho.data() + j * nx, rho.data() + (j + 1) * nx, nx, grid.dy(),
                  s.data() + j * nx);
    }
    return s;
}

}  // namespace frontcap
