#include "frontcap/nutrient.hpp"

#include <algorithm>

#include "frontcap/error.hpp"

namespace frontcap {

namespace {

void require(std::size_t got, std::size_t want, const char* what) {
    if (got != want) throw ContractViolation(std::string(what) + ": density does not match grid");
}

}  // namespace

std::vector<bool> support_mask(std::span<const double> rho, double threshold) {
    std::vector<bool> mask(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) mask[i] = rho[i] > threshold;
    return mask;
}

NutrientField solve_vitro(const Grid1D& grid, std::span<const double> rho, double c_background, double threshold,
                          VitroBoundary boundary) {
    require(rho.size(), grid.nx(), "solve_vitro");
    const std::size_t n = grid.nx();
    const auto mask = support_mask(rho, threshold);
    NutrientField out{CellField(n, c_background), NutrientModel::Vitro, c_background};
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) return out;

    const double inv_h2 = 1.0 / (grid.dx() * grid.dx());
    // ghost value 2c_B - c_i puts c_B on the face; c_B itself puts it at the
    // neighbouring centre
    const double edge = boundary == VitroBoundary::Face ? 2.0 : 1.0;
    TriDiagSystem sys(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) {
            sys.diag[i] = 1.0;
            sys.rhs[i] = c_background;
            continue;
        }
        double diag = rho[i];
        double rhs = 0.0;
        // a neighbour outside the support (or the domain) holds c_B
        const bool left_in = i > 0 && mask[i - 1];
        const bool right_in = i + 1 < n && mask[i + 1];
        if (left_in) {
            diag += inv_h2;
            sys.lower[i] = -inv_h2;
        } else {
            diag += edge * inv_h2;
            rhs += edge * inv_h2 * c_background;
        }
        if (right_in) {
            diag += inv_h2;
            sys.upper[i] = -inv_h2;
        } else {
            diag += edge * inv_h2;
            rhs += edge * inv_h2 * c_background;
        }
        sys.diag[i] = diag;
        sys.rhs[i] = rhs;
    }
    out.c = thomas_solve(sys);
    return out;
}

NutrientField solve_vivo(const Grid1D& grid, std::span<const double> rho, double c_background, double threshold,
                         double exchange_rate) {
    require(rho.size(), grid.nx(), "solve_vivo");
    const std::size_t n = grid.nx();
    const auto mask = support_mask(rho, threshold);
    const double inv_h2 = 1.0 / (grid.dx() * grid.dx());
    TriDiagSystem sys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double chi = mask[i] ? 0.0 : exchange_rate;
        double diag = std::max(rho[i], 0.0) + chi;
        if (i > 0) {
            diag += inv_h2;
            sys.lower[i] = -inv_h2;
        }
        if (i + 1 < n) {
            diag += inv_h2;
            sys.upper[i] = -inv_h2;
        }
        sys.diag[i] = diag;
        sys.rhs[i] = chi * c_background;
    }
    return {thomas_solve(sys), NutrientModel::Vivo, c_background};
}

NutrientField solve_vitro(const Grid2D& grid, std::span<const double> rho, double c_background, double threshold,
                          const KrylovConfig& krylov, VitroBoundary boundary) {
    require(rho.size(), grid.cells(), "solve_vitro");
    const auto mask = support_mask(rho, threshold);
    NutrientField out{CellField(grid.cells(), c_background), NutrientModel::Vitro, c_background};
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) return out;

    const std::size_t nx = grid.nx(), ny = grid.ny();
    const double ix2 = 1.0 / (grid.dx() * grid.dx()), iy2 = 1.0 / (grid.dy() * grid.dy());
    const double edge = boundary == VitroBoundary::Face ? 2.0 : 1.0;
    SparseBuilder b(grid.cells());
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t row = grid.index(i, j);
            if (!mask[row]) {
                b.add(row, row, 1.0);
                b.set_rhs(row, c_background);
                continue;
            }
            double diag = rho[row];
            double rhs = 0.0;
            auto couple = [&](bool inside, std::size_t nb, double w) {
                if (inside && mask[nb]) {
                    diag += w;
                    b.add(row, nb, -w);
                } else {
                    diag += edge * w;
                    rhs += edge * w * c_background;
                }
            };
            couple(i > 0, i > 0 ? row - 1 : row, ix2);
            couple(i + 1 < nx, row + 1, ix2);
            couple(j > 0, j > 0 ? row - nx : row, iy2);
            couple(j + 1 < ny, row + nx, iy2);
            b.add(row, row, diag);
            b.set_rhs(row, rhs);
        }
    }
    const auto sys = b.build();
    out.c = krylov_solve(sys, krylov, out.c).x;
    return out;
}

NutrientField solve_vivo(const Grid2D& grid, std::span<const double> rho, double c_background, double threshold,
                         double exchange_rate, const KrylovConfig& krylov) {
    require(rho.size(), grid.cells(), "solve_vivo");
    const auto mask = support_mask(rho, threshold);
    const std::size_t nx = grid.nx(), ny = grid.ny();
    const double ix2 = 1.0 / (grid.dx() * grid.dx()), iy2 = 1.0 / (grid.dy() * grid.dy());
    SparseBuilder b(grid.cells());
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t row = grid.index(i, j);
            const double chi = mask[row] ? 0.0 : exchange_rate;
            double diag = std::max(rho[row], 0.0) + chi;
            auto couple = [&](bool inside, std::size_t nb, double w) {
                if (!inside) return;
                diag += w;
                b.add(row, nb, -w);
            };
            couple(i > 0, i > 0 ? row - 1 : row, ix2);
            couple(i + 1 < nx, row + 1, ix2);
            couple(j > 0, j > 0 ? row - nx : row, iy2);
            couple(j + 1 < ny, row + nx, iy2);
            b.add(row, row, diag);
            b.set_rhs(row, chi * c_background);
        }
    }
    const auto sys = b.build();
    std::vector<double> guess(grid.cells(), c_background);
    return {krylov_solve(sys, krylov, guess).x, NutrientModel::Vivo, c_background};
}

NutrientField solve_nutrient(const Grid1D& grid, std::span<const double> rho, const NutrientGrowth& spec,
                             double threshold) {
    return spec.model == NutrientModel::Vitro
               ? solve_vitro(grid, rho, spec.c_background, threshold, spec.boundary)
               : solve_vivo(grid, rho, spec.c_background, threshold, spec.exchange_rate);
}

NutrientField solve_nutrient(const Grid2D& grid, std::span<const double> rho, const NutrientGrowth& spec,
                             double threshold, const KrylovConfig& krylov) {
    return spec.model == NutrientModel::Vitro
               ? solve_vitro(grid, rho, spec.c_background, threshold, krylov, spec.boundary)
               : solve_vivo(grid, rho, spec.c_background, threshold, spec.exchange_rate, krylov);
}

}  // namespace frontcap
