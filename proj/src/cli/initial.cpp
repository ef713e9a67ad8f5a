#include "cli/initial.hpp"

#include <cmath>

#include "frontcap/oracles.hpp"

namespace frontcap::cli {

double density_from_pressure(double p, double m) {
    if (p <= 0.0) return 0.0;
    return std::pow((m - 1.0) / m * p, 1.0 / (m - 1.0));
}

namespace {

double indicator_1d(const RunConfig& rc, double x) {
    for (const auto& b : rc.ic_boxes)
        if (x >= b.x0 && x <= b.x1) return rc.ic_value;
    return 0.0;
}

// Mean of the profile over [x0, x1]; midpoint rule on the part inside the
// support, which is where the integrand is smooth.
double barenblatt_cell_average(const RunConfig& rc, double x0, double x1) {
    const double edge = oracles::barenblatt_edge(rc.ic_t0, rc.m, rc.ic_C);
    const double lo = std::max(x0, -edge), hi = std::min(x1, edge);
    if (hi <= lo) return 0.0;
    const int n = 256;
    const double h = (hi - lo) / n;
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += oracles::barenblatt(lo + (k + 0.5) * h, rc.ic_t0, rc.m, rc.ic_C);
    return s * h / (x1 - x0);
}

}  // namespace

CellField initial_density_1d(const RunConfig& rc, const Grid1D& grid) {
    if (rc.ic == IcType::Pqd) return initial_proliferating(rc, grid);
    CellField rho(grid.nx(), 0.0);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        const double x = grid.center(i);
        switch (rc.ic) {
            case IcType::Zero: break;
            case IcType::Barenblatt:
                rho[i] = rc.ic_cell_average ? barenblatt_cell_average(rc, grid.face(i), grid.face(i + 1))
                                            : oracles::barenblatt(x, rc.ic_t0, rc.m, rc.ic_C);
                break;
            case IcType::PinfSeeded:
                rho[i] = density_from_pressure(oracles::pinf_1d(rc.ic_model, x, rc.ic_R0), rc.m);
                break;
            case IcType::Indicator: rho[i] = indicator_1d(rc, x); break;
            case IcType::Gaussian: {
                const double z = (x - rc.ic_center) / rc.ic_width;
                rho[i] = rc.ic_amplitude * std::exp(-z * z);
                break;
            }
            case IcType::Pqd: break;
            case IcType::Flower: throw ConfigError("flower initial data is two-dimensional");
        }
    }
    return rho;
}

CellField initial_density_2d(const RunConfig& rc, const Grid2D& grid) {
    CellField rho(grid.cells(), 0.0);
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double y = grid.y().center(j);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double x = grid.x().center(i);
            double v = 0.0;
            switch (rc.ic) {
                case IcType::Zero: break;
                case IcType::Indicator:
                    for (const auto& b : rc.ic_boxes)
                        if (x >= b.x0 && x <= b.x1 && y >= b.y0 && y <= b.y1) v = rc.ic_value;
                    break;
                case IcType::Flower: {
                    const double r = std::hypot(x, y);
                    const double th = std::atan2(y, x);
                    if (r - 0.5 - std::sin(4.0 * th) / 2.0 < 0.0) v = rc.ic_value;
                    break;
                }
                case IcType::Gaussian: {
                    const double z2 = (x * x + y * y) / (rc.ic_width * rc.ic_width);
                    v = rc.ic_amplitude * std::exp(-z2);
                    break;
                }
                case IcType::Barenblatt:
                    v = oracles::barenblatt(std::hypot(x, y), rc.ic_t0, rc.m, rc.ic_C);
                    break;
                default: throw ConfigError("initial condition not available in 2d");
            }
            rho[grid.index(i, j)] = v;
        }
    }
    return rho;
}

CellField initial_density_radial(const RunConfig& rc, const RadialGrid& grid) {
    CellField rho(grid.nr(), 0.0);
    for (std::size_t i = 0; i < grid.nr(); ++i) {
        const double r = grid.center(i);
        switch (rc.ic) {
            case IcType::Zero: break;
            case IcType::PinfSeeded:
                rho[i] = density_from_pressure(oracles::pinf_radial(rc.ic_radii, r), rc.m);
                break;
            case IcType::Indicator: rho[i] = indicator_1d(rc, r); break;
            case IcType::Gaussian: {
                const double z = (r - rc.ic_center) / rc.ic_width;
                rho[i] = rc.ic_amplitude * std::exp(-z * z);
                break;
            }
            default: throw ConfigError("initial condition not available in radial geometry");
        }
    }
    return rho;
}

CellField initial_proliferating(const RunConfig& rc, const Grid1D& grid) {
    CellField rho(grid.nx(), 0.0);
    const double R = rc.ic_R0;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
        const double x = grid.center(i);
        if (std::abs(x) <= R) rho[i] = 1.0 - std::cosh(x) / std::cosh(R);
    }
    return rho;
}

}  // namespace frontcap::cli
