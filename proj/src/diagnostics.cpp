#include "frontcap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frontcap/error.hpp"

namespace frontcap {

namespace {

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double energy_sum(std::span<const double> rho, double m) {
    double s = 0.0;
    for (double r : rho) s += std::pow(r, m);
    return s / (m - 1.0);
}

double sq_sum(std::span<const double> rho) {
    double s = 0.0;
    for (double r : rho) s += r * r;
    return s;
}

}  // namespace

double mass(const Grid1D& grid, std::span<const double> rho) { return sum(rho) * grid.dx(); }
double mass(const Grid2D& grid, std::span<const double> rho) { return sum(rho) * grid.dx() * grid.dy(); }

double mass(const RadialGrid& grid, std::span<const double> rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) s += rho[i] * grid.center(i);
    return 2.0 * std::numbers::pi * s * grid.dr();
}

double discrete_energy(const Grid1D& grid, std::span<const double> rho, double m) {
    return grid.dx() * energy_sum(rho, m);
}
double discrete_energy(const Grid2D& grid, std::span<const double> rho, double m) {
    return grid.dx() * grid.dy() * energy_sum(rho, m);
}

double l2_norm(const Grid1D& grid, std::span<const double> rho) { return std::sqrt(sq_sum(rho) * grid.dx()); }
double l2_norm(const Grid2D& grid, std::span<const double> rho) {
    return std::sqrt(sq_sum(rho) * grid.dx() * grid.dy());
}

std::vector<double> front_positions(std::span<const double> x, std::span<const double> rho, double threshold) {
    if (x.size() != rho.size()) throw ContractViolation("front_positions: coordinate/value length mismatch");
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < rho.size(); ++i) {
        const double a = rho[i] - threshold, b = rho[i + 1] - threshold;
        if ((a > 0.0) == (b > 0.0)) continue;
        out.push_back(x[i] + a / (a - b) * (x[i + 1] - x[i]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

double front_threshold(std::span<const double> rho, double m, double support_threshold) {
    if (m < 40.0) return support_threshold;
    double mx = 0.0;
    for (double r : rho) mx = std::max(mx, r);
    return 0.5 * mx;
}

void SpaceTimeL1::add(std::span<const double> x, std::span<const double> rho, double t, double dx, double dt,
                      const std::function<double(double, double)>& exact) {
    if (x.size() != rho.size()) throw ContractViolation("SpaceTimeL1: coordinate/value length mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) s += std::abs(rho[j] - exact(x[j], t));
    sum_ += s * dx * dt;
    ++samples_;
}

double spacetime_l1_error(const Grid1D& grid, std::span<const TimeSample> samples, double dt,
                          const std::function<double(double, double)>& exact) {
    const auto x = grid.centers();
    SpaceTimeL1 acc;
    for (const auto& s : samples) acc.add(x, s.rho, s.t, grid.dx(), dt, exact);
    return acc.value();
}

AngularFront angular_front(const Grid2D& grid, std::span<const double> rho, double level, std::size_t rays) {
    if (rho.size() != grid.cells()) throw ContractViolation("angular_front: shape mismatch");
    const std::size_t nx = grid.nx(), ny = grid.ny();
    double m = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) {
            const double r = rho[grid.index(i, j)];
            m += r;
            cx += r * grid.x().center(i);
            cy += r * grid.y().center(j);
        }
    AngularFront out;
    if (m <= 0.0) return out;
    cx /= m;
    cy /= m;

    // bilinear interpolation on the cell-centre lattice, clamped to the hull
    auto sample = [&](double x, double y) {
        double fx = (x - grid.x().center(0)) / grid.dx();
        double fy = (y - grid.y().center(0)) / grid.dy();
        fx = std::clamp(fx, 0.0, static_cast<double>(nx - 1));
        fy = std::clamp(fy, 0.0, static_cast<double>(ny - 1));
        const std::size_t i = std::min(static_cast<std::size_t>(fx), nx - 2);
        const std::size_t j = std::min(static_cast<std::size_t>(fy), ny - 2);
        const double tx = fx - static_cast<double>(i), ty = fy - static_cast<double>(j);
        const double a = rho[grid.index(i, j)], b = rho[grid.index(i + 1, j)];
        const double c = rho[grid.index(i, j + 1)], d = rho[grid.index(i + 1, j + 1)];
        return (1 - ty) * ((1 - tx) * a + tx * b) + ty * ((1 - tx) * c + tx * d);
    };

    const double h = 0.25 * std::min(grid.dx(), grid.dy());
    const double reach = std::hypot(grid.x().b() - grid.x().a(), grid.y().b() - grid.y().a());
    std::vector<double> radii;
    for (std::size_t k = 0; k < rays; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(rays);
        const double ux = std::cos(th), uy = std::sin(th);
        double found = -1.0;
        double prev = sample(cx, cy);
        for (double s = h; s <= reach; s += h) {
            const double x = cx + s * ux, y = cy + s * uy;
            if (x < grid.x().a() || x > grid.x().b() || y < grid.y().a() || y > grid.y().b()) break;
            const double cur = sample(x, y);
            if ((prev - level) * (cur - level) <= 0.0 && prev != cur && prev >= level)
                found = s - h + (prev - level) / (prev - cur) * h;
            prev = cur;
        }
        if (found >= 0.0) radii.push_back(found);
    }
    out.rays = radii.size();
    if (radii.empty()) return out;
    double mean = 0.0;
    for (double r : radii) mean += r;
    mean /= static_cast<double>(radii.size());
    double var = 0.0;
    for (double r : radii) var += (r - mean) * (r - mean);
    out.mean_radius = mean;
    out.std_radius = std::sqrt(var / static_cast<double>(radii.size()));
    return out;
}

std::vector<double> eoc(std::span<const double> errors, std::span<const double> spacings) {
    if (errors.size() != spacings.size() || errors.size() < 2)
        throw ContractViolation("eoc: need at least two matching error/spacing entries");
    for (std::size_t k = 0; k < errors.size(); ++k)
        if (!(errors[k] > 0.0) || !(spacings[k] > 0.0)) throw ContractViolation("eoc: entries must be positive");
    const bool dec = spacings[1] < spacings[0];
    for (std::size_t k = 0; k + 1 < spacings.size(); ++k) {
        const bool d = spacings[k + 1] < spacings[k];
        if (d != dec || spacings[k + 1] == spacings[k]) throw ContractViolation("eoc: spacings must be monotone");
    }
    std::vector<double> orders(errors.size() - 1);
    for (std::size_t k = 0; k + 1 < errors.size(); ++k)
        orders[k] = std::log(errors[k] / errors[k + 1]) / std::log(spacings[k] / spacings[k + 1]);
    return orders;
}

}  // namespace frontcap
