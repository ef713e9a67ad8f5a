#pragma once

#include <functional>
#include <span>
#include <vector>

#include "frontcap/grid.hpp"

namespace frontcap {

/// One row of series.csv.
struct SeriesRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double l2_norm = 0.0;
    double max_density = 0.0;
    std::vector<double> fronts;
    double residual_max = 0.0;
    double residual_l2 = 0.0;
};

double mass(const Grid1D& grid, std::span<const double> rho);
double mass(const Grid2D& grid, std::span<const double> rho);
/// 2 pi sum rho_i r_i dr
double mass(const RadialGrid& grid, std::span<const double> rho);

/// E = sum dx rho^m / (m-1)
double discrete_energy(const Grid1D& grid, std::span<const double> rho, double m);
double discrete_energy(const Grid2D& grid, std::span<const double> rho, double m);

double l2_norm(const Grid1D& grid, std::span<const double> rho);
double l2_norm(const Grid2D& grid, std::span<const double> rho);

/// Crossings of rho = threshold between neighbouring sample points x,
/// located by linear interpolation; sorted, empty if there is none.
std::vector<double> front_positions(std::span<const double> x, std::span<const double> rho, double threshold);

/// Threshold used to locate fronts: half the maximum for sharp (m >= 40)
/// runs, the support threshold otherwise.
double front_threshold(std::span<const double> rho, double m, double support_threshold);

/// Accumulates sum_n sum_j |rho_j^n - exact(x_j, t_n)| dx dt.
class SpaceTimeL1 {
public:
    void add(std::span<const double> x, std::span<const double> rho, double t, double dx, double dt,
             const std::function<double(double, double)>& exact);
    double value() const noexcept { return sum_; }
    std::size_t samples() const noexcept { return samples_; }

private:
    double sum_ = 0.0;
    std::size_t samples_ = 0;
};

struct TimeSample {
    double t;
    std::vector<double> rho;
};

/// Space-time L1 error of equally spaced samples (spacing dt).
double spacetime_l1_error(const Grid1D& grid, std::span<const TimeSample> samples, double dt,
                          const std::function<double(double, double)>& exact);

struct AngularFront {
    double mean_radius = 0.0;
    double std_radius = 0.0;
    std::size_t rays = 0;  // rays that found a crossing
};

/// Outermost crossing of `level` along `rays` rays from the mass centroid,
/// with bilinear interpolation of the cell data.
AngularFront angular_front(const Grid2D& grid, std::span<const double> rho, double level, std::size_t rays = 72);

/// order_k = ln(e_k/e_{k+1}) / ln(h_k/h_{k+1}); spacings must be strictly
/// monotone and all entries positive.
std::vector<double> eoc(std::span<const double> errors, std::span<const double> spacings);

}  // namespace frontcap
