#pragma once

#include <span>
#include <vector>

#include "frontcap/grid.hpp"

namespace frontcap {

/// Reconstructed values on either side of every face of a line of n cells
/// (n + 1 faces). left[k] comes from cell k-1, right[k] from cell k; at the
/// two domain faces both sides equal the adjacent cell average.
struct EdgeStates {
    std::vector<double> left;
    std::vector<double> right;
};

/// Minmod-limited slope per cell; the first and last cell get slope 0.
std::vector<double> minmod_slopes(std::span<const double> rho, double dx);

/// Piecewise-linear edge values. Nonnegative whenever rho is and the slopes
/// come from minmod_slopes.
EdgeStates reconstruct(std::span<const double> rho, std::span<const double> slopes, double dx);

/// Local Lax-Friedrichs flux 1/2[rhoL u + rhoR u - |u|(rhoR - rhoL)] per
/// face, evaluated in its exact upwind form.
std::vector<double> llf_flux(const EdgeStates& edges, std::span<const double> u);

/// Reference form of the same flux, written exactly as the central formula.
double llf_flux_formula(double left, double right, double u) noexcept;

/// Dimension-by-dimension slopes on a 2D grid (row-major, index j*nx+i).
std::vector<double> minmod_slopes_x(const Grid2D& grid, std::span<const double> rho);
std::vector<double> minmod_slopes_y(const Grid2D& grid, std::span<const double> rho);

}  // namespace frontcap
