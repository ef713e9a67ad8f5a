#pragma once

// Shared pieces of the face-staggered steppers (Cartesian 1D, radial, PQD).

#include <span>
#include <string>
#include <vector>

namespace frontcap::detail {

/// Face-centred prediction solve on a line of n cells (n+1 faces, boundary
/// faces pinned to 0). With face_r / cell_r non-empty the divergence is the
/// radial one, (1/r) d(r rho u)/dr.
std::vector<double> solve_prediction(std::span<const double> rho, std::span<const double> u,
                                     std::span<const double> source, double m, double threshold, double dt, double h,
                                     std::span<const double> face_r = {}, std::span<const double> cell_r = {});

/// Where a step failed, for error messages.
struct PredictionContext {
    double t, dt, m;
};

double max_abs(std::span<const double> v);

/// Throws CflViolation unless 1 - dt*G > 0 in every cell.
void check_growth_condition(std::span<const double> growth, double dt);

std::string describe(const PredictionContext& ctx);

}  // namespace frontcap::detail
