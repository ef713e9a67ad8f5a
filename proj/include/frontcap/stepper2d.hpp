#pragma once

#include <limits>
#include <span>

#include "frontcap/grid.hpp"
#include "frontcap/linsolve.hpp"
#include "frontcap/model.hpp"

namespace frontcap {

/// Density and both velocity components, all cell-centred on a Grid2D.
struct State2D {
    CellField rho;
    CellField u;
    CellField v;
    double t = 0.0;
    // max|u*|/dx + max|v*|/dy from the last prediction (initially from u, v)
    double rate_bound = 0.0;
    double last_dt = 0.0;
};

State2D make_state_2d(const Grid2D& grid, CellField rho0, double m, double t0 = 0.0);

CellField growth_field_2d(const Grid2D& grid, std::span<const double> rho, const ModelParams& p);

/// Coupled system for (u*, v*). Unknowns are interleaved: 2*index(i,j) is
/// u*_{ij}, 2*index(i,j)+1 is v*_{ij}. Rows for boundary cells read
/// u* = v* = 0.
SparseSystem assemble_prediction_2d(const Grid2D& grid, const State2D& state, double m, double threshold,
                                    std::span<const double> growth, double dt);

struct Velocity2D {
    CellField u, v;
    std::size_t iterations = 0;
    double residual = 0.0;
};

Velocity2D predict_velocity_2d(const Grid2D& grid, const State2D& state, const ModelParams& p,
                               std::span<const double> growth, double dt);

/// rho_new = [rho - dt/dx dF1 - dt/dy dF2] / (1 - dt G); face velocities are
/// averages of the neighbouring cell values, domain faces carry no flux.
CellField update_density_2d(const Grid2D& grid, std::span<const double> rho, std::span<const double> u_star,
                            std::span<const double> v_star, std::span<const double> growth, double dt);

/// Centred differences of -(m/(m-1)) rho^(m-1); one-sided on the outer ring.
Velocity2D correct_velocity_2d(const Grid2D& grid, std::span<const double> rho, double m);

double cfl_dt_2d(const Grid2D& grid, const State2D& state, const ModelParams& p);

State2D step_2d(const Grid2D& grid, const State2D& state, const ModelParams& p,
                double dt_cap = std::numeric_limits<double>::infinity());

}  // namespace frontcap
