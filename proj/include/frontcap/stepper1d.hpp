#pragma once

#include <limits>
#include <span>

#include "frontcap/grid.hpp"
#include "frontcap/model.hpp"

namespace frontcap {

/// Density on cells, velocity on the nx+1 faces (boundary faces held at 0).
struct State1D {
    CellField rho;
    FaceField u;
    double t = 0.0;
    // max |u*| of the last prediction (or |u| of the initial data); the
    // velocity bound used by cfl_dt for the next step.
    double speed_bound = 0.0;
    double last_dt = 0.0;
};

/// Pairs rho0 with its consistent velocity u0 = -(m/(m-1)) D(rho0^(m-1)).
State1D make_state(const Grid1D& grid, CellField rho0, double m, double t0 = 0.0);

/// Growth rate per cell at the current density (constant, prescribed field,
/// or G = c from a nutrient solve).
CellField growth_field(const Grid1D& grid, std::span<const double> rho, const ModelParams& p);

/// Implicit prediction: one tridiagonal solve for u* on the faces.
FaceField predict_velocity(const Grid1D& grid, const State1D& state, const ModelParams& p,
                           std::span<const double> growth, double dt);

/// Same solve with an arbitrary absolute source s in place of rho*G.
FaceField predict_velocity_with_source(const Grid1D& grid, std::span<const double> rho, std::span<const double> u,
                                       std::span<const double> source, double m, double threshold, double dt);

/// Central-upwind transport with implicit growth:
/// rho_new = [rho - dt/dx (F+ - F-)] / (1 - dt G).
CellField update_density(const Grid1D& grid, std::span<const double> rho, std::span<const double> u_star,
                         std::span<const double> growth, double dt);

/// Projection onto the constitutive relation, u = -(m/(m-1)) D(rho^(m-1)).
FaceField correct_velocity(const Grid1D& grid, std::span<const double> rho, double m);

/// Exact solve of du/dt = -(u - u_c)/eps^2 with rho frozen over dt.
FaceField relax_velocity(const Grid1D& grid, std::span<const double> rho, std::span<const double> u, double m,
                         double dt, double epsilon);

/// Step size from the policy and the positivity bounds
/// dt <= cfl*dx/(2U) and 1 - G_max dt > 0.
double cfl_dt(const Grid1D& grid, const State1D& state, const ModelParams& p);

struct ResidualNorms {
    double max_abs = 0.0;
    double l2 = 0.0;
};

/// Norms of W = u + (m/(m-1)) D(rho^(m-1)) over the faces.
ResidualNorms consistency_residual(const Grid1D& grid, const State1D& state, double m);

/// One prediction-update-correction step. dt comes from cfl_dt (clipped to
/// dt_cap); if the predicted u* breaks the hyperbolic bound the step is
/// repeated with a smaller dt.
State1D step(const Grid1D& grid, const State1D& state, const ModelParams& p,
             double dt_cap = std::numeric_limits<double>::infinity());

}  // namespace frontcap
