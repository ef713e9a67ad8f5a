#pragma once

#include <limits>
#include <span>

#include "frontcap/grid.hpp"
#include "frontcap/model.hpp"

namespace frontcap {

/// Radially symmetric density on a RadialGrid; u lives on the nr+1 faces,
/// with u = 0 on the axis face and the outer face.
struct StateRadial {
    CellField rho;
    FaceField u;
    double t = 0.0;
    double speed_bound = 0.0;  // effective outflow speed, see radial_speed
    double last_dt = 0.0;
};

StateRadial make_state_radial(const RadialGrid& grid, CellField rho0, double m, double t0 = 0.0);

/// max over faces of |u|, with outward speeds scaled by r_face / r_cell of
/// the upwind cell (the cell an outward flux drains is smaller than the face).
double radial_speed(const RadialGrid& grid, std::span<const double> u);

FaceField predict_velocity_radial(const RadialGrid& grid, const StateRadial& state, const ModelParams& p, double dt);

/// rho_new = [rho - dt/(r dr) (r+ F+ - r- F-)] / (1 - dt G), G constant.
CellField update_density_radial(const RadialGrid& grid, std::span<const double> rho, std::span<const double> u_star,
                                double growth, double dt);

FaceField correct_velocity_radial(const RadialGrid& grid, std::span<const double> rho, double m);

double cfl_dt_radial(const RadialGrid& grid, const StateRadial& state, const ModelParams& p);

/// Requires ConstantGrowth.
StateRadial step_radial(const RadialGrid& grid, const StateRadial& state, const ModelParams& p,
                        double dt_cap = std::numeric_limits<double>::infinity());

}  // namespace frontcap
