#pragma once

#include <span>
#include <vector>

#include "frontcap/model.hpp"

namespace frontcap::oracles {

/// Self-similar porous-medium solution at absolute time t:
/// t^-a (C - a(m-1)/(2m) x^2 / t^(2a))_+^(1/(m-1)), a = 1/(m+1).
double barenblatt(double x, double t, double m, double C);

/// Edge of the Barenblatt support at time t.
double barenblatt_edge(double t, double m, double C);

/// Front positions at time t: a symmetric pair {-R, R} in 1D, ordered radii
/// for the radial annuli.
struct FrontState {
    std::vector<double> radii;
    double t = 0.0;
};

struct FrontTrajectory {
    std::vector<FrontState> states;  // one per integration step, states[0] is the start
    bool merged = false;             // integration stopped because two fronts met
    double h = 1e-4;

    double t_end() const { return states.empty() ? 0.0 : states.back().t; }
    /// Linear interpolation between steps; throws ContractViolation past t_end.
    FrontState at(double t) const;
};

/// Half-width R(t) of the limiting tumour: vitro R' = tanh R,
/// vivo R' = sinh(R) e^-R. Fixed-step RK4.
FrontTrajectory front_ode_1d(NutrientModel model, double R0, double t_end, double h = 1e-4);

/// Limiting pressure for the symmetric 1D tumour [-R, R]; 0 outside.
double pinf_1d(NutrientModel model, double x, double R);

/// Coefficient A in r' = r/2 - A/r for an annulus [a, b]:
/// A = (b^2 - a^2) / (4 ln(b/a)), with a series for nearly equal radii.
double annulus_coefficient(double a, double b);

/// Fronts of one (2 radii) or two (4 radii) annuli under constant growth.
/// Stops early, with merged = true, once any gap (or the innermost radius)
/// falls below 10 h.
FrontTrajectory front_ode_radial(std::span<const double> radii0, double t_end, double h = 1e-4);

/// Limiting pressure -r^2/4 + A ln r + B on each annulus, 0 outside.
double pinf_radial(std::span<const double> radii, double r);

}  // namespace frontcap::oracles
