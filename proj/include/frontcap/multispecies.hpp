#pragma once

#include <limits>

#include "frontcap/grid.hpp"
#include "frontcap/model.hpp"

namespace frontcap {

/// Proliferating (P), quiescent (Q) and dead (D) cells moving with one
/// velocity. Q is not stored: rho_Q = rho_total - rho_P - rho_D.
struct SpeciesState {
    CellField rho_P;
    CellField rho_D;
    CellField rho_total;
    FaceField u;
    double t = 0.0;
    double speed_bound = 0.0;
    double last_dt = 0.0;

    CellField rho_Q() const;
};

/// Rates for P -> Q (a), Q -> P (b), Q -> D (d) and removal of dead cells
/// (mu). Growth is G = c rho_P with c from ModelParams::growth (a constant
/// or a nutrient solve on rho_total).
struct PQDParams {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double mu = 0.0;
    bool clip_quiescent = false;  // clamp small negative rho_Q instead of failing

    void validate() const;
};

SpeciesState make_species_state(const Grid1D& grid, CellField rho_P, CellField rho_Q, CellField rho_D, double m,
                                double t0 = 0.0);

/// Largest dt allowed by the transport and reaction bounds.
double pqd_dt(const Grid1D& grid, const SpeciesState& s, const ModelParams& p, const PQDParams& q);

/// One step: nutrient, prediction with source c rho_P - mu rho_D, transport
/// of P, D and the total with shared u*, correction from rho_total. Throws
/// InvariantViolation when rho_Q drops below -1e-10.
SpeciesState step_pqd(const Grid1D& grid, const SpeciesState& s, const ModelParams& p, const PQDParams& q,
                      double dt_cap = std::numeric_limits<double>::infinity());

}  // namespace frontcap
