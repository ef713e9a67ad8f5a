#include "frontcap/multispecies.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frontcap/error.hpp"
#include "frontcap/kernels.hpp"
#include "frontcap/stepper1d.hpp"
#include "prediction.hpp"

namespace frontcap {

namespace {

constexpr double kQuiescentTolerance = 1e-10;

std::vector<double> transport_divergence(const Grid1D& grid, std::span<const double> rho,
                                         std::span<const double> u_star, double dt) {
    const auto slopes = minmod_slopes(rho, grid.dx());
    const auto flux = llf_flux(reconstruct(rho, slopes, grid.dx()), u_star);
    const double lambda = dt / grid.dx();
    std::vector<double> div(rho.size());
    for (std::size_t i = 0; i < div.size(); ++i) div[i] = lambda * (flux[i + 1] - flux[i]);
    return div;
}

double reaction_rate_bound(const PQDParams& q) { return std::max({q.a + q.b, q.b + q.d, q.mu}); }

}  // namespace

CellField SpeciesState::rho_Q() const {
    CellField q(rho_total.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = rho_total[i] - rho_P[i] - rho_D[i];
    return q;
}

void PQDParams::validate() const {
    for (double r : {a, b, d, mu})
        if (!std::isfinite(r) || r < 0.0) throw ContractViolation("PQD rates must be finite and nonnegative");
}

SpeciesState make_species_state(const Grid1D& grid, CellField rho_P, CellField rho_Q, CellField rho_D, double m,
                                double t0) {
    if (rho_P.size() != grid.nx() || rho_Q.size() != grid.nx() || rho_D.size() != grid.nx())
        throw ContractViolation("make_species_state: densities do not match grid");
    SpeciesState s;
    s.rho_total.resize(grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) s.rho_total[i] = rho_P[i] + rho_Q[i] + rho_D[i];
    s.rho_P = std::move(rho_P);
    s.rho_D = std::move(rho_D);
    s.u = correct_velocity(grid, s.rho_total, m);
    s.t = t0;
    s.speed_bound = detail::max_abs(s.u);
    return s;
}

double pqd_dt(const Grid1D& grid, const SpeciesState& s, const ModelParams& p, const PQDParams& q) {
    State1D view;
    view.speed_bound = s.speed_bound;
    double dt = cfl_dt(grid, view, p);
    if (p.dt_policy.strict) return dt;
    const double r = reaction_rate_bound(q);
    if (r > 0.0) dt = std::min(dt, (1.0 - 1e-6) / r);
    return dt;
}

SpeciesState step_pqd(const Grid1D& grid, const SpeciesState& s, const ModelParams& p, const PQDParams& q,
                      double dt_cap) {
    q.validate();
    const std::size_t n = grid.nx();
    if (s.rho_P.size() != n || s.rho_D.size() != n || s.rho_total.size() != n || s.u.size() != n + 1)
        throw ContractViolation("step_pqd: state does not match grid");

    const auto rho_Q = s.rho_Q();
    const auto c = growth_field(grid, s.rho_total, p);
    std::vector<double> source(n);
    for (std::size_t i = 0; i < n; ++i) source[i] = c[i] * s.rho_P[i] - q.mu * s.rho_D[i];

    double dt = std::min(pqd_dt(grid, s, p, q), dt_cap);
    auto predict = [&](double h) {
        return predict_velocity_with_source(grid, s.rho_total, s.u, source, p.m, p.support_threshold, h);
    };
    FaceField u_star = predict(dt);
    double umax = detail::max_abs(u_star);
    if (!p.dt_policy.strict) {
        for (int retry = 0; retry < 12 && 2.0 * dt * umax > p.dt_policy.cfl_factor * grid.dx(); ++retry) {
            dt = 0.999 * p.dt_policy.cfl_factor * grid.dx() / (2.0 * umax);
            u_star = predict(dt);
            umax = detail::max_abs(u_star);
        }
    }

    const auto divP = transport_divergence(grid, s.rho_P, u_star, dt);
    const auto divQ = transport_divergence(grid, rho_Q, u_star, dt);
    const auto divD = transport_divergence(grid, s.rho_D, u_star, dt);

    SpeciesState next;
    next.rho_P.resize(n);
    next.rho_D.resize(n);
    next.rho_total.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double denomP = 1.0 - dt * c[i] + dt * q.a;
        if (!(denomP > 0.0)) throw CflViolation("growth condition 1-G_max*dt>0 violated");
        next.rho_P[i] = (s.rho_P[i] - divP[i] + dt * q.b * rho_Q[i]) / denomP;
        next.rho_D[i] = (s.rho_D[i] - divD[i] + dt * q.d * rho_Q[i]) / (1.0 + dt * q.mu);
        next.rho_total[i] = s.rho_total[i] - (divP[i] + divQ[i] + divD[i]) + dt * c[i] * next.rho_P[i] -
                            dt * q.mu * next.rho_D[i];
    }

    for (std::size_t i = 0; i < n; ++i) {
        const double rq = next.rho_total[i] - next.rho_P[i] - next.rho_D[i];
        if (rq >= -kQuiescentTolerance) continue;
        if (q.clip_quiescent) {
            next.rho_total[i] = next.rho_P[i] + next.rho_D[i];
            continue;
        }
        std::ostringstream msg;
        msg << "quiescent density " << rq << " below -1e-10 in cell " << i << " at t=" << s.t + dt
            << " (dt=" << dt << "); reduce the time step";
        throw InvariantViolation(msg.str());
    }

    next.u = correct_velocity(grid, next.rho_total, p.m);
    next.t = s.t + dt;
    next.speed_bound = umax;
    next.last_dt = dt;
    return next;
}

}  // namespace frontcap
