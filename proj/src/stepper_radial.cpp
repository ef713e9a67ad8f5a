#include "frontcap/stepper_radial.hpp"

#include <algorithm>
#include <cmath>

#include "frontcap/error.hpp"
#include "frontcap/kernels.hpp"
#include "frontcap/simd.hpp"
#include "prediction.hpp"

namespace frontcap {

namespace {

double constant_growth(const ModelParams& p) {
    const auto* g = std::get_if<ConstantGrowth>(&p.growth);
    if (!g) throw ContractViolation("step_radial: only constant growth is supported");
    return g->value;
}

std::vector<double> face_radii(const RadialGrid& grid) {
    std::vector<double> r(grid.faces());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = grid.face(k);
    return r;
}

}  // namespace

StateRadial make_state_radial(const RadialGrid& grid, CellField rho0, double m, double t0) {
    if (rho0.size() != grid.nr()) throw ContractViolation("make_state_radial: density does not match grid");
    StateRadial s;
    s.u = correct_velocity_radial(grid, rho0, m);
    s.rho = std::move(rho0);
    s.t = t0;
    s.speed_bound = radial_speed(grid, s.u);
    return s;
}

double radial_speed(const RadialGrid& grid, std::span<const double> u) {
    double s = 0.0;
    for (std::size_t k = 1; k + 1 < u.size(); ++k) {
        const double scale = u[k] > 0.0 ? grid.face(k) / grid.center(k - 1) : 1.0;
        s = std::max(s, std::abs(u[k]) * scale);
    }
    return s;
}

FaceField predict_velocity_radial(const RadialGrid& grid, const StateRadial& state, const ModelParams& p, double dt) {
    const double g = constant_growth(p);
    std::vector<double> source(grid.nr());
    for (std::size_t i = 0; i < source.size(); ++i) source[i] = state.rho[i] * g;
    const auto fr = face_radii(grid);
    const auto cr = grid.centers();
    return detail::solve_prediction(state.rho, state.u, source, p.m, p.support_threshold, dt, grid.dr(), fr, cr);
}

CellField update_density_radial(const RadialGrid& grid, std::span<const double> rho, std::span<const double> u_star,
                                double growth, double dt) {
    const std::size_t n = grid.nr();
    if (rho.size() != n || u_star.size() != n + 1) throw ContractViolation("update_density_radial: shape mismatch");
    if (!(1.0 - dt * growth > 0.0)) throw CflViolation("growth condition 1-G_max*dt>0 violated");

    const auto slopes = minmod_slopes(rho, grid.dr());
    const auto edges = reconstruct(rho, slopes, grid.dr());
    auto flux = llf_flux(edges, u_star);
    for (std::size_t k = 0; k <= n; ++k) flux[k] *= grid.face(k);

    CellField out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double div = dt / (grid.center(i) * grid.dr()) * (flux[i + 1] - flux[i]);
        out[i] = (rho[i] - div) / (1.0 - dt * growth);
    }
    return out;
}

FaceField correct_velocity_radial(const RadialGrid& grid, std::span<const double> rho, double m) {
    const std::size_t n = grid.nr();
    if (rho.size() != n) throw ContractViolation("correct_velocity_radial: density does not match grid");
    std::vector<double> P(n);
    for (std::size_t i = 0; i < n; ++i) P[i] = std::pow(rho[i], m - 1.0);
    FaceField u(n + 1, 0.0);
    simd::active().scaled_difference(P.data() + 1, P.data(), n - 1, -(m / (m - 1.0)) / grid.dr(), u.data() + 1);
    return u;
}

double cfl_dt_radial(const RadialGrid& grid, const StateRadial& state, const ModelParams& p) {
    double dt = p.dt_policy.dt;
    if (p.dt_policy.strict) return dt;
    if (state.speed_bound > 0.0) dt = std::min(dt, p.dt_policy.cfl_factor * grid.dr() / (2.0 * state.speed_bound));
    const double gmax = growth_max(p.growth);
    if (gmax > 0.0) dt = std::min(dt, (1.0 - 1e-6) / gmax);
    return dt;
}

StateRadial step_radial(const RadialGrid& grid, const StateRadial& state, const ModelParams& p, double dt_cap) {
    if (state.rho.size() != grid.nr() || state.u.size() != grid.faces())
        throw ContractViolation("step_radial: state does not match grid");
    const double g = constant_growth(p);
    double dt = std::min(cfl_dt_radial(grid, state, p), dt_cap);

    FaceField u_star = predict_velocity_radial(grid, state, p, dt);
    double speed = radial_speed(grid, u_star);
    if (!p.dt_policy.strict) {
        for (int retry = 0; retry < 12 && 2.0 * dt * speed > p.dt_policy.cfl_factor * grid.dr(); ++retry) {
            dt = 0.999 * p.dt_policy.cfl_factor * grid.dr() / (2.0 * speed);
            u_star = predict_velocity_radial(grid, state, p, dt);
            speed = radial_speed(grid, u_star);
        }
    }

    StateRadial next;
    next.rho = update_density_radial(grid, state.rho, u_star, g, dt);
    next.u = correct_velocity_radial(grid, next.rho, p.m);
    next.t = state.t + dt;
    next.speed_bound = speed;
    next.last_dt = dt;
    return next;
}

}  // namespace frontcap
