#include "frontcap/stepper1d.hpp"

#include <algorithm>
#include <cmath>

#include "frontcap/error.hpp"
#include "frontcap/kernels.hpp"
#include "frontcap/nutrient.hpp"
#include "frontcap/simd.hpp"
#include "prediction.hpp"

namespace frontcap {

namespace {

void require_shape(const Grid1D& grid, std::span<const double> rho, std::span<const double> u) {
    if (rho.size() != grid.nx()) throw ContractViolation("stepper1d: density does not match grid");
    if (u.size() != grid.faces()) throw ContractViolation("stepper1d: velocity does not match grid faces");
}

}  // namespace

State1D make_state(const Grid1D& grid, CellField rho0, double m, double t0) {
    if (rho0.size() != grid.nx()) throw ContractViolation("make_state: density does not match grid");
    State1D s;
    s.u = correct_velocity(grid, rho0, m);
    s.rho = std::move(rho0);
    s.t = t0;
    s.speed_bound = detail::max_abs(s.u);
    return s;
}

CellField growth_field(const Grid1D& grid, std::span<const double> rho, const ModelParams& p) {
    struct Visitor {
        const Grid1D& grid;
        std::span<const double> rho;
        double threshold;
        CellField operator()(const ConstantGrowth& c) const { return CellField(grid.nx(), c.value); }
        CellField operator()(const FieldGrowth& f) const {
            if (f.values.size() != grid.nx()) throw ContractViolation("growth field does not match grid");
            return f.values;
        }
        CellField operator()(const NutrientGrowth& n) const { return solve_nutrient(grid, rho, n, threshold).c; }
    };
    return std::visit(Visitor{grid, rho, p.support_threshold}, p.growth);
}

FaceField predict_velocity_with_source(const Grid1D& grid, std::span<const double> rho, std::span<const double> u,
                                       std::span<const double> source, double m, double threshold, double dt) {
    require_shape(grid, rho, u);
    return detail::solve_prediction(rho, u, source, m, threshold, dt, grid.dx());
}

FaceField predict_velocity(const Grid1D& grid, const State1D& state, const ModelParams& p,
                           std::span<const double> growth, double dt) {
    require_shape(grid, state.rho, state.u);
    if (growth.size() != grid.nx()) throw ContractViolation("predict_velocity: growth does not match grid");
    std::vector<double> source(grid.nx());
    for (std::size_t i = 0; i < source.size(); ++i) source[i] = state.rho[i] * growth[i];
    try {
        return detail::solve_prediction(state.rho, state.u, source, p.m, p.support_threshold, dt, grid.dx());
    } catch (const SingularSystem& e) {
        throw SingularSystem(e.pivot(), std::string(e.what()) + " [" + detail::describe({state.t, dt, p.m}) + "]");
    }
}

CellField update_density(const Grid1D& grid, std::span<const double> rho, std::span<const double> u_star,
                         std::span<const double> growth, double dt) {
    require_shape(grid, rho, u_star);
    if (growth.size() != grid.nx()) throw ContractViolation("update_density: growth does not match grid");
    detail::check_growth_condition(growth, dt);

    const std::size_t n = grid.nx();
    const auto slopes = minmod_slopes(rho, grid.dx());
    const auto edges = reconstruct(rho, slopes, grid.dx());
    const auto flux = llf_flux(edges, u_star);

    const auto& k = simd::active();
    std::vector<double> div(n);
    k.flux_divergence(flux.data(), n, dt / grid.dx(), div.data());
    CellField out(n);
    k.implicit_growth_update(rho.data(), div.data(), growth.data(), n, dt, out.data());
    return out;
}

FaceField correct_velocity(const Grid1D& grid, std::span<const double> rho, double m) {
    if (rho.size() != grid.nx()) throw ContractViolation("correct_velocity: density does not match grid");
    const std::size_t n = rho.size();
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = std::pow(rho[i], m - 1.0);
    FaceField u(n + 1, 0.0);
    simd::active().scaled_difference(p.data() + 1, p.data(), n - 1, -(m / (m - 1.0)) / grid.dx(), u.data() + 1);
    return u;
}

FaceField relax_velocity(const Grid1D& grid, std::span<const double> rho, std::span<const double> u, double m,
                         double dt, double epsilon) {
    require_shape(grid, rho, u);
    const auto uc = correct_velocity(grid, rho, m);
    const double decay = std::exp(-dt / (epsilon * epsilon));
    FaceField out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = uc[k] + decay * (u[k] - uc[k]);
    return out;
}

double cfl_dt(const Grid1D& grid, const State1D& state, const ModelParams& p) {
    double dt = p.dt_policy.dt;
    if (p.dt_policy.strict) return dt;
    if (state.speed_bound > 0.0) dt = std::min(dt, p.dt_policy.cfl_factor * grid.dx() / (2.0 * state.speed_bound));
    const double gmax = growth_max(p.growth);
    if (gmax > 0.0) dt = std::min(dt, (1.0 - 1e-6) / gmax);
    return dt;
}

ResidualNorms consistency_residual(const Grid1D& grid, const State1D& state, double m) {
    require_shape(grid, state.rho, state.u);
    const auto uc = correct_velocity(grid, state.rho, m);
    ResidualNorms r;
    double sq = 0.0;
    for (std::size_t k = 0; k < uc.size(); ++k) {
        const double w = state.u[k] - uc[k];
        r.max_abs = std::max(r.max_abs, std::abs(w));
        sq += w * w;
    }
    r.l2 = std::sqrt(sq * grid.dx());
    return r;
}

State1D step(const Grid1D& grid, const State1D& state, const ModelParams& p, double dt_cap) {
    require_shape(grid, state.rho, state.u);
    const auto growth = growth_field(grid, state.rho, p);
    double dt = std::min(cfl_dt(grid, state, p), dt_cap);

    FaceField u_star = predict_velocity(grid, state, p, growth, dt);
    double umax = detail::max_abs(u_star);
    if (!p.dt_policy.strict) {
        // the speed bound used by cfl_dt lags one step; re-check with u*
        for (int retry = 0; retry < 12 && 2.0 * dt * umax > p.dt_policy.cfl_factor * grid.dx(); ++retry) {
            dt = 0.999 * p.dt_policy.cfl_factor * grid.dx() / (2.0 * umax);
            u_star = predict_velocity(grid, state, p, growth, dt);
            umax = detail::max_abs(u_star);
        }
    }

    State1D next;
    next.rho = update_density(grid, state.rho, u_star, growth, dt);
    next.u = p.relaxation_epsilon ? relax_velocity(grid, next.rho, u_star, p.m, dt, *p.relaxation_epsilon)
                                  : correct_velocity(grid, next.rho, p.m);
    next.t = state.t + dt;
    next.speed_bound = umax;
    next.last_dt = dt;
    return next;
}

}  // namespace frontcap
