#include "frontcap/stepper2d.hpp"

#include <algorithm>
#include <cmath>

#include "frontcap/error.hpp"
#include "frontcap/kernels.hpp"
#include "frontcap/nutrient.hpp"
#include "frontcap/simd.hpp"
#include "prediction.hpp"

namespace frontcap {

namespace {

void require_cells(const Grid2D& grid, std::span<const double> f, const char* what) {
    if (f.size() != grid.cells()) throw ContractViolation(std::string("stepper2d: ") + what + " does not match grid");
}

double rate_of(const Grid2D& grid, std::span<const double> u, std::span<const double> v) {
    return detail::max_abs(u) / grid.dx() + detail::max_abs(v) / grid.dy();
}

}  // namespace

State2D make_state_2d(const Grid2D& grid, CellField rho0, double m, double t0) {
    require_cells(grid, rho0, "density");
    auto vel = correct_velocity_2d(grid, rho0, m);
    State2D s;
    s.rho = std::move(rho0);
    s.u = std::move(vel.u);
    s.v = std::move(vel.v);
    s.t = t0;
    s.rate_bound = rate_of(grid, s.u, s.v);
    return s;
}

CellField growth_field_2d(const Grid2D& grid, std::span<const double> rho, const ModelParams& p) {
    struct Visitor {
        const Grid2D& grid;
        std::span<const double> rho;
        const ModelParams& p;
        CellField operator()(const ConstantGrowth& c) const { return CellField(grid.cells(), c.value); }
        CellField operator()(const FieldGrowth& f) const {
            if (f.values.size() != grid.cells()) throw ContractViolation("growth field does not match grid");
            return f.values;
        }
        CellField operator()(const NutrientGrowth& n) const {
            return solve_nutrient(grid, rho, n, p.support_threshold, p.krylov).c;
        }
    };
    return std::visit(Visitor{grid, rho, p}, p.growth);
}

SparseSystem assemble_prediction_2d(const Grid2D& grid, const State2D& state, double m, double threshold,
                                    std::span<const double> growth, double dt) {
    require_cells(grid, state.rho, "density");
    require_cells(grid, state.u, "u");
    require_cells(grid, state.v, "v");
    require_cells(grid, growth, "growth");

    const std::size_t nx = grid.nx(), ny = grid.ny();
    const auto& rho = state.rho;
    const double e = m - 2.0;
    auto w = [&](double r) { return guarded_pow(r, e, threshold); };

    std::vector<double> wc(rho.size()), src(rho.size());
    for (std::size_t c = 0; c < rho.size(); ++c) {
        wc[c] = w(rho[c]);
        src[c] = wc[c] * rho[c] * growth[c];
    }

    const double bx = m * dt / (grid.dx() * grid.dx());
    const double by = m * dt / (grid.dy() * grid.dy());
    const double cx = m * dt / grid.dx() * 0.5 / (2.0 * grid.dy());  // cross term in u-rows
    const double cy = m * dt / grid.dy() * 0.5 / (2.0 * grid.dx());  // cross term in v-rows
    const double gx = m * dt / grid.dx() * 0.5;
    const double gy = m * dt / grid.dy() * 0.5;

    SparseBuilder b(2 * grid.cells());
    auto U = [&](std::size_t i, std::size_t j) { return 2 * grid.index(i, j); };
    auto V = [&](std::size_t i, std::size_t j) { return 2 * grid.index(i, j) + 1; };
    auto interior = [&](std::size_t i, std::size_t j) { return i > 0 && j > 0 && i + 1 < nx && j + 1 < ny; };
    // couplings to pinned boundary unknowns vanish
    auto couple = [&](std::size_t row, std::size_t ci, std::size_t cj, bool is_u, double a) {
        if (!interior(ci, cj) || a == 0.0) return;
        b.add(row, is_u ? U(ci, cj) : V(ci, cj), a);
    };

    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t c = grid.index(i, j);
            const std::size_t ru = U(i, j), rv = V(i, j);
            if (!interior(i, j)) {
                b.add(ru, ru, 1.0);
                b.add(rv, rv, 1.0);
                continue;
            }
            const std::size_t cE = grid.index(i + 1, j), cW = grid.index(i - 1, j);
            const std::size_t cN = grid.index(i, j + 1), cS = grid.index(i, j - 1);

            // u-row
            {
                const double wE = w(0.5 * (rho[c] + rho[cE]));
                const double wW = w(0.5 * (rho[c] + rho[cW]));
                b.add(ru, ru, 1.0 + bx * (wE + wW) * rho[c]);
                couple(ru, i + 1, j, true, -bx * wE * rho[cE]);
                couple(ru, i - 1, j, true, -bx * wW * rho[cW]);
                couple(ru, i + 1, j + 1, false, -cx * wc[cE] * rho[grid.index(i + 1, j + 1)]);
                couple(ru, i + 1, j - 1, false, cx * wc[cE] * rho[grid.index(i + 1, j - 1)]);
                couple(ru, i - 1, j + 1, false, cx * wc[cW] * rho[grid.index(i - 1, j + 1)]);
                couple(ru, i - 1, j - 1, false, -cx * wc[cW] * rho[grid.index(i - 1, j - 1)]);
                b.set_rhs(ru, state.u[c] - gx * (src[cE] - src[cW]));
            }
            // v-row
            {
                const double wN = w(0.5 * (rho[c] + rho[cN]));
                const double wS = w(0.5 * (rho[c] + rho[cS]));
                b.add(rv, rv, 1.0 + by * (wN + wS) * rho[c]);
                couple(rv, i, j + 1, false, -by * wN * rho[cN]);
                couple(rv, i, j - 1, false, -by * wS * rho[cS]);
                couple(rv, i + 1, j + 1, true, -cy * wc[cN] * rho[grid.index(i + 1, j + 1)]);
                couple(rv, i - 1, j + 1, true, cy * wc[cN] * rho[grid.index(i - 1, j + 1)]);
                couple(rv, i + 1, j - 1, true, cy * wc[cS] * rho[grid.index(i + 1, j - 1)]);
                couple(rv, i - 1, j - 1, true, -cy * wc[cS] * rho[grid.index(i - 1, j - 1)]);
                b.set_rhs(rv, state.v[c] - gy * (src[cN] - src[cS]));
            }
        }
    }
    return b.build();
}

Velocity2D predict_velocity_2d(const Grid2D& grid, const State2D& state, const ModelParams& p,
                               std::span<const double> growth, double dt) {
    const auto sys = assemble_prediction_2d(grid, state, p.m, p.support_threshold, growth, dt);
    std::vector<double> guess(sys.n);
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        guess[2 * c] = state.u[c];
        guess[2 * c + 1] = state.v[c];
    }
    KrylovResult r;
    try {
        r = krylov_solve(sys, p.krylov, guess);
    } catch (const ConvergenceFailure& e) {
        throw ConvergenceFailure(std::string(e.what()) + " [" + detail::describe({state.t, dt, p.m}) + "]",
                                 e.best_iterate(), e.residual_history());
    }
    Velocity2D out;
    out.u.resize(grid.cells());
    out.v.resize(grid.cells());
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        out.u[c] = r.x[2 * c];
        out.v[c] = r.x[2 * c + 1];
    }
    out.iterations = r.iterations;
    out.residual = r.residual;
    return out;
}

CellField update_density_2d(const Grid2D& grid, std::span<const double> rho, std::span<const double> u_star,
                            std::span<const double> v_star, std::span<const double> growth, double dt) {
    require_cells(grid, rho, "density");
    require_cells(grid, u_star, "u*");
    require_cells(grid, v_star, "v*");
    require_cells(grid, growth, "growth");
    detail::check_growth_condition(growth, dt);

    const std::size_t nx = grid.nx(), ny = grid.ny();
    const auto& k = simd::active();
    const auto sx = minmod_slopes_x(grid, rho);
    const auto sy = minmod_slopes_y(grid, rho);

    std::vector<double> divx(grid.cells()), divy(grid.cells());

    // x sweeps, one row at a time
    {
        std::vector<double> face_u(nx + 1, 0.0);
        for (std::size_t j = 0; j < ny; ++j) {
            const std::size_t off = j * nx;
            std::span<const double> row(rho.data() + off, nx);
            std::span<const double> srow(sx.data() + off, nx);
            for (std::size_t f = 1; f < nx; ++f) face_u[f] = 0.5 * (u_star[off + f - 1] + u_star[off + f]);
            const auto edges = reconstruct(row, srow, grid.dx());
            const auto flux = llf_flux(edges, face_u);
            k.flux_divergence(flux.data(), nx, dt / grid.dx(), divx.data() + off);
        }
    }
    // y sweeps, vectorised across a whole row of faces
    {
        std::vector<double> plus(grid.cells()), minus(grid.cells());
        k.edges(rho.data(), sy.data(), grid.cells(), 0.5 * grid.dy(), plus.data(), minus.data());
        std::vector<double> flux((ny + 1) * nx, 0.0);  // face row f lies below cell row f
        std::vector<double> face_v(nx);
        for (std::size_t f = 1; f < ny; ++f) {
            k.add(v_star.data() + (f - 1) * nx, v_star.data() + f * nx, nx, face_v.data());
            for (auto& x : face_v) x *= 0.5;
            k.upwind_flux(plus.data() + (f - 1) * nx, minus.data() + f * nx, face_v.data(), nx,
                          flux.data() + f * nx);
        }
        const double lambda = dt / grid.dy();
        for (std::size_t j = 0; j < ny; ++j) {
            double* out = divy.data() + j * nx;
            const double* lo = flux.data() + j * nx;
            const double* hi = flux.data() + (j + 1) * nx;
            k.scaled_difference(hi, lo, nx, lambda, out);
        }
    }

    std::vector<double> div(grid.cells());
    k.add(divx.data(), divy.data(), grid.cells(), div.data());
    CellField out(grid.cells());
    k.implicit_growth_update(rho.data(), div.data(), growth.data(), grid.cells(), dt, out.data());
    return out;
}

Velocity2D correct_velocity_2d(const Grid2D& grid, std::span<const double> rho, double m) {
    require_cells(grid, rho, "density");
    const std::size_t nx = grid.nx(), ny = grid.ny();
    std::vector<double> P(rho.size());
    for (std::size_t c = 0; c < rho.size(); ++c) P[c] = std::pow(rho[c], m - 1.0);
    const double k = -(m / (m - 1.0));
    Velocity2D out;
    out.u.resize(rho.size());
    out.v.resize(rho.size());
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const std::size_t c = grid.index(i, j);
            if (i == 0)
                out.u[c] = k * (P[c + 1] - P[c]) / grid.dx();
            else if (i + 1 == nx)
                out.u[c] = k * (P[c] - P[c - 1]) / grid.dx();
            else
                out.u[c] = k * (P[c + 1] - P[c - 1]) / (2.0 * grid.dx());
            if (j == 0)
                out.v[c] = k * (P[c + nx] - P[c]) / grid.dy();
            else if (j + 1 == ny)
                out.v[c] = k * (P[c] - P[c - nx]) / grid.dy();
            else
                out.v[c] = k * (P[c + nx] - P[c - nx]) / (2.0 * grid.dy());
        }
    }
    return out;
}

double cfl_dt_2d(const Grid2D& /*grid*/, const State2D& state, const ModelParams& p) {
    double dt = p.dt_policy.dt;
    if (p.dt_policy.strict) return dt;
    if (state.rate_bound > 0.0) dt = std::min(dt, p.dt_policy.cfl_factor / (2.0 * state.rate_bound));
    const double gmax = growth_max(p.growth);
    if (gmax > 0.0) dt = std::min(dt, (1.0 - 1e-6) / gmax);
    return dt;
}

State2D step_2d(const Grid2D& grid, const State2D& state, const ModelParams& p, double dt_cap) {
    const auto growth = growth_field_2d(grid, state.rho, p);
    double dt = std::min(cfl_dt_2d(grid, state, p), dt_cap);

    auto vel = predict_velocity_2d(grid, state, p, growth, dt);
    double rate = rate_of(grid, vel.u, vel.v);
    if (!p.dt_policy.strict) {
        for (int retry = 0; retry < 12 && 2.0 * dt * rate > p.dt_policy.cfl_factor; ++retry) {
            dt = 0.999 * p.dt_policy.cfl_factor / (2.0 * rate);
            vel = predict_velocity_2d(grid, state, p, growth, dt);
            rate = rate_of(grid, vel.u, vel.v);
        }
    }

    State2D next;
    next.rho = update_density_2d(grid, state.rho, vel.u, vel.v, growth, dt);
    auto corr = correct_velocity_2d(grid, next.rho, p.m);
    next.u = std::move(corr.u);
    next.v = std::move(corr.v);
    next.t = state.t + dt;
    next.rate_bound = rate;
    next.last_dt = dt;
    return next;
}

}  // namespace frontcap
