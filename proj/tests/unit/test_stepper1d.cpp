#include <cmath>
#include <random>

#include "doctest.h"
#include "frontcap/diagnostics.hpp"
#include "frontcap/error.hpp"
#include "frontcap/oracles.hpp"
#include "frontcap/stepper1d.hpp"
#include "reference.hpp"

using namespace frontcap;

namespace {

// Prediction system written straight from the face-by-face difference
// equation and solved densely.
std::vector<double> dense_prediction(const Grid1D& g, const std::vector<double>& rho, const std::vector<double>& u,
                                     const std::vector<double>& G, double m, double dt, double thr) {
    const std::size_t n = g.nx(), nf = n + 1;
    const double dx = g.dx();
    auto w = [&](std::size_t i) { return rho[i] > thr ? std::pow(rho[i], m - 2.0) : 0.0; };
    auto rf = [&](std::size_t k) {
        if (k == 0) return rho[0];
        if (k == n) return rho[n - 1];
        return 0.5 * (rho[k - 1] + rho[k]);
    };
    ref::Dense a(nf, std::vector<double>(nf, 0.0));
    std::vector<double> b(nf, 0.0);
    a[0][0] = a[n][n] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double wr = w(k), wl = w(k - 1);
        const double c = m * dt / dx;
        a[k][k] = 1.0;
        // -(m dt/dx) [ wr ((rf_{k+1} u_{k+1} - rf_k u_k)/dx) - wl ((rf_k u_k - rf_{k-1} u_{k-1})/dx) ]
        if (k + 1 < n) a[k][k + 1] -= c * wr * rf(k + 1) / dx;
        a[k][k] += c * wr * rf(k) / dx;
        a[k][k] += c * wl * rf(k) / dx;
        if (k - 1 > 0) a[k][k - 1] -= c * wl * rf(k - 1) / dx;
        b[k] = u[k] - c * (wr * rho[k] * G[k] - wl * rho[k - 1] * G[k - 1]);
    }
    return ref::dense_solve(a, b);
}

std::vector<double> barenblatt_cells(const Grid1D& g, double t, double m, double C) {
    std::vector<double> rho(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) rho[i] = oracles::barenblatt(g.center(i), t, m, C);
    return rho;
}

double total_variation(const std::vector<double>& r) {
    double tv = 0.0;
    for (std::size_t i = 1; i < r.size(); ++i) tv += std::abs(r[i] - r[i - 1]);
    return tv;
}

ModelParams params(double m, double G, DtPolicy policy) {
    ModelParams p;
    p.m = m;
    p.growth = ConstantGrowth{G};
    p.dt_policy = policy;
    return p;
}

}  // namespace

TEST_CASE("make_state pairs density with its consistent velocity") {
    Grid1D g(-5, 5, 160);
    const auto s = make_state(g, barenblatt_cells(g, 0.01, 3.0, 1.0), 3.0);
    CHECK(s.u.size() == 161);
    CHECK(s.u.front() == 0.0);
    CHECK(s.u.back() == 0.0);
    CHECK(consistency_residual(g, s, 3.0).max_abs == 0.0);
    CHECK(s.speed_bound == ref::max_abs(s.u));
}

TEST_CASE("predict_velocity trivial cases") {
    Grid1D g(0, 1, 20);
    State1D s;
    s.rho.assign(20, 0.0);
    std::mt19937_64 rng(4);
    s.u = ref::uniform(rng, 21, -1, 1);
    s.u.front() = s.u.back() = 0.0;
    const auto p = params(3.0, 1.0, DtPolicy::fixed(0.01));
    CHECK(predict_velocity(g, s, p, CellField(20, 1.0), 0.01) == s.u);

    s.rho.assign(20, 0.7);
    s.u.assign(21, 0.0);
    const auto us = predict_velocity(g, s, params(2.0, 0.0, DtPolicy::fixed(0.01)), CellField(20, 0.0), 0.01);
    CHECK(ref::max_abs(us) == 0.0);
}

TEST_CASE("predict_velocity matches a dense solve of the same system") {
    Grid1D g(-5, 5, 160);
    const double m = 3.0, dt = 1e-4;
    const auto s = make_state(g, barenblatt_cells(g, 0.01, m, 1.0), m);
    const CellField G(g.nx(), 0.0);
    const auto p = params(m, 0.0, DtPolicy::fixed(dt));
    const auto us = predict_velocity(g, s, p, G, dt);
    CHECK(ref::rel_diff(us, dense_prediction(g, s.rho, s.u, G, m, dt, p.support_threshold)) <= 1e-10);

    // and with a nonzero spatially varying growth field
    CellField G2(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) G2[i] = 0.5 + 0.5 * std::sin(g.center(i));
    const auto us2 = predict_velocity(g, s, p, G2, dt);
    CHECK(ref::rel_diff(us2, dense_prediction(g, s.rho, s.u, G2, m, dt, p.support_threshold)) <= 1e-10);
}

TEST_CASE("update_density examples") {
    Grid1D g(0, 1, 10);
    std::mt19937_64 rng(8);
    const auto rho = ref::uniform(rng, 10, 0, 1);
    const FaceField zero(11, 0.0);
    CHECK(update_density(g, rho, zero, CellField(10, 0.0), 0.1) == rho);

    const auto grown = update_density(g, rho, zero, CellField(10, 1.0), 0.1);
    for (std::size_t i = 0; i < 10; ++i) CHECK(grown[i] == rho[i] / 0.9);

    try {
        update_density(g, rho, zero, CellField(10, 2.0), 0.5);
        FAIL("expected CflViolation");
    } catch (const CflViolation& e) {
        CHECK(std::string(e.what()).find("1-G_max*dt>0") != std::string::npos);
    }
}

TEST_CASE("Barenblatt step: nonnegative, bounded variation, exact mass balance") {
    Grid1D g(-5, 5, 160);
    const double m = 3.0, dt = 0.01 * g.dx();
    const auto s = make_state(g, barenblatt_cells(g, 0.01, m, 1.0), m);
    for (double G : {0.0, 1.0}) {
        const CellField growth(g.nx(), G);
        const auto us = predict_velocity(g, s, params(m, G, DtPolicy::fixed(dt)), growth, dt);
        const auto next = update_density(g, s.rho, us, growth, dt);
        for (double r : next) CHECK(r >= 0.0);
        CHECK(total_variation(next) <= total_variation(s.rho) * (1.0 + 2.0 * dt * G) + 1e-12);
        double m0 = 0.0, m1 = 0.0, src = 0.0;
        for (std::size_t i = 0; i < g.nx(); ++i) {
            m0 += s.rho[i] * g.dx();
            m1 += next[i] * g.dx();
            src += dt * next[i] * G * g.dx();
        }
        CHECK(std::abs((m1 - m0) - src) <= 1e-12 * m0);
    }
}

TEST_CASE("correct_velocity examples") {
    Grid1D g(0, 4, 4);
    auto u = correct_velocity(g, std::vector<double>(4, 0.6), 5.0);
    CHECK(ref::max_abs(u) == 0.0);

    u = correct_velocity(g, std::vector<double>{0, 1, 0, 0}, 2.0);
    CHECK(u[1] == -2.0);
    CHECK(u[2] == 2.0);
    CHECK(u[0] == 0.0);
    CHECK(u[4] == 0.0);

    Grid1D h(-1, 1, 40);
    std::vector<double> sym(40);
    for (std::size_t i = 0; i < 20; ++i) sym[i] = sym[39 - i] = std::exp(-double(i) / 7.0) * (i % 3 + 1);
    u = correct_velocity(h, sym, 4.0);
    for (std::size_t k = 0; k <= 40; ++k) CHECK(u[k] == -u[40 - k]);
}

TEST_CASE("cfl_dt examples") {
    Grid1D g(0, 1, 10);  // dx = 0.1
    State1D s;
    s.rho.assign(10, 0.0);
    s.u.assign(11, 0.0);
    CHECK(cfl_dt(g, s, params(2.0, 0.0, DtPolicy::fixed(0.01))) == 0.01);

    s.speed_bound = 4.0;
    CHECK(cfl_dt(g, s, params(2.0, 0.0, DtPolicy::fixed(1.0))) <= 0.0125);
    CHECK(cfl_dt(g, s, params(2.0, 0.0, DtPolicy::fixed(1.0))) == doctest::Approx(0.0125));

    s.speed_bound = 0.0;
    CHECK(cfl_dt(g, s, params(2.0, 1.0, DtPolicy::fixed(0.9))) == 0.9);
    CHECK(cfl_dt(g, s, params(2.0, 1.0, DtPolicy::fixed(5.0))) < 1.0);
    CHECK(cfl_dt(g, s, params(2.0, 1.0, DtPolicy::exact(5.0))) == 5.0);
}

TEST_CASE("step leaves a consistent state") {
    Grid1D g(-5, 5, 160);
    auto p = params(3.0, 1.0, DtPolicy::adaptive(0.9, 1e-3));
    auto s = make_state(g, barenblatt_cells(g, 0.01, 3.0, 1.0), 3.0);
    for (int n = 0; n < 30; ++n) {
        s = step(g, s, p);
        CHECK(consistency_residual(g, s, 3.0).max_abs == 0.0);
        CHECK(2.0 * s.last_dt * s.speed_bound <= 0.9 * g.dx() * (1 + 1e-12));
    }
}

TEST_CASE("relaxation with a large epsilon leaves a predictable residual") {
    Grid1D g(-5, 5, 160);
    const double m = 3.0, dt = 1e-3, eps = 10.0;
    auto p = params(m, 0.0, DtPolicy::exact(dt));
    p.relaxation_epsilon = eps;
    const auto s = make_state(g, barenblatt_cells(g, 0.01, m, 1.0), m);
    const auto next = step(g, s, p);

    const CellField G(g.nx(), 0.0);
    const auto us = predict_velocity(g, s, p, G, dt);
    const auto uc = correct_velocity(g, update_density(g, s.rho, us, G, dt), m);
    std::vector<double> gap(uc.size());
    for (std::size_t k = 0; k < uc.size(); ++k) gap[k] = us[k] - uc[k];
    const double expect = ref::max_abs(gap) * std::exp(-dt / (eps * eps));
    CHECK(expect > 0.0);
    CHECK(consistency_residual(g, next, m).max_abs == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("frozen-density relaxation contracts noise by exp(-dt/eps^2)") {
    Grid1D g(-5, 5, 160);
    const double m = 3.0, eps = 0.1, dt = 1e-3;
    auto s = make_state(g, barenblatt_cells(g, 0.01, m, 1.0), m);
    std::mt19937_64 rng(12);
    const auto noise = ref::uniform(rng, s.u.size(), -1e-6, 1e-6);
    for (std::size_t k = 1; k + 1 < s.u.size(); ++k) s.u[k] += noise[k];
    const double factor = std::exp(-dt / (eps * eps));
    double prev = consistency_residual(g, s, m).l2;
    for (int n = 0; n < 10; ++n) {
        s.u = relax_velocity(g, s.rho, s.u, m, dt, eps);
        const double now = consistency_residual(g, s, m).l2;
        CHECK(now / prev == doctest::Approx(factor).epsilon(1e-8));
        prev = now;
    }
}

TEST_CASE("predicted velocity is second order close to the corrected one") {
    // m = 2: u* = u^{n+1} - dt G (u^{n+1} - u^n) + O(dt^2). The upwind update
    // and the centred divergence of the prediction also differ by O(dt dx^2),
    // so dt and dx are refined together.
    const double m = 2.0;
    std::vector<double> gaps;
    for (std::size_t nx : {120u, 240u, 480u, 960u}) {
        Grid1D g(-6, 6, nx);
        const double dt = 0.05 * g.dx();
        std::vector<double> rho(nx);
        for (std::size_t i = 0; i < nx; ++i) rho[i] = 1.0 + 0.3 * std::tanh(g.center(i));
        const auto s = make_state(g, rho, m);
        const CellField G(nx, 1.0);
        const auto us = predict_velocity(g, s, params(m, 1.0, DtPolicy::exact(dt)), G, dt);
        const auto un = correct_velocity(g, update_density(g, s.rho, us, G, dt), m);
        gaps.push_back(ref::max_diff(us, un));
    }
    for (std::size_t k = 0; k + 1 < gaps.size(); ++k) CHECK(std::log2(gaps[k] / gaps[k + 1]) > 1.8);
}

TEST_CASE("positivity for every tested exponent") {
    std::mt19937_64 rng(31);
    Grid1D g(-4, 4, 160);
    for (double m : {2.0, 3.0, 15.0, 60.0, 80.0, 100.0}) {
        for (int trial = 0; trial < 4; ++trial) {
            auto rho = ref::random_density(rng, g.nx(), 30);
            if (m > 10)
                for (auto& r : rho) r = std::min(r, 1.0);
            auto p = params(m, 1.0, DtPolicy::adaptive(1.0, 1e-2));
            auto s = make_state(g, rho, m);
            for (int n = 0; n < 40; ++n) {
                s = step(g, s, p);
                for (double r : s.rho) REQUIRE(r >= 0.0);
            }
        }
    }
}

TEST_CASE("m = 2 L2 stability with constant growth") {
    Grid1D g(-6, 6, 120);
    std::mt19937_64 rng(2);
    const double G = 1.0, dt = 0.1;
    for (int trial = 0; trial < 3; ++trial) {
        auto rho = ref::random_density(rng, g.nx(), 40);
        const double n0 = l2_norm(g, rho);
        auto s = make_state(g, rho, 2.0);
        auto p = params(2.0, G, DtPolicy::fixed(dt));
        while (s.t < 1.0 - 1e-12) {
            s = step(g, s, p, 1.0 - s.t);
            CHECK(l2_norm(g, s.rho) <= 1.5 * std::exp(G * s.t) * n0);
        }
    }
}

TEST_CASE("mass is conserved exactly without growth") {
    Grid1D g(-5, 5, 200);
    std::mt19937_64 rng(77);
    auto s = make_state(g, ref::random_density(rng, g.nx(), 50), 4.0);
    const double m0 = mass(g, s.rho);
    auto p = params(4.0, 0.0, DtPolicy::adaptive(1.0, 1e-2));
    for (int n = 0; n < 50; ++n) {
        s = step(g, s, p);
        CHECK(std::abs(mass(g, s.rho) - m0) <= 1e-12 * m0);
    }
}

TEST_CASE("m = 80 in vitro run tracks the front ODE") {
    Grid1D g(-5, 5, 400);
    const double m = 80.0, dt = 0.00125;
    std::vector<double> rho(g.nx());
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double p = oracles::pinf_1d(NutrientModel::Vitro, g.center(i), 1.0);
        rho[i] = std::pow((m - 1.0) / m * p, 1.0 / (m - 1.0));
    }
    ModelParams p;
    p.m = m;
    p.growth = NutrientGrowth{};
    p.dt_policy = DtPolicy::fixed(dt);
    auto s = make_state(g, rho, m);
    const auto oracle = oracles::front_ode_1d(NutrientModel::Vitro, 1.0, 1.3);
    const auto x = g.centers();
    int steps = 0;
    for (double target : {0.625, 1.25}) {
        while (s.t < target - 1e-12) {
            s = step(g, s, p, target - s.t);
            ++steps;
            for (double r : s.rho) REQUIRE((r >= 0.0 && r <= 1.05));
        }
        const auto fronts = front_positions(x, s.rho, front_threshold(s.rho, m, p.support_threshold));
        REQUIRE(fronts.size() == 2);
        const double R = oracle.at(s.t).radii[1];
        CHECK(std::abs(fronts[1] - R) <= 2.0 * g.dx());
        CHECK(std::abs(fronts[0] + R) <= 2.0 * g.dx());
    }
    CHECK(steps == 1000);
}
