#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "frontcap/diagnostics.hpp"
#include "frontcap/error.hpp"
#include "frontcap/multispecies.hpp"
#include "frontcap/stepper1d.hpp"
#include "reference.hpp"

using namespace frontcap;

namespace {

CellField proliferating(const Grid1D& g, double R0) {
    CellField p(g.nx(), 0.0);
    for (std::size_t i = 0; i < g.nx(); ++i) {
        const double x = g.center(i);
        if (std::abs(x) <= R0) p[i] = 1.0 - std::cosh(x) / std::cosh(R0);
    }
    return p;
}

ModelParams base(double m, GrowthSpec growth, DtPolicy dt) {
    ModelParams p;
    p.m = m;
    p.growth = growth;
    p.dt_policy = dt;
    return p;
}

double outer_front(const Grid1D& g, const CellField& rho, double m) {
    const auto f = front_positions(g.centers(), rho, front_threshold(rho, m, 1e-8));
    return f.empty() ? 0.0 : f.back();
}

}  // namespace

TEST_CASE("with all rates zero the species model is the single-species model") {
    Grid1D g(-4, 4, 200);
    const double m = 10.0;
    for (GrowthSpec growth : {GrowthSpec{ConstantGrowth{1.0}}, GrowthSpec{NutrientGrowth{}}}) {
        const auto p = base(m, growth, DtPolicy::adaptive(0.9, 2e-3));
        const auto P0 = proliferating(g, 1.0);
        auto sp = make_species_state(g, P0, CellField(g.nx(), 0.0), CellField(g.nx(), 0.0), m);
        auto s1 = make_state(g, P0, m);
        for (int n = 0; n < 50; ++n) {
            sp = step_pqd(g, sp, p, PQDParams{});
            s1 = step(g, s1, p);
            REQUIRE(sp.t == s1.t);
            CHECK(ref::max_diff(sp.rho_total, s1.rho) <= 1e-12);
            CHECK(ref::max_diff(sp.rho_P, s1.rho) <= 1e-12);
            CHECK(ref::max_abs(sp.rho_D) == 0.0);
        }
    }
}

TEST_CASE("quiescent cells follow their own balance law") {
    // Q_new - Q = -div(Q u*) + dt a P_new - dt (b + d) Q, rebuilt from the
    // public pieces of the step.
    Grid1D g(-6, 6, 300);
    const double m = 20.0;
    const auto p = base(m, NutrientGrowth{}, DtPolicy::fixed(2e-3));
    const PQDParams q{1.0, 0.5, 0.7, 0.3, false};
    auto s = make_species_state(g, proliferating(g, 1.0), CellField(g.nx(), 0.0), CellField(g.nx(), 0.0), m);
    for (int n = 0; n < 200; ++n) {
        const auto Q = s.rho_Q();
        const auto c = growth_field(g, s.rho_total, p);
        std::vector<double> src(g.nx());
        for (std::size_t i = 0; i < g.nx(); ++i) src[i] = c[i] * s.rho_P[i] - q.mu * s.rho_D[i];
        const auto next = step_pqd(g, s, p, q);
        const double dt = next.last_dt;
        const auto us = predict_velocity_with_source(g, s.rho_total, s.u, src, m, p.support_threshold, dt);
        const auto moved = update_density(g, Q, us, CellField(g.nx(), 0.0), dt);
        const auto Qn = next.rho_Q();
        double scale = ref::max_abs(next.rho_total);
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const double expect = moved[i] + dt * q.a * next.rho_P[i] - dt * (q.b + q.d) * Q[i];
            REQUIRE(std::abs(Qn[i] - expect) <= 1e-10 * scale);
        }
        s = next;
    }
}

TEST_CASE("total mass grows by the proliferating source when mu = 0") {
    Grid1D g(-6, 6, 300);
    const auto p = base(40.0, NutrientGrowth{}, DtPolicy::fixed(2e-3));
    const PQDParams q{1.0, 1.0, 1.0, 0.0, false};
    auto s = make_species_state(g, proliferating(g, 1.0), CellField(g.nx(), 0.0), CellField(g.nx(), 0.0), 40.0);
    for (int n = 0; n < 100; ++n) {
        const auto c = growth_field(g, s.rho_total, p);
        const auto next = step_pqd(g, s, p, q);
        double src = 0.0;
        for (std::size_t i = 0; i < g.nx(); ++i) src += next.last_dt * c[i] * next.rho_P[i] * g.dx();
        CHECK(std::abs(mass(g, next.rho_total) - mass(g, s.rho_total) - src) <= 1e-12 * mass(g, s.rho_total));
        s = next;
    }
}

TEST_CASE("negative quiescent density is an error unless clipping is on") {
    Grid1D g(-2, 2, 40);
    CellField P(g.nx(), 0.0), Q(g.nx(), 0.0), D(g.nx(), 0.0);
    for (std::size_t i = 15; i < 25; ++i) {
        P[i] = 0.3;
        Q[i] = 0.5;
    }
    const auto p = base(2.0, ConstantGrowth{0.0}, DtPolicy::exact(0.1));
    PQDParams q{0.0, 10.0, 10.0, 0.0, false};
    auto s = make_species_state(g, P, Q, D, 2.0);
    CHECK_THROWS_AS(step_pqd(g, s, p, q), InvariantViolation);
    q.clip_quiescent = true;
    const auto next = step_pqd(g, s, p, q);
    for (double r : next.rho_Q()) CHECK(r >= -1e-10);
}

TEST_CASE("reaction bound limits the step") {
    Grid1D g(-2, 2, 40);
    const auto s = make_species_state(g, CellField(40, 0.0), CellField(40, 0.0), CellField(40, 0.0), 2.0);
    const auto p = base(2.0, ConstantGrowth{0.0}, DtPolicy::fixed(1.0));
    CHECK(pqd_dt(g, s, p, PQDParams{1.0, 3.0, 1.0, 0.5, false}) < 0.25);
    CHECK_THROWS_AS(PQDParams({-1.0, 0.0, 0.0, 0.0, false}).validate(), ContractViolation);
}

namespace {

struct PqdRun {
    SpeciesState s;
    double front;
};

PqdRun run_paper_config(NutrientModel model, double a) {
    Grid1D g(-8, 8, 400);
    const double m = 80.0;
    NutrientGrowth n;
    n.model = model;
    const auto p = base(m, n, DtPolicy::fixed(0.002));
    const PQDParams q{a, 1.0, 1.0, 0.0, false};
    auto s = make_species_state(g, proliferating(g, 1.025), CellField(g.nx(), 0.0), CellField(g.nx(), 0.0), m);
    while (s.t < 4.0 - 1e-12) {
        s = step_pqd(g, s, p, q, 4.0 - s.t);
        const auto Q = s.rho_Q();
        for (std::size_t i = 0; i < g.nx(); ++i) {
            REQUIRE(s.rho_P[i] >= 0.0);
            REQUIRE(s.rho_D[i] >= 0.0);
            REQUIRE(s.rho_total[i] >= 0.0);
            REQUIRE(std::abs(s.rho_total[i] - (s.rho_P[i] + Q[i] + s.rho_D[i])) <= 1e-10);
        }
    }
    return {s, outer_front(g, s.rho_total, m)};
}

}  // namespace

TEST_CASE("in vitro PQD structure at t = 4") {
    Grid1D g(-8, 8, 400);
    const auto vitro = run_paper_config(NutrientModel::Vitro, 1.0);
    const auto& s = vitro.s;
    CHECK(vitro.front > 1.025);

    const auto dmax = std::max_element(s.rho_D.begin(), s.rho_D.end()) - s.rho_D.begin();
    CHECK(std::abs(g.center(static_cast<std::size_t>(dmax))) <= 0.2 * vitro.front);

    const double centre = s.rho_P[g.nx() / 2];
    CHECK(centre < *std::max_element(s.rho_P.begin(), s.rho_P.end()));

    const auto vivo = run_paper_config(NutrientModel::Vivo, 2.0);
    CHECK(vivo.front < vitro.front);
}
