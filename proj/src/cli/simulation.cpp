#include "cli/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cli/initial.hpp"
#include "frontcap/error.hpp"
#include "frontcap/multispecies.hpp"
#include "frontcap/stepper1d.hpp"
#include "frontcap/stepper2d.hpp"
#include "frontcap/stepper_radial.hpp"

namespace frontcap::cli {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

double max_of(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

double front_level(const RunConfig& rc, std::span<const double> rho) {
    switch (rc.front_rule) {
        case RunConfig::FrontRule::HalfMax: return 0.5 * max_of(rho);
        case RunConfig::FrontRule::Support: return rc.support_threshold;
        default: return front_threshold(rho, rc.m, rc.support_threshold);
    }
}

class Line final : public Simulation {
public:
    explicit Line(const RunConfig& rc)
        : rc_(rc), grid_(rc.a, rc.b, rc.nx), p_(rc.model_params()),
          s_(make_state(grid_, initial_density_1d(rc, grid_), rc.m)) {}

    std::unique_ptr<Simulation> clone() const override { return std::make_unique<Line>(*this); }
    double t() const override { return s_.t; }
    double last_dt() const override { return s_.last_dt; }
    void advance(double cap) override { s_ = step(grid_, s_, p_, cap); }
    std::span<const double> density() const override { return s_.rho; }
    std::vector<double> coordinates() const override { return grid_.centers(); }
    double spacing() const override { return grid_.dx(); }

    SeriesRecord record() const override {
        SeriesRecord r;
        r.t = s_.t;
        r.mass = mass(grid_, s_.rho);
        r.energy = discrete_energy(grid_, s_.rho, rc_.m);
        r.l2_norm = l2_norm(grid_, s_.rho);
        r.max_density = max_of(s_.rho);
        r.fronts = front_positions(grid_.centers(), s_.rho, front_level(rc_, s_.rho));
        const auto w = consistency_residual(grid_, s_, rc_.m);
        r.residual_max = w.max_abs;
        r.residual_l2 = w.l2;
        return r;
    }

    void write_snapshot(std::ostream& os) const override {
        os << "x,rho,p\n";
        for (std::size_t i = 0; i < grid_.nx(); ++i)
            os << fmt(grid_.center(i)) << ',' << fmt(s_.rho[i]) << ',' << fmt(pressure(s_.rho[i], rc_.m)) << '\n';
    }

    bool touches_boundary(double thr) const override { return s_.rho.front() > thr || s_.rho.back() > thr; }

private:
    RunConfig rc_;
    Grid1D grid_;
    ModelParams p_;
    State1D s_;
};

class Plane final : public Simulation {
public:
    explicit Plane(const RunConfig& rc)
        : rc_(rc), grid_(rc.a, rc.b, rc.nx, rc.ay, rc.by, rc.ny), p_(rc.model_params()),
          s_(make_state_2d(grid_, initial_density_2d(rc, grid_), rc.m)) {}

    std::unique_ptr<Simulation> clone() const override { return std::make_unique<Plane>(*this); }
    double t() const override { return s_.t; }
    double last_dt() const override { return s_.last_dt; }
    void advance(double cap) override { s_ = step_2d(grid_, s_, p_, cap); }
    std::span<const double> density() const override { return s_.rho; }
    std::vector<double> coordinates() const override { return {}; }
    double spacing() const override { return std::min(grid_.dx(), grid_.dy()); }

    SeriesRecord record() const override {
        SeriesRecord r;
        r.t = s_.t;
        r.mass = mass(grid_, s_.rho);
        r.energy = discrete_energy(grid_, s_.rho, rc_.m);
        r.l2_norm = l2_norm(grid_, s_.rho);
        r.max_density = max_of(s_.rho);
        const auto front = angular_front(grid_, s_.rho, front_level(rc_, s_.rho));
        if (front.rays > 0) r.fronts = {front.mean_radius, front.std_radius};
        const auto c = correct_velocity_2d(grid_, s_.rho, rc_.m);
        double mx = 0.0, sq = 0.0;
        for (std::size_t k = 0; k < c.u.size(); ++k) {
            const double wu = s_.u[k] - c.u[k], wv = s_.v[k] - c.v[k];
            mx = std::max({mx, std::abs(wu), std::abs(wv)});
            sq += wu * wu + wv * wv;
        }
        r.residual_max = mx;
        r.residual_l2 = std::sqrt(sq * grid_.dx() * grid_.dy());
        return r;
    }

    void write_snapshot(std::ostream& os) const override {
        os << "x,y,rho,p\n";
        for (std::size_t j = 0; j < grid_.ny(); ++j)
            for (std::size_t i = 0; i < grid_.nx(); ++i) {
                const double r = s_.rho[grid_.index(i, j)];
                os << fmt(grid_.x().center(i)) << ',' << fmt(grid_.y().center(j)) << ',' << fmt(r) << ','
                   << fmt(pressure(r, rc_.m)) << '\n';
            }
    }

    bool touches_boundary(double thr) const override {
        const std::size_t nx = grid_.nx(), ny = grid_.ny();
        for (std::size_t i = 0; i < nx; ++i)
            if (s_.rho[grid_.index(i, 0)] > thr || s_.rho[grid_.index(i, ny - 1)] > thr) return true;
        for (std::size_t j = 0; j < ny; ++j)
            if (s_.rho[grid_.index(0, j)] > thr || s_.rho[grid_.index(nx - 1, j)] > thr) return true;
        return false;
    }

private:
    RunConfig rc_;
    Grid2D grid_;
    ModelParams p_;
    State2D s_;
};

class Radial final : public Simulation {
public:
    explicit Radial(const RunConfig& rc)
        : rc_(rc), grid_(rc.r_max, rc.nr), p_(rc.model_params()),
          s_(make_state_radial(grid_, initial_density_radial(rc, grid_), rc.m)) {}

    std::unique_ptr<Simulation> clone() const override { return std::make_unique<Radial>(*this); }
    double t() const override { return s_.t; }
    double last_dt() const override { return s_.last_dt; }
    void advance(double cap) override { s_ = step_radial(grid_, s_, p_, cap); }
    std::span<const double> density() const override { return s_.rho; }
    std::vector<double> coordinates() const override { return grid_.centers(); }
    double spacing() const override { return grid_.dr(); }

    SeriesRecord record() const override {
        SeriesRecord r;
        r.t = s_.t;
        r.mass = mass(grid_, s_.rho);
        double e = 0.0, q = 0.0;
        for (std::size_t i = 0; i < grid_.nr(); ++i) {
            const double w = 2.0 * 3.141592653589793 * grid_.center(i) * grid_.dr();
            e += w * std::pow(s_.rho[i], rc_.m) / (rc_.m - 1.0);
            q += w * s_.rho[i] * s_.rho[i];
        }
        r.energy = e;
        r.l2_norm = std::sqrt(q);
        r.max_density = max_of(s_.rho);
        r.fronts = front_positions(grid_.centers(), s_.rho, front_level(rc_, s_.rho));
        const auto uc = correct_velocity_radial(grid_, s_.rho, rc_.m);
        double mx = 0.0, sq = 0.0;
        for (std::size_t k = 0; k < uc.size(); ++k) {
            const double w = s_.u[k] - uc[k];
            mx = std::max(mx, std::abs(w));
            sq += w * w;
        }
        r.residual_max = mx;
        r.residual_l2 = std::sqrt(sq * grid_.dr());
        return r;
    }

    void write_snapshot(std::ostream& os) const override {
        os << "r,rho,p\n";
        for (std::size_t i = 0; i < grid_.nr(); ++i)
            os << fmt(grid_.center(i)) << ',' << fmt(s_.rho[i]) << ',' << fmt(pressure(s_.rho[i], rc_.m)) << '\n';
    }

    bool touches_boundary(double thr) const override { return s_.rho.back() > thr; }

private:
    RunConfig rc_;
    RadialGrid grid_;
    ModelParams p_;
    StateRadial s_;
};

class Species final : public Simulation {
public:
    explicit Species(const RunConfig& rc)
        : rc_(rc), grid_(rc.a, rc.b, rc.nx), p_(rc.model_params()),
          q_{rc.pqd_a, rc.pqd_b, rc.pqd_d, rc.pqd_mu, rc.pqd_clip} {
        auto P = initial_density_1d(rc, grid_);
        CellField zero(grid_.nx(), 0.0);
        s_ = make_species_state(grid_, std::move(P), zero, zero, rc.m);
    }

    std::unique_ptr<Simulation> clone() const override { return std::make_unique<Species>(*this); }
    double t() const override { return s_.t; }
    double last_dt() const override { return s_.last_dt; }
    void advance(double cap) override { s_ = step_pqd(grid_, s_, p_, q_, cap); }
    std::span<const double> density() const override { return s_.rho_total; }
    std::vector<double> coordinates() const override { return grid_.centers(); }
    double spacing() const override { return grid_.dx(); }

    SeriesRecord record() const override {
        SeriesRecord r;
        r.t = s_.t;
        r.mass = mass(grid_, s_.rho_total);
        r.energy = discrete_energy(grid_, s_.rho_total, rc_.m);
        r.l2_norm = l2_norm(grid_, s_.rho_total);
        r.max_density = max_of(s_.rho_total);
        r.fronts = front_positions(grid_.centers(), s_.rho_total, front_level(rc_, s_.rho_total));
        State1D view;
        view.rho = s_.rho_total;
        view.u = s_.u;
        const auto w = consistency_residual(grid_, view, rc_.m);
        r.residual_max = w.max_abs;
        r.residual_l2 = w.l2;
        return r;
    }

    void write_snapshot(std::ostream& os) const override {
        os << "x,rho,p,rho_P,rho_Q,rho_D\n";
        const auto Q = s_.rho_Q();
        for (std::size_t i = 0; i < grid_.nx(); ++i)
            os << fmt(grid_.center(i)) << ',' << fmt(s_.rho_total[i]) << ',' << fmt(pressure(s_.rho_total[i], rc_.m))
               << ',' << fmt(s_.rho_P[i]) << ',' << fmt(Q[i]) << ',' << fmt(s_.rho_D[i]) << '\n';
    }

    bool touches_boundary(double thr) const override {
        return s_.rho_total.front() > thr || s_.rho_total.back() > thr;
    }

    void check_invariants() const override {
        for (std::size_t i = 0; i < grid_.nx(); ++i) {
            if (s_.rho_P[i] < 0.0 || s_.rho_D[i] < 0.0) {
                std::ostringstream msg;
                msg << "species positivity violated in cell " << i << " at t=" << s_.t;
                throw InvariantViolation(msg.str());
            }
        }
    }

private:
    RunConfig rc_;
    Grid1D grid_;
    ModelParams p_;
    PQDParams q_;
    SpeciesState s_;
};

}  // namespace

std::unique_ptr<Simulation> make_simulation(const RunConfig& rc) {
    switch (rc.geometry) {
        case Geometry::Line: return std::make_unique<Line>(rc);
        case Geometry::Plane: return std::make_unique<Plane>(rc);
        case Geometry::Radial: return std::make_unique<Radial>(rc);
        case Geometry::Species: return std::make_unique<Species>(rc);
    }
    throw ConfigError("unknown geometry");
}

}  // namespace frontcap::cli
