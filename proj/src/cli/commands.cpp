#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "frontcap/error.hpp"
#include "frontcap/oracles.hpp"
#include "frontcap/simd.hpp"

namespace fs = std::filesystem;

namespace frontcap::cli {

namespace {

std::string snapshot_name(std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "rho_t%04zu.csv", k);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw ConfigError("cannot write '" + p.string() + "'");
    return os;
}

void check_state(const Simulation& sim, const RunConfig& rc) {
    const auto rho = sim.density();
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (!std::isfinite(rho[i])) {
            std::ostringstream msg;
            msg << "non-finite density in cell " << i << " at t=" << sim.t();
            throw InvariantViolation(msg.str());
        }
        if (rho[i] < 0.0) {
            std::ostringstream msg;
            msg << "positivity violated: rho=" << rho[i] << " in cell " << i << " at t=" << sim.t();
            throw InvariantViolation(msg.str());
        }
    }
    sim.check_invariants();
    if (rc.abort_on_boundary && sim.touches_boundary(rc.support_threshold)) {
        std::ostringstream msg;
        msg << "boundary contact: density reached the edge of the domain at t=" << sim.t();
        throw InvariantViolation(msg.str());
    }
}

void check_growth_bound(const RunConfig& rc) {
    if (rc.dt_rule == DtRule::Cfl) return;
    const double g = growth_max(rc.growth) * rc.base_dt();
    if (g >= 1.0) {
        std::ostringstream msg;
        msg << "growth condition 1-G_max*dt>0 violated: G_max*dt = " << g;
        throw CflViolation(msg.str());
    }
}

void write_series_header(std::ostream& os) {
    os << "t,mass,energy,l2_norm,max_density,residual_max,residual_l2,fronts\n";
}

void write_series_row(std::ostream& os, const SeriesRecord& r) {
    os << fmt(r.t) << ',' << fmt(r.mass) << ',' << fmt(r.energy) << ',' << fmt(r.l2_norm) << ','
       << fmt(r.max_density) << ',' << fmt(r.residual_max) << ',' << fmt(r.residual_l2) << ',';
    for (std::size_t k = 0; k < r.fronts.size(); ++k) os << (k ? ";" : "") << fmt(r.fronts[k]);
    os << '\n';
}

nlohmann::json record_json(const SeriesRecord& r) {
    return {{"t", r.t},
            {"mass", r.mass},
            {"energy", r.energy},
            {"l2_norm", r.l2_norm},
            {"max_density", r.max_density},
            {"fronts", r.fronts},
            {"residual_max", r.residual_max},
            {"residual_l2", r.residual_l2}};
}

}  // namespace

std::vector<double> snapshot_targets(const RunConfig& rc) {
    std::vector<double> t{0.0};
    if (!rc.snapshot_times.empty()) {
        for (double s : rc.snapshot_times)
            if (s > 0.0 && s < rc.t_end) t.push_back(s);
    } else {
        for (std::size_t k = 1; k <= rc.snapshots; ++k)
            t.push_back(rc.t_end * static_cast<double>(k) / static_cast<double>(rc.snapshots + 1));
    }
    t.push_back(rc.t_end);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

RunSummary execute(const RunConfig& rc, const RunHooks& hooks) {
    check_growth_bound(rc);
    auto sim = make_simulation(rc);
    const auto targets = snapshot_targets(rc);
    check_state(*sim, rc);

    RunSummary out;
    const bool barenblatt = rc.geometry == Geometry::Line && rc.ic == IcType::Barenblatt;
    SpaceTimeL1 l1;
    const auto x = sim->coordinates();
    auto exact = [&](double xx, double t) { return oracles::barenblatt(xx, rc.ic_t0 + t, rc.m, rc.ic_C); };

    std::size_t next = 0;
    auto snapshot = [&](const Simulation& s) {
        out.snapshots.emplace_back(next, s.t());
        if (hooks.on_snapshot) hooks.on_snapshot(s, next);
        ++next;
    };

    if (hooks.on_step) hooks.on_step(*sim);
    if (!targets.empty() && targets.front() <= 0.0) snapshot(*sim);

    const double eps = 1e-9 * std::max(1.0, rc.t_end);
    while (rc.t_end - sim->t() > eps) {
        auto prev = sim->clone();
        sim->advance(rc.t_end - sim->t());
        ++out.steps;
        check_state(*sim, rc);
        if (barenblatt) l1.add(x, sim->density(), sim->t(), sim->spacing(), sim->last_dt(), exact);
        if (hooks.on_step) hooks.on_step(*sim);
        while (next < targets.size() && sim->t() >= targets[next] - eps) {
            const bool use_prev =
                prev->t() > (next ? out.snapshots.back().second : -1.0) &&
                std::abs(prev->t() - targets[next]) < std::abs(sim->t() - targets[next]);
            snapshot(use_prev ? *prev : *sim);
        }
    }
    while (next < targets.size()) snapshot(*sim);

    out.t = sim->t();
    const auto rho = sim->density();
    out.min_density = rho.empty() ? 0.0 : *std::min_element(rho.begin(), rho.end());
    out.max_density = rho.empty() ? 0.0 : *std::max_element(rho.begin(), rho.end());
    if (barenblatt) out.l1_error = l1.value();
    return out;
}

int cmd_run(const Config& cfg, const fs::path& out, std::ostream& log) {
    const auto rc = resolve(cfg);
    fs::create_directories(out);
    auto series = open_out(out / "series.csv");
    write_series_header(series);

    std::size_t step = 0;
    SeriesRecord last;
    RunHooks hooks;
    hooks.on_step = [&](const Simulation& s) {
        last = s.record();
        if (step++ % rc.series_every == 0) write_series_row(series, last);
    };
    hooks.on_snapshot = [&](const Simulation& s, std::size_t k) {
        auto os = open_out(out / snapshot_name(k));
        s.write_snapshot(os);
    };
    const auto summary = execute(rc, hooks);
    if ((step - 1) % rc.series_every != 0) write_series_row(series, last);

    nlohmann::json snaps = nlohmann::json::array();
    for (const auto& [k, t] : summary.snapshots) snaps.push_back({{"file", snapshot_name(k)}, {"t", t}});
    nlohmann::json diag = record_json(last);
    diag["steps"] = summary.steps;
    diag["min_density"] = summary.min_density;
    diag["snapshots"] = snaps;
    diag["kernels"] = simd::active().name;
    if (summary.l1_error >= 0.0) diag["l1_error"] = summary.l1_error;

    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(config_to_json(cfg));
    doc["diagnostics"] = diag;
    open_out(out / "run.json") << doc.dump(2) << '\n';
    log << "run finished: t=" << fmt(summary.t) << " steps=" << summary.steps << " max_density=" << fmt(summary.max_density)
        << '\n';
    return kOk;
}

int cmd_converge(const Config& cfg, const fs::path& out, std::ostream& log) {
    const auto rc = resolve(cfg);
    if (rc.geometry != Geometry::Line || rc.ic != IcType::Barenblatt)
        throw OracleUnavailable("converge needs a 1d Barenblatt configuration (analytic reference)");
    if (rc.converge_dx.size() < 2) throw ConfigError("converge.dx: need at least two spacings");

    std::vector<double> dxs, errs;
    for (double dx : rc.converge_dx) {
        auto r = rc;
        r.nx = static_cast<std::size_t>(std::llround((rc.b - rc.a) / dx));
        r.snapshot_times.clear();
        r.snapshots = 0;
        const auto s = execute(r, {});
        dxs.push_back((r.b - r.a) / static_cast<double>(r.nx));
        errs.push_back(s.l1_error);
        log << "dx=" << fmt(dxs.back()) << " error=" << fmt(s.l1_error) << " steps=" << s.steps << '\n';
    }
    const auto orders = eoc(errs, dxs);
    fs::create_directories(out);
    auto os = open_out(out / "eoc.csv");
    os << "dx,error,order\n";
    for (std::size_t k = 0; k < dxs.size(); ++k)
        os << fmt(dxs[k]) << ',' << fmt(errs[k]) << ',' << (k ? fmt(orders[k - 1]) : "") << '\n';
    log << "orders:";
    for (double o : orders) log << ' ' << fmt(o);
    log << '\n';
    return kOk;
}

int cmd_compare_oracle(const Config& cfg, const fs::path& out, std::ostream& log) {
    const auto rc = resolve(cfg);
    if (rc.ic != IcType::PinfSeeded || (rc.geometry != Geometry::Line && rc.geometry != Geometry::Radial))
        throw OracleUnavailable("compare-oracle needs a 1d or radial configuration seeded from the limiting pressure");
    if (rc.geometry == Geometry::Line) {
        const auto* n = std::get_if<NutrientGrowth>(&rc.growth);
        if (!n || n->model != rc.ic_model || n->c_background != 1.0 || n->exchange_rate != 1.0)
            throw OracleUnavailable("compare-oracle: 1d oracle assumes nutrient growth of the seeded model with c_B = 1");
    } else {
        const auto* g = std::get_if<ConstantGrowth>(&rc.growth);
        if (!g || g->value != 1.0) throw OracleUnavailable("compare-oracle: radial oracle assumes G = 1");
    }

    const double horizon = rc.t_end + 1e-3;
    const auto traj = rc.geometry == Geometry::Line ? oracles::front_ode_1d(rc.ic_model, rc.ic_R0, horizon)
                                                    : oracles::front_ode_radial(rc.ic_radii, horizon);
    auto p_exact = [&](double x, const std::vector<double>& radii) {
        return rc.geometry == Geometry::Line ? oracles::pinf_1d(rc.ic_model, x, radii.back())
                                             : oracles::pinf_radial(radii, x);
    };

    fs::create_directories(out);
    auto csv = open_out(out / "compare.csv");
    csv << "t,fronts,oracle_fronts,front_error,front_tol,pressure_linf,pressure_tol,pass\n";
    bool all_pass = true;
    std::size_t compared = 0;
    nlohmann::json rows = nlohmann::json::array();

    RunHooks hooks;
    hooks.on_snapshot = [&](const Simulation& s, std::size_t) {
        const double t = s.t();
        if (t > traj.t_end()) return;  // past a front merge: the ODE no longer applies
        const auto oracle = traj.at(t).radii;
        const auto x = s.coordinates();
        const auto rho = s.density();
        const double h = s.spacing();
        double level = 0.0;
        for (double r : rho) level = std::max(level, r);
        level *= 0.5;
        const auto fronts = front_positions(x, rho, level);

        double ferr = std::numeric_limits<double>::infinity();
        if (fronts.size() == oracle.size()) {
            ferr = 0.0;
            for (std::size_t k = 0; k < fronts.size(); ++k) ferr = std::max(ferr, std::abs(fronts[k] - oracle[k]));
        }
        const double exclude = static_cast<double>(rc.compare_exclude_cells) * h;
        double perr = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double pe = p_exact(x[i], oracle);
            if (pe <= 0.0) continue;
            bool near = false;
            for (double f : oracle) near = near || std::abs(x[i] - f) <= exclude;
            for (double f : fronts) near = near || std::abs(x[i] - f) <= exclude;
            if (near) continue;
            perr = std::max(perr, std::abs(pressure(rho[i], rc.m) - pe));
        }
        const double ftol = rc.compare_front_tol * h;
        const bool pass = ferr <= ftol && perr <= rc.compare_pressure_tol;
        all_pass = all_pass && pass;
        ++compared;

        auto join = [](const std::vector<double>& v) {
            std::string s;
            for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + fmt(v[k]);
            return s;
        };
        csv << fmt(t) << ',' << join(fronts) << ',' << join(oracle) << ',' << fmt(ferr) << ',' << fmt(ftol) << ','
            << fmt(perr) << ',' << fmt(rc.compare_pressure_tol) << ',' << (pass ? "PASS" : "FAIL") << '\n';
        rows.push_back({{"t", t},
                        {"fronts", fronts},
                        {"oracle_fronts", oracle},
                        {"front_error", std::isfinite(ferr) ? nlohmann::json(ferr) : nlohmann::json(nullptr)},
                        {"pressure_linf", perr},
                        {"pass", pass}});
    };
    execute(rc, hooks);

    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(config_to_json(cfg));
    doc["snapshots"] = rows;
    doc["merged"] = traj.merged;
    doc["pass"] = all_pass && compared > 0;
    open_out(out / "compare.json") << doc.dump(2) << '\n';
    log << (all_pass && compared > 0 ? "PASS" : "FAIL") << ": " << compared << " snapshot(s) compared against the "
        << (rc.geometry == Geometry::Line ? "1d front ODE" : "radial front ODE") << (traj.merged ? " (fronts merge)" : "")
        << '\n';
    return kOk;
}

namespace {

bool stable_at(RunConfig rc, double dt) {
    rc.dt_rule = DtRule::Fixed;
    rc.strict_dt = true;
    rc.dt = dt;
    rc.t_end = rc.sweep_t_end;
    rc.snapshot_times.clear();
    rc.snapshots = 0;
    rc.abort_on_boundary = false;
    double bound = 0.0;
    RunHooks hooks;
    hooks.on_step = [&](const Simulation& s) {
        double mx = 0.0;
        for (double r : s.density()) mx = std::max(mx, r);
        if (bound == 0.0) bound = rc.sweep_blowup * std::max(mx, 1e-300);
        if (mx > bound) throw InvariantViolation("density blow-up");
    };
    try {
        execute(rc, hooks);
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

int cmd_sweep_m(const Config& cfg, const fs::path& out, std::ostream& log) {
    const auto base = resolve(cfg);
    if (base.sweep_m.empty()) throw ConfigError("sweep.m: give a list of exponents");
    if (!(base.sweep_dt_lo > 0.0) || !(base.sweep_dt_hi > base.sweep_dt_lo))
        throw ConfigError("sweep: need 0 < dt_lo < dt_hi");

    fs::create_directories(out);
    auto csv = open_out(out / "sweep.csv");
    csv << "m,dt_max,bracket\n";
    std::vector<double> lx, ly;
    nlohmann::json rows = nlohmann::json::array();
    for (double m : base.sweep_m) {
        auto rc = base;
        rc.m = m;
        if (!(m > 1.0)) throw ConfigError("sweep.m: exponents must exceed 1");
        // at least ten steps per trial, or every step is the truncated last one
        double lo = base.sweep_dt_lo, hi = std::min(base.sweep_dt_hi, base.sweep_t_end / 10.0);
        if (!(hi > lo)) throw ConfigError("sweep: dt_lo must be below sweep.t_end/10");
        std::string bracket = "ok";
        // dt_lo is taken as stable without a trial run: at small steps that
        // run is by far the most expensive one
        if (stable_at(rc, hi)) {
            lo = hi;
            bracket = "upper";
        } else {
            bool found = false;
            for (std::size_t k = 0; k < base.sweep_iterations; ++k) {
                const double mid = std::sqrt(lo * hi);
                const bool ok = stable_at(rc, mid);
                found = found || ok;
                (ok ? lo : hi) = mid;
            }
            if (!found) bracket = "lower";
        }
        csv << fmt(m) << ',' << fmt(lo) << ',' << bracket << '\n';
        rows.push_back({{"m", m}, {"dt_max", lo}, {"bracket", bracket}});
        log << "m=" << fmt(m) << " dt_max=" << fmt(lo) << (bracket == "ok" ? "" : " (" + bracket + " bracket)") << '\n';
        if (lo > 0.0) {
            lx.push_back(std::log(m - 1.0));
            ly.push_back(std::log(lo));
        }
    }

    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(config_to_json(cfg));
    doc["rows"] = rows;
    if (lx.size() >= 2) {
        double mx = 0, my = 0;
        for (std::size_t k = 0; k < lx.size(); ++k) {
            mx += lx[k];
            my += ly[k];
        }
        mx /= static_cast<double>(lx.size());
        my /= static_cast<double>(lx.size());
        double sxy = 0, sxx = 0;
        for (std::size_t k = 0; k < lx.size(); ++k) {
            sxy += (lx[k] - mx) * (ly[k] - my);
            sxx += (lx[k] - mx) * (lx[k] - mx);
        }
        if (sxx > 0.0) {
            doc["loglog_slope"] = sxy / sxx;
            log << "log-log slope of dt_max against m-1: " << fmt(sxy / sxx) << '\n';
        }
    }
    open_out(out / "sweep.json") << doc.dump(2) << '\n';
    return kOk;
}

int run_command(const std::string& name, const std::string& config_path, const std::string& out_dir,
                const std::vector<std::string>& overrides, std::ostream& log, std::ostream& err) {
    try {
        auto cfg = load_config(config_path);
        for (const auto& o : overrides) apply_override(cfg, o);
        const fs::path out(out_dir);
        if (name == "run") return cmd_run(cfg, out, log);
        if (name == "converge") return cmd_converge(cfg, out, log);
        if (name == "compare-oracle") return cmd_compare_oracle(cfg, out, log);
        if (name == "sweep-m") return cmd_sweep_m(cfg, out, log);
        err << "error: unknown command '" << name << "'\n";
        return kUsage;
    } catch (const OracleUnavailable& e) {
        err << "oracle unavailable: " << e.what() << '\n';
        return kNoOracle;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace frontcap::cli
