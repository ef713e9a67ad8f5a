// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/initial.hpp"
#include "frontcap/diagnostics.hpp"
#include "frontcap/oracles.hpp"
#include "frontcap/stepper1d.hpp"
#include "frontcap/stepper_radial.hpp"
#include "json.hpp"
#include "reference.hpp"

using namespace frontcap;
using namespace frontcap::cli;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(FRONTCAP_SOURCE_DIR) / "configs";

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[" << what << "] ";
        }
    }
};

// smallest density seen by any run of the suite
double g_min_density = std::numeric_limits<double>::infinity();
std::size_t g_runs = 0;

void note_density(std::span<const double> rho) {
    for (double r : rho) g_min_density = std::min(g_min_density, r);
}

RunConfig load(const std::string& name, const std::vector<std::string>& overrides = {}) {
    auto cfg = load_config((kConfigs / name).string());
    for (const auto& o : overrides) apply_override(cfg, o);
    return resolve(cfg);
}

RunSummary run_tracked(const RunConfig& rc, RunHooks hooks = {}) {
    auto user = hooks.on_step;
    hooks.on_step = [user](const Simulation& s) {
        note_density(s.density());
        if (user) user(s);
    };
    ++g_runs;
    return execute(rc, hooks);
}

fs::path scratch(const std::string& tag) {
    auto p = fs::temp_directory_path() / ("frontcap_acc_" + std::to_string(::getpid()) + "_" + tag);
    fs::remove_all(p);
    return p;
}

std::string g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------------------

void ac1(Verdict& v) {
    for (const char* name : {"barenblatt_m3.cfg", "barenblatt_m15.cfg", "barenblatt_m60.cfg"}) {
        const auto base = load(name);
        std::vector<double> dxs, errs;
        for (double dx : base.converge_dx) {
            auto rc = base;
            rc.nx = static_cast<std::size_t>(std::llround((rc.b - rc.a) / dx));
            rc.snapshot_times.clear();
            rc.snapshots = 0;
            errs.push_back(run_tracked(rc).l1_error);
            dxs.push_back((rc.b - rc.a) / static_cast<double>(rc.nx));
        }
        const auto orders = eoc(errs, dxs);
        bool monotone = true;
        for (std::size_t k = 1; k < errs.size(); ++k) monotone = monotone && errs[k] < errs[k - 1];
        v.detail << "m=" << g(base.m) << " eoc=" << g(orders.back()) << " ";
        v.require(monotone, std::string(name) + " errors not decreasing");
        v.require(orders.back() >= 0.8, std::string(name) + " eoc < 0.8");
    }
}

void ac2(Verdict& v) {
    const auto base = load("barenblatt_m3_dx2.cfg");
    std::vector<double> dxs, errs;
    // the finest pair only: dt = dx^2 makes the full ladder needlessly long
    for (double dx : {0.0078125, 0.00390625}) {
        auto rc = base;
        rc.nx = static_cast<std::size_t>(std::llround((rc.b - rc.a) / dx));
        rc.snapshot_times.clear();
        rc.snapshots = 0;
        errs.push_back(run_tracked(rc).l1_error);
        dxs.push_back(dx);
    }
    const double order = eoc(errs, dxs).back();
    v.detail << "eoc=" << g(order) << " ";
    v.require(std::abs(order - 2.0) <= 0.3, "eoc outside 2 +- 0.3");
}

nlohmann::json compare(const std::string& name) {
    const auto dir = scratch(name);
    std::ostringstream log;
    auto cfg = load_config((kConfigs / name).string());
    ++g_runs;
    const int code = cmd_compare_oracle(cfg, dir, log);
    if (code != kOk) throw std::runtime_error("compare-oracle exited with " + std::to_string(code));
    std::ifstream is(dir / "compare.json");
    auto doc = nlohmann::json::parse(is);
    fs::remove_all(dir);
    return doc;
}

void ac3(Verdict& v) {
    for (const char* name : {"vitro_m80.cfg", "vivo_m80.cfg"}) {
        const auto doc = compare(name);
        const auto& rows = doc["snapshots"];
        std::size_t timed = 0;
        for (const auto& r : rows) {
            const double t = r["t"];
            if (t < 0.5) continue;  // t = 0 is compared too, but is not one of the three times
            ++timed;
            const bool ok = r["pass"];
            const double fe = r["front_error"].is_null() ? INFINITY : r["front_error"].get<double>();
            v.detail << name << "@" << g(t) << " front=" << g(fe) << " p=" << g(r["pressure_linf"].get<double>()) << " ";
            v.require(ok, std::string(name) + " at t=" + g(t));
        }
        v.require(timed == 3, std::string(name) + " expected three comparison times");
    }
}

void ac4(Verdict& v) {
    for (const char* name : {"annulus_single.cfg", "annulus_double.cfg"}) {
        const auto rc = load(name);
        const auto doc = compare(name);
        const auto& last = doc["snapshots"].back();
        const double t = last["t"];
        const double fe = last["front_error"].is_null() ? INFINITY : last["front_error"].get<double>();
        v.detail << name << " front=" << g(fe) << " (2dr=" << g(2 * rc.spacing()) << ") ";
        v.require(std::abs(t - 0.5) < 1e-9, std::string(name) + " final time");
        v.require(!doc["merged"].get<bool>(), std::string(name) + " oracle merged before t=0.5");
        v.require(fe <= 2.0 * rc.spacing(), std::string(name) + " front error");
    }
}

void ac5(Verdict& v) {
    std::mt19937_64 rng(2024);
    const double ms[] = {2.0, 3.0, 5.0, 15.0, 40.0, 80.0};
    std::size_t steps = 0;
    double lowest = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 200; ++trial) {
        const double m = ms[trial % 6];
        Grid1D grid(-4, 4, 160);
        auto rho = ref::random_density(rng, grid.nx(), 20);
        if (m > 10)
            for (auto& r : rho) r = std::min(r, 1.0);
        ModelParams p;
        p.m = m;
        p.growth = ConstantGrowth{std::uniform_real_distribution<double>(0.0, 2.0)(rng)};
        p.dt_policy = DtPolicy::adaptive(1.0, 5e-3);
        auto s = make_state(grid, rho, m);
        for (int n = 0; n < 40; ++n) {
            s = step(grid, s, p);
            ++steps;
            for (double r : s.rho) lowest = std::min(lowest, r);
        }
    }
    v.detail << "random steps=" << steps << " min=" << g(lowest) << "; suite runs=" << g_runs
             << " min=" << g(g_min_density) << " ";
    v.require(lowest >= 0.0, "random initial data went negative");
    v.require(g_min_density >= 0.0, "a suite run went negative");
}

const char* kBump = R"(geometry = 1d
domain.a = -10
domain.b = 10
grid.dx = 0.05
time.dt = 0.1
time.t_end = 2
ic.type = gaussian
ic.amplitude = 1
ic.width = 0.5
growth.type = constant
growth.value = 1
output.snapshots = 0
)";

void ac6(Verdict& v) {
    // a broad bump keeps dt = 0.1 inside the transport CFL bound, so every
    // step is taken at exactly 0.1; the sharp bump asks for 0.1 and gets the
    // positivity-capped step
    struct Case {
        const char* label;
        std::vector<std::string> overrides;
    };
    const Case cases[] = {
        {"broad", {"domain.a=-30", "domain.b=30", "grid.dx=0.2", "ic.amplitude=0.2", "ic.width=3", "time.strict=true"}},
        {"sharp", {}},
    };
    for (const auto& c : cases) {
        auto cfg = parse_config_text(kBump);
        cfg["model.m"] = "2";
        for (const auto& o : c.overrides) apply_override(cfg, o);
        const auto rc = resolve(cfg);
        double l2_0 = -1.0, worst = 0.0, dt_min = INFINITY, dt_max = 0.0;
        RunHooks h;
        h.on_step = [&](const Simulation& s) {
            const auto r = s.record();
            if (l2_0 < 0.0) l2_0 = r.l2_norm;
            worst = std::max(worst, r.l2_norm / (std::exp(r.t) * l2_0));
            if (r.t > 0.0) {
                dt_min = std::min(dt_min, s.last_dt());
                dt_max = std::max(dt_max, s.last_dt());
            }
        };
        const auto sum = run_tracked(rc, h);
        v.detail << c.label << ": max ||rho||/(e^t ||rho0||)=" << g(worst) << " steps=" << sum.steps << " dt in ["
                 << g(dt_min) << "," << g(dt_max) << "] ";
        v.require(worst <= 1.5, std::string("L2 bound exceeded (") + c.label + ")");
        v.require(std::abs(sum.t - 2.0) < 1e-9, std::string("final time (") + c.label + ")");
    }
}

void ac7(Verdict& v) {
    for (double m : {2.0, 4.0}) {
        auto cfg = parse_config_text(kBump);
        cfg["model.m"] = g(m);
        cfg["time.dt"] = "0.01";
        const auto rc = resolve(cfg);
        double e0 = -1.0, worst = 0.0;
        RunHooks h;
        h.on_step = [&](const Simulation& s) {
            const auto r = s.record();
            if (e0 < 0.0) e0 = r.energy;
            worst = std::max(worst, r.energy / (std::exp(m * r.t) * e0));
        };
        run_tracked(rc, h);
        v.detail << "m=" << g(m) << " max E/(e^{mt}E0)=" << g(worst) << " ";
        v.require(worst <= 1.0 + 1e-12, "energy bound exceeded for m=" + g(m));
    }
}

void ac8(Verdict& v) {
    // projection leaves W = 0 exactly
    double worst = 0.0;
    for (double m : {3.0, 15.0, 80.0}) {
        Grid1D grid(-5, 5, 200);
        RunConfig rc;
        rc.m = m;
        rc.ic = IcType::Barenblatt;
        rc.ic_C = m == 3.0 ? 1.0 : 0.1;
        rc.a = -5;
        rc.b = 5;
        rc.nx = 200;
        auto s = make_state(grid, initial_density_1d(rc, grid), m);
        ModelParams p;
        p.m = m;
        p.growth = ConstantGrowth{1.0};
        p.dt_policy = DtPolicy::adaptive(0.9, 1e-3);
        for (int n = 0; n < 100; ++n) {
            s = step(grid, s, p);
            worst = std::max(worst, consistency_residual(grid, s, m).max_abs);
        }
    }
    v.detail << "max|W| after steps=" << g(worst) << " ";
    v.require(worst == 0.0, "W not zero after correction");

    // frozen-density relaxation of injected noise
    Grid1D grid(-5, 5, 160);
    const double m = 3.0, eps = 0.1, dt = 1e-3;
    std::vector<double> rho(grid.nx());
    for (std::size_t i = 0; i < grid.nx(); ++i) rho[i] = oracles::barenblatt(grid.center(i), 0.01, m, 1.0);
    auto s = make_state(grid, rho, m);
    std::mt19937_64 rng(8);
    const auto noise = ref::uniform(rng, s.u.size(), -1e-6, 1e-6);
    for (std::size_t k = 1; k + 1 < s.u.size(); ++k) s.u[k] += noise[k];
    const double factor = std::exp(-dt / (eps * eps));
    double prev = consistency_residual(grid, s, m).l2, dev = 0.0;
    for (int n = 0; n < 20; ++n) {
        s.u = relax_velocity(grid, s.rho, s.u, m, dt, eps);
        const double now = consistency_residual(grid, s, m).l2;
        dev = std::max(dev, std::abs(now / prev / factor - 1.0));
        prev = now;
    }
    v.detail << "relaxation factor rel. deviation=" << g(dev) << " ";
    v.require(dev <= 1e-8, "relaxation contraction");
}

void ac9(Verdict& v) {
    for (const char* name : {"square_pair.cfg", "flower.cfg"}) {
        const auto rc = load(name);
        const Grid2D grid(rc.a, rc.b, rc.nx, rc.ay, rc.by, rc.ny);
        double peak = 0.0, std0 = -1.0, std_end = 0.0;
        RunHooks h;
        h.on_step = [&](const Simulation& s) {
            const auto rho = s.density();
            peak = std::max(peak, *std::max_element(rho.begin(), rho.end()));
            const auto f = angular_front(grid, rho, front_threshold(rho, rc.m, rc.support_threshold));
            if (std0 < 0.0) std0 = f.std_radius;
            std_end = f.std_radius;
        };
        run_tracked(rc, h);
        v.detail << name << " max=" << g(peak) << " std " << g(std0) << "->" << g(std_end) << " ";
        v.require(peak <= 1.05, std::string(name) + " density above 1.05");
        v.require(std_end < 0.5 * std0, std::string(name) + " angular spread not halved");
    }
}

void ac10(Verdict& v) {
    const auto rc = load("pqd_vitro.cfg");
    double sum_err = 0.0, q_min = 0.0;
    std::vector<std::vector<double>> last;
    RunHooks h;
    h.on_step = [&](const Simulation& s) {
        std::ostringstream os;
        s.write_snapshot(os);
        std::istringstream is(os.str());
        std::string line;
        std::getline(is, line);
        last.clear();
        while (std::getline(is, line)) {
            std::vector<double> row;
            std::istringstream ls(line);
            std::string tok;
            // strtod: subnormal entries make stod throw
            while (std::getline(ls, tok, ',')) row.push_back(std::strtod(tok.c_str(), nullptr));
            // x, rho, p, rho_P, rho_Q, rho_D
            sum_err = std::max(sum_err, std::abs(row[1] - (row[3] + row[4] + row[5])));
            q_min = std::min(q_min, row[4]);
            last.push_back(std::move(row));
        }
    };
    const auto sum = run_tracked(rc, h);
    double lo = INFINITY, hi = -INFINITY, dmax = -1.0, xd = 0.0;
    for (const auto& r : last) {
        if (r[1] > rc.support_threshold) {
            lo = std::min(lo, r[0]);
            hi = std::max(hi, r[0]);
        }
        if (r[5] > dmax) {
            dmax = r[5];
            xd = r[0];
        }
    }
    const double mid = 0.5 * (lo + hi), half = 0.1 * (hi - lo);
    v.detail << "t=" << g(sum.t) << " support=[" << g(lo) << "," << g(hi) << "] argmax D=" << g(xd)
             << " species-sum err=" << g(sum_err) << " min Q=" << g(q_min) << " ";
    v.require(std::abs(sum.t - 4.0) < 1e-9, "final time");
    v.require(dmax > 0.0 && std::abs(xd - mid) <= half, "dead-cell maximum outside the central 20%");
    v.require(sum_err <= 1e-10, "species sum");
    v.require(q_min >= -1e-10, "negative quiescent density");
}

void ac11(Verdict& v, const fs::path& bindir) {
    const char* suites[] = {"grid", "linsolve", "kernels", "simd", "oracles", "nutrient", "diagnostics", "stepper1d",
                            "stepper_radial"};
    for (const char* s : suites) {
        const auto exe = bindir / ("test_" + std::string(s));
        if (!fs::exists(exe)) {
            v.require(false, std::string(s) + " self-test binary missing");
            continue;
        }
        const std::string cmd = "\"" + exe.string() + "\" --minimal > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        v.detail << s << (rc == 0 ? " ok " : " FAILED ");
        v.require(rc == 0, std::string(s) + " self-tests");
    }
}

}  // namespace

int main(int, char**) {
    const fs::path bindir = fs::canonical("/proc/self/exe").parent_path();
    struct Criterion {
        const char* id;
        const char* title;
        std::function<void(Verdict&)> body;
    };
    const std::vector<Criterion> criteria = {
        {"AC11", "oracle self-tests", [&](Verdict& v) { ac11(v, bindir); }},
        {"AC1", "Barenblatt first-order convergence", ac1},
        {"AC2", "Barenblatt second-order regime", ac2},
        {"AC3", "1D Hele-Shaw limit", ac3},
        {"AC4", "radial annuli", ac4},
        {"AC6", "m=2 L2 stability bound", ac6},
        {"AC7", "energy bound", ac7},
        {"AC8", "consistency projection and relaxation", ac8},
        {"AC9", "2D qualitative limit", ac9},
        {"AC10", "PQD structure", ac10},
        {"AC5", "positivity", ac5},  // last: it also audits every run above
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += v.pass ? 0 : 1;
        std::cout << c.id << ' ' << (v.pass ? "PASS" : "FAIL") << " (" << c.title << ", " << g(secs) << " s): "
                  << v.detail.str() << std::endl;
    }
    std::cout << (failed ? std::to_string(failed) + " criterion(s) failed" : std::string("all criteria passed"))
              << std::endl;
    return failed ? 1 : 0;
}
