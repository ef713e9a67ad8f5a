#include "frontcap/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "frontcap/error.hpp"

namespace frontcap::oracles {

double barenblatt(double x, double t, double m, double C) {
    if (!(t > 0.0) || !(m > 1.0)) throw ContractViolation("barenblatt: need t > 0 and m > 1");
    const double a = 1.0 / (m + 1.0);
    const double core = C - a * (m - 1.0) / (2.0 * m) * x * x / std::pow(t, 2.0 * a);
    if (core <= 0.0) return 0.0;
    return std::pow(t, -a) * std::pow(core, 1.0 / (m - 1.0));
}

double barenblatt_edge(double t, double m, double C) {
    const double a = 1.0 / (m + 1.0);
    return std::sqrt(2.0 * m * C / (a * (m - 1.0))) * std::pow(t, a);
}

FrontState FrontTrajectory::at(double t) const {
    if (states.empty() || t < states.front().t || t > states.back().t + 1e-12)
        throw ContractViolation("front trajectory does not cover the requested time");
    const double t0 = states.front().t;
    std::size_t k = static_cast<std::size_t>(std::floor((t - t0) / h));
    k = std::min(k, states.size() - 1);
    while (k > 0 && states[k].t > t) --k;
    while (k + 1 < states.size() && states[k + 1].t <= t) ++k;
    if (k + 1 >= states.size()) return states.back();
    const auto& s0 = states[k];
    const auto& s1 = states[k + 1];
    const double w = (t - s0.t) / (s1.t - s0.t);
    FrontState out;
    out.t = t;
    out.radii.resize(s0.radii.size());
    for (std::size_t i = 0; i < out.radii.size(); ++i) out.radii[i] = (1.0 - w) * s0.radii[i] + w * s1.radii[i];
    return out;
}

namespace {

template <class F>
std::vector<double> rk4(const F& f, const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    auto axpy = [&](const std::vector<double>& k, double s) {
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = y[i] + s * k[i];
        return r;
    };
    const auto k1 = f(y);
    const auto k2 = f(axpy(k1, 0.5 * h));
    const auto k3 = f(axpy(k2, 0.5 * h));
    const auto k4 = f(axpy(k3, h));
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
}

std::size_t step_count(double t_end, double h) {
    if (!(h > 0.0) || !(t_end >= 0.0)) throw ContractViolation("front ODE: need h > 0 and t_end >= 0");
    return static_cast<std::size_t>(std::ceil(t_end / h - 1e-9));
}

}  // namespace

FrontTrajectory front_ode_1d(NutrientModel model, double R0, double t_end, double h) {
    if (!(R0 > 0.0)) throw ContractViolation("front_ode_1d: R0 must be positive");
    auto f = [model](const std::vector<double>& y) {
        const double R = y[0];
        // sinh(R) e^-R written as (1 - e^-2R)/2 so large R does not overflow
        return std::vector<double>{model == NutrientModel::Vitro ? std::tanh(R) : 0.5 * (1.0 - std::exp(-2.0 * R))};
    };
    FrontTrajectory tr;
    tr.h = h;
    const std::size_t n = step_count(t_end, h);
    tr.states.reserve(n + 1);
    std::vector<double> y{R0};
    tr.states.push_back({{-R0, R0}, 0.0});
    for (std::size_t k = 1; k <= n; ++k) {
        y = rk4(f, y, h);
        tr.states.push_back({{-y[0], y[0]}, static_cast<double>(k) * h});
    }
    return tr;
}

double pinf_1d(NutrientModel model, double x, double R) {
    if (!(R > 0.0)) throw ContractViolation("pinf_1d: R must be positive");
    if (std::abs(x) > R) return 0.0;
    if (model == NutrientModel::Vitro) return 1.0 - std::cosh(x) / std::cosh(R);
    return (std::cosh(R) - std::cosh(x)) * std::exp(-R);
}

double annulus_coefficient(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw ContractViolation("annulus_coefficient: radii must be positive");
    const double s = (b - a) / a;
    if (s < 1e-6) return 0.5 * a * a * (1.0 + s + s * s / 6.0);
    return (b - a) * (b + a) / (4.0 * std::log1p(s));
}

FrontTrajectory front_ode_radial(std::span<const double> radii0, double t_end, double h) {
    const std::size_t n = radii0.size();
    if (n != 2 && n != 4) throw ContractViolation("front_ode_radial: expected 2 or 4 radii");
    if (!(radii0[0] > 0.0)) throw ContractViolation("front_ode_radial: radii must be positive");
    for (std::size_t i = 1; i < n; ++i)
        if (!(radii0[i] > radii0[i - 1])) throw ContractViolation("front_ode_radial: radii must increase");

    auto f = [n](const std::vector<double>& y) {
        std::vector<double> d(n);
        for (std::size_t p = 0; p < n; p += 2) {
            const double A = annulus_coefficient(y[p], y[p + 1]);
            d[p] = 0.5 * y[p] - A / y[p];
            d[p + 1] = 0.5 * y[p + 1] - A / y[p + 1];
        }
        return d;
    };
    auto too_close = [&](const std::vector<double>& y) {
        const double limit = 10.0 * h;
        if (y[0] < limit) return true;
        for (std::size_t i = 1; i < n; ++i)
            if (y[i] - y[i - 1] < limit) return true;
        return false;
    };

    FrontTrajectory tr;
    tr.h = h;
    const std::size_t steps = step_count(t_end, h);
    std::vector<double> y(radii0.begin(), radii0.end());
    tr.states.push_back({y, 0.0});
    for (std::size_t k = 1; k <= steps; ++k) {
        auto next = rk4(f, y, h);
        if (too_close(next)) {
            tr.merged = true;
            break;
        }
        y = std::move(next);
        tr.states.push_back({y, static_cast<double>(k) * h});
    }
    return tr;
}

double pinf_radial(std::span<const double> radii, double r) {
    const std::size_t n = radii.size();
    if (n != 2 && n != 4) throw ContractViolation("pinf_radial: expected 2 or 4 radii");
    for (std::size_t p = 0; p < n; p += 2) {
        const double a = radii[p], b = radii[p + 1];
        if (r < a || r > b) continue;
        const double L = std::log(b) - std::log(a);
        const double A = (b * b - a * a) / (4.0 * L);
        const double B = -(b * b * std::log(a) - a * a * std::log(b)) / (4.0 * L);
        return std::max(0.0, -r * r / 4.0 + A * std::log(r) + B);
    }
    return 0.0;
}

}  // namespace frontcap::oracles
