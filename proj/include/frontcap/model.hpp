#pragma once

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "frontcap/linsolve.hpp"

namespace frontcap {

enum class NutrientModel { Vitro, Vivo };

struct ConstantGrowth {
    double value = 0.0;
};

/// Spatially varying growth rate, one value per cell.
struct FieldGrowth {
    std::vector<double> values;
};

/// Where the in vitro solve puts c = c_B next to the tumour: on the face
/// between a support cell and a vacuum cell, or at the vacuum cell centre.
enum class VitroBoundary { Face, Cell };

/// Growth G(c) = c with c from an elliptic nutrient solve each step.
struct NutrientGrowth {
    NutrientModel model = NutrientModel::Vitro;
    VitroBoundary boundary = VitroBoundary::Face;  // vitro only
    double c_background = 1.0;
    double exchange_rate = 1.0;  // vivo only
};

using GrowthSpec = std::variant<ConstantGrowth, FieldGrowth, NutrientGrowth>;

/// Upper bound of the growth rate over the whole run.
double growth_max(const GrowthSpec& g);

struct DtPolicy {
    enum class Kind {
        Fixed,     // requested step, capped by the stability bounds
        Adaptive,  // largest step the stability bounds allow, up to `dt`
    };
    Kind kind = Kind::Adaptive;
    double dt = 1e-3;
    double cfl_factor = 1.0;
    bool strict = false;  // use `dt` verbatim, no caps and no post-hoc retries

    static DtPolicy fixed(double dt) { return {Kind::Fixed, dt, 1.0, false}; }
    static DtPolicy adaptive(double cfl_factor, double dt_max = 1e30) {
        return {Kind::Adaptive, dt_max, cfl_factor, false};
    }
    static DtPolicy exact(double dt) { return {Kind::Fixed, dt, 1.0, true}; }
};

struct ModelParams {
    double m = 2.0;
    GrowthSpec growth = ConstantGrowth{0.0};
    DtPolicy dt_policy;
    double support_threshold = 1e-8;
    std::optional<double> relaxation_epsilon;
    KrylovConfig krylov;

    void validate() const;
};

/// rho^e for rho >= 0 as exp(e ln rho), with cells at or below the vacuum
/// threshold mapped to 0 (rho^0 is always 1).
inline double guarded_pow(double rho, double e, double threshold) noexcept {
    if (e == 0.0) return 1.0;
    if (rho <= threshold) return 0.0;
    return std::exp(e * std::log(rho));
}

/// Pressure law p = m/(m-1) rho^(m-1).
inline double pressure(double rho, double m) noexcept {
    return rho > 0.0 ? m / (m - 1.0) * std::pow(rho, m - 1.0) : 0.0;
}

}  // namespace frontcap
