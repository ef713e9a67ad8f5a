#include "frontcap/model.hpp"

#include <algorithm>
#include <limits>

#include "frontcap/error.hpp"

namespace frontcap {

double growth_max(const GrowthSpec& g) {
    struct Visitor {
        double operator()(const ConstantGrowth& c) const { return c.value; }
        double operator()(const FieldGrowth& f) const {
            return f.values.empty() ? 0.0 : *std::max_element(f.values.begin(), f.values.end());
        }
        double operator()(const NutrientGrowth& n) const { return n.c_background; }
    };
    return std::visit(Visitor{}, g);
}

void ModelParams::validate() const {
    if (!(m > 1.0) || !std::isfinite(m)) throw ContractViolation("ModelParams: m must be > 1");
    if (!(support_threshold > 0.0 && support_threshold <= 1e-3))
        throw ContractViolation("ModelParams: support_threshold must lie in (0, 1e-3]");
    if (!(dt_policy.dt > 0.0)) throw ContractViolation("ModelParams: dt must be positive");
    if (!(dt_policy.cfl_factor > 0.0 && dt_policy.cfl_factor <= 1.0))
        throw ContractViolation("ModelParams: CFL factor must lie in (0, 1]");
    if (relaxation_epsilon && !(*relaxation_epsilon > 0.0))
        throw ContractViolation("ModelParams: relaxation epsilon must be positive");
    if (const auto* c = std::get_if<ConstantGrowth>(&growth); c && !(c->value >= 0.0 && std::isfinite(c->value)))
        throw ContractViolation("ModelParams: growth must be finite and nonnegative");
    if (const auto* f = std::get_if<FieldGrowth>(&growth)) {
        for (double v : f->values)
            if (!(v >= 0.0 && std::isfinite(v))) throw ContractViolation("ModelParams: growth field must be finite and >= 0");
    }
    if (const auto* n = std::get_if<NutrientGrowth>(&growth)) {
        if (!(n->c_background > 0.0 && std::isfinite(n->c_background)))
            throw ContractViolation("ModelParams: nutrient background must be positive");
        if (!(n->exchange_rate > 0.0)) throw ContractViolation("ModelParams: exchange rate must be positive");
    }
    krylov.validate();
}

}  // namespace frontcap
