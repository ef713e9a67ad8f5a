#pragma once

// Experiment configuration: a flat map of dotted keys, e.g.
//
//   geometry = 1d
//   model.m = 3
//   ic.type = barenblatt
//
// read from key = value text (# comments) or from the JSON written to
// run.json, then resolved into a typed RunConfig.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frontcap/error.hpp"
#include "frontcap/model.hpp"

namespace frontcap::cli {

/// Malformed or incomplete configuration (exit status 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The requested command has no analytic reference for this setup (exit 4).
class OracleUnavailable : public Error {
public:
    using Error::Error;
};

using Config = std::map<std::string, std::string>;

Config parse_config_text(const std::string& text);
Config parse_config_json(const std::string& text);
/// Chooses the parser from the first non-blank character.
Config load_config(const std::string& path);
void apply_override(Config& cfg, const std::string& assignment);
std::string config_to_json(const Config& cfg, int indent = 2);

enum class Geometry { Line, Plane, Radial, Species };

enum class DtRule {
    Fixed,      // time.dt
    Cfl,        // adaptive, time.cfl_factor, capped by time.dt
    DxScaled,   // time.dt_coeff * dx
    DxSquared,  // dx^2
};

enum class IcType { Zero, Barenblatt, PinfSeeded, Indicator, Flower, Gaussian, Pqd };

struct Box {
    double x0, x1, y0, y1;
};

struct RunConfig {
    Geometry geometry = Geometry::Line;

    double a = -5.0, b = 5.0;  // x extent (and y extent unless overridden)
    double ay = -5.0, by = 5.0;
    double r_max = 3.0;
    std::size_t nx = 160, ny = 160, nr = 60;

    double m = 2.0;
    double t_end = 0.1;
    DtRule dt_rule = DtRule::Fixed;
    double dt = 1e-3;
    double dt_coeff = 0.01;
    double cfl_factor = 1.0;
    bool strict_dt = false;

    IcType ic = IcType::Zero;
    double ic_C = 1.0;
    double ic_t0 = 0.01;
    bool ic_cell_average = true;  // Barenblatt: cell means (else centre values)
    NutrientModel ic_model = NutrientModel::Vitro;
    double ic_R0 = 1.0;
    std::vector<double> ic_radii;
    double ic_value = 1.0;
    std::vector<Box> ic_boxes;
    double ic_amplitude = 1.0;
    double ic_width = 0.5;
    double ic_center = 0.0;

    GrowthSpec growth = ConstantGrowth{0.0};

    double pqd_a = 0.0, pqd_b = 0.0, pqd_d = 0.0, pqd_mu = 0.0;
    bool pqd_clip = false;

    std::size_t snapshots = 10;
    std::vector<double> snapshot_times;  // explicit list overrides `snapshots`
    std::size_t series_every = 1;

    std::optional<double> relaxation_epsilon;
    double support_threshold = 1e-8;
    enum class FrontRule { Auto, HalfMax, Support } front_rule = FrontRule::Auto;
    bool abort_on_boundary = true;

    KrylovConfig krylov;

    std::vector<double> converge_dx;

    double compare_front_tol = 2.0;  // in cells
    double compare_pressure_tol = 0.05;
    std::size_t compare_exclude_cells = 3;

    std::vector<double> sweep_m;
    double sweep_t_end = 0.1;
    double sweep_dt_lo = 1e-6;
    double sweep_dt_hi = 1.0;
    std::size_t sweep_iterations = 30;
    double sweep_blowup = 10.0;

    double spacing() const;
    /// Step size the policy asks for on the configured grid.
    double base_dt() const;
    ModelParams model_params() const;
};

RunConfig resolve(const Config& cfg);

std::vector<double> parse_list(const std::string& s);

}  // namespace frontcap::cli
