#include "cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace frontcap::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t i = 0, j = s.size();
    while (i < j && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    while (j > i && std::isspace(static_cast<unsigned char>(s[j - 1]))) --j;
    return s.substr(i, j - i);
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty() && std::isfinite(d)) return d;
    } catch (const std::exception&) {
    }
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
}

// Marks keys as they are read so leftovers can be reported as typos.
class Reader {
public:
    explicit Reader(const Config& c) : cfg_(c) {}

    const std::string* find(const std::string& key) {
        used_.insert(key);
        auto it = cfg_.find(key);
        return it == cfg_.end() ? nullptr : &it->second;
    }
    bool has(const std::string& key) const { return cfg_.count(key) > 0; }

    std::string str(const std::string& key, const std::string& def) {
        const auto* v = find(key);
        return v ? lower(trim(*v)) : def;
    }
    std::string required(const std::string& key) {
        const auto* v = find(key);
        if (!v) throw ConfigError("missing config key '" + key + "'");
        return lower(trim(*v));
    }
    double num(const std::string& key, double def) {
        const auto* v = find(key);
        return v ? to_double(key, *v) : def;
    }
    double required_num(const std::string& key) { return to_double(key, required(key)); }
    std::size_t count(const std::string& key, std::size_t def) {
        const double d = num(key, static_cast<double>(def));
        if (d < 0 || d != std::floor(d)) throw ConfigError("config key '" + key + "': expected a whole number");
        return static_cast<std::size_t>(d);
    }
    bool flag(const std::string& key, bool def) {
        const auto* v = find(key);
        if (!v) return def;
        const auto s = lower(trim(*v));
        if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
        if (s == "false" || s == "0" || s == "no" || s == "off") return false;
        throw ConfigError("config key '" + key + "': expected true/false, got '" + *v + "'");
    }
    std::vector<double> list(const std::string& key) {
        const auto* v = find(key);
        return v ? parse_list(*v) : std::vector<double>{};
    }

    void reject_unknown() const {
        for (const auto& [k, v] : cfg_)
            if (!used_.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }

private:
    const Config& cfg_;
    std::set<std::string> used_;
};

NutrientModel nutrient_model(const std::string& key, const std::string& s) {
    if (s == "vitro") return NutrientModel::Vitro;
    if (s == "vivo") return NutrientModel::Vivo;
    throw ConfigError("config key '" + key + "': expected vitro or vivo, got '" + s + "'");
}

std::vector<Box> parse_boxes(const std::string& s, bool two_d) {
    std::vector<Box> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (trim(item).empty()) continue;
        std::vector<double> v;
        std::stringstream is(item);
        std::string tok;
        while (std::getline(is, tok, ':')) v.push_back(to_double("ic.boxes", trim(tok)));
        if (v.size() != (two_d ? 4u : 2u))
            throw ConfigError("ic.boxes: each box needs " + std::string(two_d ? "x0:x1:y0:y1" : "x0:x1"));
        out.push_back(two_d ? Box{v[0], v[1], v[2], v[3]} : Box{v[0], v[1], 0.0, 0.0});
    }
    if (out.empty()) throw ConfigError("ic.boxes: no boxes given");
    return out;
}

}  // namespace

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(to_double("list", tok));
    }
    return out;
}

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

Config parse_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("config")) j = j["config"];
    if (!j.is_object()) throw ConfigError("config JSON: expected an object");
    Config cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it->is_string())
            cfg[it.key()] = it->get<std::string>();
        else if (it->is_primitive())
            cfg[it.key()] = it->dump();
        else
            throw ConfigError("config JSON: value of '" + it.key() + "' must be a scalar");
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_config_json(text);
    return parse_config_text(text);
}

void apply_override(Config& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected key=value");
    const auto key = trim(assignment.substr(0, eq));
    if (key.empty()) throw ConfigError("override '" + assignment + "': empty key");
    cfg[key] = trim(assignment.substr(eq + 1));
}

std::string config_to_json(const Config& cfg, int indent) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : cfg) j[k] = v;
    return j.dump(indent);
}

double RunConfig::spacing() const {
    switch (geometry) {
        case Geometry::Radial: return r_max / static_cast<double>(nr);
        case Geometry::Plane: return std::min((b - a) / static_cast<double>(nx), (by - ay) / static_cast<double>(ny));
        default: return (b - a) / static_cast<double>(nx);
    }
}

double RunConfig::base_dt() const {
    switch (dt_rule) {
        case DtRule::DxScaled: return dt_coeff * spacing();
        case DtRule::DxSquared: return spacing() * spacing();
        default: return dt;
    }
}

ModelParams RunConfig::model_params() const {
    ModelParams p;
    p.m = m;
    p.growth = growth;
    p.support_threshold = support_threshold;
    p.relaxation_epsilon = relaxation_epsilon;
    p.krylov = krylov;
    if (dt_rule == DtRule::Cfl)
        p.dt_policy = DtPolicy::adaptive(cfl_factor, dt);
    else if (strict_dt)
        p.dt_policy = DtPolicy::exact(base_dt());
    else
        p.dt_policy = DtPolicy::fixed(base_dt());
    if (!strict_dt) p.dt_policy.cfl_factor = cfl_factor;
    return p;
}

RunConfig resolve(const Config& cfg) {
    Reader r(cfg);
    RunConfig rc;

    const auto geo = r.str("geometry", "1d");
    if (geo == "1d")
        rc.geometry = Geometry::Line;
    else if (geo == "2d")
        rc.geometry = Geometry::Plane;
    else if (geo == "radial")
        rc.geometry = Geometry::Radial;
    else if (geo == "pqd")
        rc.geometry = Geometry::Species;
    else
        throw ConfigError("geometry: expected 1d, 2d, radial or pqd, got '" + geo + "'");

    rc.a = r.num("domain.a", rc.a);
    rc.b = r.num("domain.b", rc.b);
    rc.ay = r.num("domain.ay", rc.a);
    rc.by = r.num("domain.by", rc.b);
    rc.r_max = r.num("domain.r_max", rc.r_max);
    if (!(rc.b > rc.a) || !(rc.by > rc.ay) || !(rc.r_max > 0.0)) throw ConfigError("domain: empty interval");

    auto cells = [&](const std::string& nkey, double length, std::size_t def) {
        if (r.has("grid.dx") && r.has(nkey)) throw ConfigError("grid: give either grid.dx or " + nkey);
        if (r.has("grid.dx")) {
            const double dx = r.required_num("grid.dx");
            if (!(dx > 0.0)) throw ConfigError("grid.dx must be positive");
            return static_cast<std::size_t>(std::llround(length / dx));
        }
        return r.count(nkey, def);
    };
    rc.nx = cells("grid.nx", rc.b - rc.a, rc.nx);
    rc.ny = cells("grid.ny", rc.by - rc.ay, rc.nx);
    rc.nr = cells("grid.nr", rc.r_max, rc.nr);
    r.find("grid.dx");

    rc.m = r.num("model.m", rc.m);
    if (!(rc.m > 1.0)) throw ConfigError("model.m must exceed 1");

    rc.t_end = r.required_num("time.t_end");
    if (!(rc.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
    const auto rule = r.str("time.dt_policy", "fixed");
    if (rule == "fixed")
        rc.dt_rule = DtRule::Fixed;
    else if (rule == "cfl")
        rc.dt_rule = DtRule::Cfl;
    else if (rule == "dx_scaled")
        rc.dt_rule = DtRule::DxScaled;
    else if (rule == "dx_squared")
        rc.dt_rule = DtRule::DxSquared;
    else
        throw ConfigError("time.dt_policy: expected fixed, cfl, dx_scaled or dx_squared");
    rc.dt = r.num("time.dt", rc.dt_rule == DtRule::Cfl ? 1e30 : rc.dt);
    rc.dt_coeff = r.num("time.dt_coeff", rc.dt_coeff);
    rc.cfl_factor = r.num("time.cfl_factor", rc.cfl_factor);
    rc.strict_dt = r.flag("time.strict", false);
    if (!(rc.dt > 0.0) || !(rc.dt_coeff > 0.0) || !(rc.cfl_factor > 0.0))
        throw ConfigError("time: dt, dt_coeff and cfl_factor must be positive");

    const auto ic = r.str("ic.type", "zero");
    if (ic == "zero") {
        rc.ic = IcType::Zero;
    } else if (ic == "barenblatt") {
        rc.ic = IcType::Barenblatt;
        rc.ic_C = r.required_num("ic.C");
        rc.ic_t0 = r.num("ic.t0", rc.ic_t0);
        const auto sampling = r.str("ic.sampling", "average");
        if (sampling != "point" && sampling != "average") throw ConfigError("ic.sampling: expected point or average");
        rc.ic_cell_average = sampling == "average";
        if (!(rc.ic_t0 > 0.0)) throw ConfigError("ic.t0 must be positive");
    } else if (ic == "pinf_seeded") {
        rc.ic = IcType::PinfSeeded;
        if (rc.geometry == Geometry::Radial) {
            rc.ic_radii = r.list("ic.radii");
            if (rc.ic_radii.size() != 2 && rc.ic_radii.size() != 4)
                throw ConfigError("ic.radii: expected 2 or 4 radii");
        } else {
            rc.ic_model = nutrient_model("ic.model", r.required("ic.model"));
            rc.ic_R0 = r.required_num("ic.R0");
        }
    } else if (ic == "indicator") {
        rc.ic = IcType::Indicator;
        rc.ic_value = r.num("ic.value", 1.0);
        rc.ic_boxes = parse_boxes(r.required("ic.boxes"), rc.geometry == Geometry::Plane);
    } else if (ic == "flower") {
        rc.ic = IcType::Flower;
        rc.ic_value = r.num("ic.value", 0.9);
    } else if (ic == "gaussian") {
        rc.ic = IcType::Gaussian;
        rc.ic_amplitude = r.num("ic.amplitude", 1.0);
        rc.ic_width = r.num("ic.width", 0.5);
        rc.ic_center = r.num("ic.center", 0.0);
    } else if (ic == "pqd") {
        rc.ic = IcType::Pqd;
        rc.ic_R0 = r.num("ic.R0", 1.025);
    } else {
        throw ConfigError("ic.type: unknown initial condition '" + ic + "'");
    }
    if (rc.ic == IcType::Flower && rc.geometry != Geometry::Plane) throw ConfigError("ic.type flower needs 2d");
    if (rc.ic == IcType::Pqd && rc.geometry != Geometry::Species) throw ConfigError("ic.type pqd needs pqd geometry");

    const auto growth = r.str("growth.type", "constant");
    if (growth == "constant") {
        rc.growth = ConstantGrowth{r.num("growth.value", 0.0)};
    } else if (growth == "nutrient") {
        NutrientGrowth n;
        n.model = nutrient_model("nutrient.model", r.required("nutrient.model"));
        n.c_background = r.num("nutrient.c_background", 1.0);
        n.exchange_rate = r.num("nutrient.exchange_rate", 1.0);
        const auto edge = r.str("nutrient.vitro_boundary", "face");
        if (edge == "face")
            n.boundary = VitroBoundary::Face;
        else if (edge == "cell")
            n.boundary = VitroBoundary::Cell;
        else
            throw ConfigError("nutrient.vitro_boundary: expected face or cell");
        rc.growth = n;
    } else {
        throw ConfigError("growth.type: expected constant or nutrient");
    }
    if (rc.geometry == Geometry::Radial && !std::holds_alternative<ConstantGrowth>(rc.growth))
        throw ConfigError("radial geometry supports constant growth only");

    rc.pqd_a = r.num("pqd.a", 0.0);
    rc.pqd_b = r.num("pqd.b", 0.0);
    rc.pqd_d = r.num("pqd.d", 0.0);
    rc.pqd_mu = r.num("pqd.mu", 0.0);
    rc.pqd_clip = r.flag("pqd.clip_quiescent", false);

    rc.snapshots = r.count("output.snapshots", rc.snapshots);
    rc.snapshot_times = r.list("output.times");
    rc.series_every = std::max<std::size_t>(1, r.count("output.series_every", 1));

    if (r.has("relaxation.epsilon")) {
        rc.relaxation_epsilon = r.required_num("relaxation.epsilon");
        if (!(*rc.relaxation_epsilon > 0.0)) throw ConfigError("relaxation.epsilon must be positive");
    }
    rc.support_threshold = r.num("thresholds.support", rc.support_threshold);
    const auto fr = r.str("thresholds.front", "auto");
    if (fr == "auto")
        rc.front_rule = RunConfig::FrontRule::Auto;
    else if (fr == "half_max")
        rc.front_rule = RunConfig::FrontRule::HalfMax;
    else if (fr == "support")
        rc.front_rule = RunConfig::FrontRule::Support;
    else
        throw ConfigError("thresholds.front: expected auto, half_max or support");
    rc.abort_on_boundary = r.flag("run.abort_on_boundary", true);

    rc.krylov.restart = r.count("solver.restart", rc.krylov.restart);
    rc.krylov.max_iterations = r.count("solver.max_iterations", rc.krylov.max_iterations);
    rc.krylov.tolerance = r.num("solver.tolerance", rc.krylov.tolerance);
    rc.krylov.jacobi = r.flag("solver.jacobi", true);

    rc.converge_dx = r.list("converge.dx");

    rc.compare_front_tol = r.num("compare.front_tol_cells", rc.compare_front_tol);
    rc.compare_pressure_tol = r.num("compare.pressure_tol", rc.compare_pressure_tol);
    rc.compare_exclude_cells = r.count("compare.exclude_cells", rc.compare_exclude_cells);

    rc.sweep_m = r.list("sweep.m");
    rc.sweep_t_end = r.num("sweep.t_end", rc.t_end);
    rc.sweep_dt_lo = r.num("sweep.dt_lo", rc.sweep_dt_lo);
    rc.sweep_dt_hi = r.num("sweep.dt_hi", rc.sweep_dt_hi);
    rc.sweep_iterations = r.count("sweep.iterations", rc.sweep_iterations);
    rc.sweep_blowup = r.num("sweep.blowup", rc.sweep_blowup);

    r.reject_unknown();

    const std::size_t minimum = 4;
    if (rc.nx < minimum || rc.ny < minimum || rc.nr < minimum) throw ConfigError("grid: need at least 4 cells");
    try {
        rc.model_params().validate();
    } catch (const ContractViolation& e) {
        throw ConfigError(e.what());
    }
    return rc;
}

}  // namespace frontcap::cli
