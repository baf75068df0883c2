#include "sdwave/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sdwave {

namespace {

using json = nlohmann::json;

const std::set<std::string> kExperiments = {
    "simulate",  "audit-energy", "linear-decay", "smoothing",      "compare",
    "equilibria", "omega-limit",  "basins",       "split",          "validate-model"};

void reject_unknown(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key \"" + path + it.key() + "\"");
    }
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError("\"" + path + key + "\" must be a number");
    return obj[key].get<double>();
}

std::vector<double> get_vec(const json& obj, const std::string& path,
                            const std::string& key) {
    if (!obj[key].is_array())
        throw ConfigError("\"" + path + key + "\" must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : obj[key]) {
        if (!x.is_number())
            throw ConfigError("\"" + path + key + "\" must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

SourceSpec parse_source(const json& obj) {
    reject_unknown(obj, "model.source.", {"family", "a", "coeffs"});
    std::string family = obj.value("family", std::string("cubic"));
    if (family == "cubic") return SourceSpec::cubic(get_num(obj, "model.source.", "a", 0.0));
    if (family == "quintic")
        return SourceSpec::quintic(get_num(obj, "model.source.", "a", 0.0));
    if (family == "odd-poly") {
        if (!obj.contains("coeffs"))
            throw ConfigError("\"model.source.coeffs\" required for odd-poly");
        return SourceSpec::odd_poly(get_vec(obj, "model.source.", "coeffs"));
    }
    throw ConfigError("unknown source family \"" + family +
                      "\"; available: cubic, quintic, odd-poly");
}

DampingSpec parse_damping(const json& obj) {
    reject_unknown(obj, "model.damping.", {"family", "b", "coeffs"});
    std::string family = obj.value("family", std::string("quartic"));
    if (family == "quartic")
        return DampingSpec::quartic(get_num(obj, "model.damping.", "b", 1.0));
    if (family == "constant")
        return DampingSpec::constant(get_num(obj, "model.damping.", "b", 1.0));
    if (family == "even-poly") {
        if (!obj.contains("coeffs"))
            throw ConfigError("\"model.damping.coeffs\" required for even-poly");
        return DampingSpec::even_poly(get_vec(obj, "model.damping.", "coeffs"));
    }
    throw ConfigError("unknown damping family \"" + family +
                      "\"; available: quartic, constant, even-poly");
}

SpectralField parse_forcing(const json& obj, const BasisSpec& basis) {
    SpectralField g(basis);
    if (obj.is_null()) return g;
    reject_unknown(obj, "model.forcing.", {"preset", "amplitude", "coeffs"});
    if (obj.contains("coeffs")) {
        auto c = get_vec(obj, "model.forcing.", "coeffs");
        if (c.size() > g.coeffs.size())
            throw ConfigError("\"model.forcing.coeffs\" longer than the mode count");
        std::copy(c.begin(), c.end(), g.coeffs.begin());
        return g;
    }
    std::string preset = obj.value("preset", std::string("zero"));
    double amp = get_num(obj, "model.forcing.", "amplitude", 1.0);
    if (preset == "zero") return g;
    if (preset == "first-mode") {
        g.coeffs[0] = amp;
        return g;
    }
    throw ConfigError("unknown forcing preset \"" + preset +
                      "\"; available: zero, first-mode");
}

// default numeric options per experiment; anything else is rejected
std::map<std::string, double> experiment_defaults(const std::string& exp) {
    if (exp == "audit-energy") return {{"levels", 3}, {"mu", 0.1}};
    if (exp == "linear-decay") return {{"probes", 50}};
    if (exp == "smoothing") return {{"t_min", 1e-4}, {"t_max", 1.0}, {"t_count", 25}};
    if (exp == "compare") return {{"ladder", 7}, {"delta0", 1e-2}};
    if (exp == "equilibria") return {{"starts", 8}, {"tol", 1e-10}};
    if (exp == "omega-limit")
        return {{"starts", 8}, {"velocity_threshold", 1e-8}, {"match_radius", 1e-3}};
    if (exp == "basins")
        return {{"starts", 8},   {"ensemble", 20},          {"radius", 1.0},
                {"velocity_threshold", 1e-8}, {"match_radius", 1e-3}};
    if (exp == "split")
        return {{"k_lo", 2}, {"k_hi", 8}, {"k_step", 2}, {"burn_in", 20.0}};
    if (exp == "validate-model") return {{"samples", 2001}};
    return {};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("top-level document must be an object");
    reject_unknown(doc, "", {"model", "solver", "experiment", "initial", "output", "seed"});

    RunConfig cfg;

    json model = doc.value("model", json::object());
    reject_unknown(model, "model.",
                   {"dimension", "modes_per_dim", "oversampling", "source", "damping",
                    "forcing"});
    int d = static_cast<int>(get_num(model, "model.", "dimension", 1));
    int n = static_cast<int>(get_num(model, "model.", "modes_per_dim", 32));
    double q = get_num(model, "model.", "oversampling", 1.5);
    if (d < 1 || d > 3) throw ConfigError("\"model.dimension\" must be 1, 2 or 3");
    if (n < 1) throw ConfigError("\"model.modes_per_dim\" must be >= 1");
    if (q < 1.0) throw ConfigError("\"model.oversampling\" must be >= 1");
    BasisSpec basis(d, n, q);
    SourceSpec src = model.contains("source") ? parse_source(model["source"])
                                              : SourceSpec::cubic(1.0);
    DampingSpec damp = model.contains("damping") ? parse_damping(model["damping"])
                                                 : DampingSpec::quartic(1.0);
    cfg.model = ModelSpec(basis, std::move(src), std::move(damp));
    cfg.model.forcing =
        parse_forcing(model.contains("forcing") ? model["forcing"] : json(), basis);

    json solver = doc.value("solver", json::object());
    reject_unknown(solver, "solver.", {"dt", "horizon", "scheme", "snapshot_stride"});
    cfg.solver.dt = get_num(solver, "solver.", "dt", 1e-3);
    cfg.solver.horizon = get_num(solver, "solver.", "horizon", 1.0);
    cfg.solver.scheme = solver.value("scheme", std::string("etd2"));
    cfg.solver.snapshot_stride =
        static_cast<int>(get_num(solver, "solver.", "snapshot_stride", 1));
    if (cfg.solver.dt <= 0.0) throw ConfigError("\"solver.dt\" must be > 0");
    if (cfg.solver.horizon <= 0.0) throw ConfigError("\"solver.horizon\" must be > 0");
    if (cfg.solver.scheme != "etd1" && cfg.solver.scheme != "etd2")
        throw ConfigError("\"solver.scheme\" must be \"etd1\" or \"etd2\"");
    if (cfg.solver.snapshot_stride < 1)
        throw ConfigError("\"solver.snapshot_stride\" must be >= 1");

    json exp = doc.value("experiment", json::object());
    if (!exp.is_object()) throw ConfigError("\"experiment\" must be an object");
    cfg.experiment = exp.value("name", std::string("simulate"));
    if (!kExperiments.count(cfg.experiment)) {
        std::string list;
        for (const auto& e : kExperiments) list += (list.empty() ? "" : ", ") + e;
        throw ConfigError("unknown experiment \"" + cfg.experiment +
                          "\"; available: " + list);
    }
    cfg.options = experiment_defaults(cfg.experiment);
    std::set<std::string> exp_keys = {"name"};
    for (const auto& [k, v] : cfg.options) exp_keys.insert(k);
    reject_unknown(exp, "experiment.", exp_keys);
    for (auto& [k, v] : cfg.options) v = get_num(exp, "experiment.", k, v);

    if (doc.contains("initial")) {
        json init = doc["initial"];
        reject_unknown(init, "initial.", {"w", "v"});
        if (init.contains("w")) cfg.initial_w = get_vec(init, "initial.", "w");
        if (init.contains("v")) cfg.initial_v = get_vec(init, "initial.", "v");
        std::size_t nm = basis.mode_count();
        if (cfg.initial_w.size() > nm || cfg.initial_v.size() > nm)
            throw ConfigError("\"initial\" coefficient list longer than the mode count");
    }

    json out = doc.value("output", json::object());
    reject_unknown(out, "output.", {"directory", "formats"});
    cfg.output_dir = out.value("directory", std::string("out"));
    if (out.contains("formats")) {
        cfg.write_csv = cfg.write_json = cfg.write_snapshots = false;
        for (const auto& f : out["formats"]) {
            std::string s = f.get<std::string>();
            if (s == "csv")
                cfg.write_csv = true;
            else if (s == "json")
                cfg.write_json = true;
            else if (s == "snapshots")
                cfg.write_snapshots = true;
            else
                throw ConfigError("unknown output format \"" + s +
                                  "\"; available: csv, json, snapshots");
        }
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned())
            throw ConfigError("\"seed\" must be a nonnegative integer");
        cfg.seed = doc["seed"].get<unsigned long long>();
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string echo_config(const RunConfig& cfg) {
    json model;
    model["dimension"] = cfg.model.basis.dimension;
    model["modes_per_dim"] = cfg.model.basis.modes_per_dim;
    model["oversampling"] = cfg.model.basis.oversampling;
    json src;
    src["family"] = cfg.model.source.family;
    if (cfg.model.source.family == "odd-poly")
        src["coeffs"] = cfg.model.source.odd_coeffs;
    else
        src["a"] = cfg.model.source.a;
    model["source"] = src;
    json damp;
    damp["family"] = cfg.model.damping.family;
    if (cfg.model.damping.family == "even-poly")
        damp["coeffs"] = cfg.model.damping.even_coeffs;
    else
        damp["b"] = cfg.model.damping.b;
    model["damping"] = damp;
    model["forcing"] = {{"coeffs", cfg.model.forcing.coeffs}};

    json doc;
    doc["model"] = model;
    doc["solver"] = {{"dt", cfg.solver.dt},
                     {"horizon", cfg.solver.horizon},
                     {"scheme", cfg.solver.scheme},
                     {"snapshot_stride", cfg.solver.snapshot_stride}};
    json exp;
    exp["name"] = cfg.experiment;
    for (const auto& [k, v] : cfg.options) exp[k] = v;
    doc["experiment"] = exp;
    if (!cfg.initial_w.empty() || !cfg.initial_v.empty())
        doc["initial"] = {{"w", cfg.initial_w}, {"v", cfg.initial_v}};
    std::vector<std::string> formats;
    if (cfg.write_csv) formats.push_back("csv");
    if (cfg.write_json) formats.push_back("json");
    if (cfg.write_snapshots) formats.push_back("snapshots");
    doc["output"] = {{"directory", cfg.output_dir}, {"formats", formats}};
    doc["seed"] = cfg.seed;
    return doc.dump(2);
}

}  // namespace sdwave
