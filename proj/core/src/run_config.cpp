#include "vqasc/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vqasc/datagen.hpp"
#include "vqasc/dataset_io.hpp"

namespace vqasc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw std::runtime_error("config: field '" + field + "' " + what);
}

double require_number(const json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "must be a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) fail(field, "must be an integer");
    return j.get<int>();
}

std::string require_string(const json& j, const std::string& field) {
    if (!j.is_string()) fail(field, "must be a string");
    return j.get<std::string>();
}

GeneratorConfig parse_generator(const json& j, const std::string& field) {
    if (!j.is_object()) fail(field, "must be an object");
    GeneratorConfig g;
    const std::set<std::string> known = {"generator", "n", "noise", "seed", "factor"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) fail(field + "/" + key, "is not a recognized key");
        if (key == "generator") g.kind = require_string(value, field + "/generator");
        if (key == "n") g.n = require_int(value, field + "/n");
        if (key == "noise") g.noise = require_number(value, field + "/noise");
        if (key == "seed") g.seed = static_cast<std::uint64_t>(
            value.is_number_unsigned() ? value.get<std::uint64_t>()
                                       : static_cast<std::uint64_t>(require_int(value, field + "/seed")));
        if (key == "factor") g.factor = require_number(value, field + "/factor");
    }
    if (g.kind != "blobs" && g.kind != "moons" && g.kind != "circles")
        fail(field + "/generator", "must be one of blobs|moons|circles");
    if (g.n < 4) fail(field + "/n", "must be >= 4");
    return g;
}

}  // namespace

void RunConfig::validate() const {
    if (dataset_path.has_value() == generator.has_value())
        throw std::runtime_error("config: exactly one of 'dataset' (path) or 'dataset' "
                                 "(generator object) must be given");
    if (!(gamma > 0.0)) throw std::runtime_error("config: field 'gamma' must be > 0");
    if (k && *k < 1) throw std::runtime_error("config: field 'k' must be >= 1");
    if (pca_dims && *pca_dims < 1)
        throw std::runtime_error("config: field 'pca_dims' must be >= 1");
    if (!catalog_lookup(ansatz_id))
        throw std::runtime_error("config: field 'ansatz' names unknown circuit '" + ansatz_id +
                                 "'");
    if (layers < 1) throw std::runtime_error("config: field 'layers' must be >= 1");
    if (tau && alpha)
        throw std::runtime_error("config: fields 'tau' and 'alpha' are mutually exclusive");
    if (gradient_mode != "parameter_shift" && gradient_mode != "finite_difference")
        throw std::runtime_error(
            "config: field 'gradient_mode' must be parameter_shift|finite_difference");
    if (max_itr < 1) throw std::runtime_error("config: field 'max_itr' must be >= 1");
    if (!(convergence_tol > 0.0))
        throw std::runtime_error("config: field 'convergence_tol' must be > 0");
    if (restarts < 1) throw std::runtime_error("config: field 'restarts' must be >= 1");
    if (!seed) throw std::runtime_error("config: field 'seed' is required (no wall-clock "
                                        "seeding)");
    if (subsample_n && *subsample_n < 2)
        throw std::runtime_error("config: field 'subsample/n' must be >= 2");
}

ObjectiveConfig RunConfig::objective_config() const {
    ObjectiveConfig obj;
    obj.tau = tau;
    obj.alpha = alpha;
    if (!tau && !alpha) obj.alpha = 1.0;  // Algorithm default: tau from the alpha rule
    obj.max_itr = max_itr;
    obj.convergence_tol = convergence_tol;
    obj.gradient_mode = gradient_mode == "finite_difference" ? GradientMode::FiniteDifference
                                                             : GradientMode::ParameterShift;
    obj.restarts = restarts;
    obj.seed = seed.value_or(0);
    return obj;
}

ClusterOptions RunConfig::cluster_options() const {
    ClusterOptions opts;
    opts.graph.gamma = gamma;
    opts.graph.k = k;
    opts.graph.pca_dims = pca_dims;
    opts.ansatz_id = ansatz_id;
    opts.layers = layers;
    opts.objective = objective_config();
    if (!lambdas.empty()) opts.lambdas = lambdas;
    opts.diagnostics = diagnostics;
    return opts;
}

RunConfig run_config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config: top level must be an object");

    RunConfig c;
    const std::set<std::string> known = {
        "dataset",     "subsample", "pca_dims", "gamma",           "k",
        "ansatz",      "layers",    "tau",      "alpha",           "max_itr",
        "convergence_tol", "gradient_mode", "restarts", "lambdas", "seed",
        "diagnostics", "output"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key))
            throw std::runtime_error("config: field '" + key + "' is not a recognized key");
        if (key == "dataset") {
            if (value.is_string())
                c.dataset_path = value.get<std::string>();
            else
                c.generator = parse_generator(value, "dataset");
        } else if (key == "subsample") {
            if (!value.is_object()) fail("subsample", "must be an object {n, seed}");
            for (const auto& [skey, sval] : value.items()) {
                if (skey == "n")
                    c.subsample_n = require_int(sval, "subsample/n");
                else if (skey == "seed")
                    c.subsample_seed = static_cast<std::uint64_t>(require_int(sval, "subsample/seed"));
                else
                    fail("subsample/" + skey, "is not a recognized key");
            }
        } else if (key == "pca_dims") {
            c.pca_dims = require_int(value, "pca_dims");
        } else if (key == "gamma") {
            c.gamma = require_number(value, "gamma");
        } else if (key == "k") {
            c.k = require_int(value, "k");
        } else if (key == "ansatz") {
            c.ansatz_id = require_string(value, "ansatz");
        } else if (key == "layers") {
            c.layers = require_int(value, "layers");
        } else if (key == "tau") {
            c.tau = require_number(value, "tau");
        } else if (key == "alpha") {
            c.alpha = require_number(value, "alpha");
        } else if (key == "max_itr") {
            c.max_itr = require_int(value, "max_itr");
        } else if (key == "convergence_tol") {
            c.convergence_tol = require_number(value, "convergence_tol");
        } else if (key == "gradient_mode") {
            c.gradient_mode = require_string(value, "gradient_mode");
        } else if (key == "restarts") {
            c.restarts = require_int(value, "restarts");
        } else if (key == "lambdas") {
            if (!value.is_array() || value.empty()) fail("lambdas", "must be a non-empty array");
            c.lambdas.clear();
            for (const auto& v : value) c.lambdas.push_back(require_number(v, "lambdas[]"));
        } else if (key == "seed") {
            if (!value.is_number_integer()) fail("seed", "must be an integer");
            c.seed = value.get<std::uint64_t>();
        } else if (key == "diagnostics") {
            if (!value.is_boolean()) fail("diagnostics", "must be a boolean");
            c.diagnostics = value.get<bool>();
        } else if (key == "output") {
            c.output = require_string(value, "output");
        }
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return run_config_from_json_text(buf.str());
}

std::string run_config_to_json_text(const RunConfig& c) {
    json j;
    if (c.dataset_path) {
        j["dataset"] = *c.dataset_path;
    } else if (c.generator) {
        j["dataset"] = {{"generator", c.generator->kind},
                        {"n", c.generator->n},
                        {"noise", c.generator->noise},
                        {"seed", c.generator->seed}};
        if (c.generator->kind == "circles") j["dataset"]["factor"] = c.generator->factor;
    }
    if (c.subsample_n) j["subsample"] = {{"n", *c.subsample_n}, {"seed", c.subsample_seed}};
    if (c.pca_dims) j["pca_dims"] = *c.pca_dims;
    j["gamma"] = c.gamma;
    if (c.k) j["k"] = *c.k;
    j["ansatz"] = c.ansatz_id;
    j["layers"] = c.layers;
    if (c.tau) j["tau"] = *c.tau;
    if (c.alpha) j["alpha"] = *c.alpha;
    j["max_itr"] = c.max_itr;
    j["convergence_tol"] = c.convergence_tol;
    j["gradient_mode"] = c.gradient_mode;
    j["restarts"] = c.restarts;
    if (!c.lambdas.empty()) j["lambdas"] = c.lambdas;
    if (c.seed) j["seed"] = *c.seed;
    j["diagnostics"] = c.diagnostics;
    if (!c.output.empty()) j["output"] = c.output;
    return j.dump(2) + "\n";
}

Dataset resolve_dataset(const RunConfig& config) {
    Dataset data;
    if (config.dataset_path) {
        data = load_dataset_csv(*config.dataset_path);
    } else if (config.generator) {
        const GeneratorConfig& g = *config.generator;
        if (g.kind == "blobs")
            data = make_blobs(g.n, g.noise, g.seed);
        else if (g.kind == "moons")
            data = make_moons(g.n, g.noise, g.seed);
        else
            data = make_circles(g.n, g.noise, g.seed, g.factor);
    } else {
        throw std::runtime_error("config: no dataset source given");
    }
    if (config.subsample_n) data = subsample(data, *config.subsample_n, config.subsample_seed);
    return data;
}

}  // namespace vqasc
