#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqasc/solver.hpp"

namespace vqasc {

struct GeneratorConfig {
    std::string kind;  // blobs | moons | circles
    int n = 0;
    double noise = 0.0;
    std::uint64_t seed = 0;
    double factor = 0.5;  // circles only
};

// One clustering run, fully reproducible from (config, seed).
struct RunConfig {
    std::optional<std::string> dataset_path;
    std::optional<GeneratorConfig> generator;
    std::optional<int> subsample_n;
    std::uint64_t subsample_seed = 0;

    double gamma = 1.0;
    std::optional<int> k;
    std::optional<int> pca_dims;

    std::string ansatz_id = "fig4";
    int layers = 1;

    std::optional<double> tau;
    std::optional<double> alpha;
    int max_itr = 2000;
    double convergence_tol = 1e-8;
    std::string gradient_mode = "parameter_shift";
    int restarts = 1;
    std::optional<std::uint64_t> seed;

    std::vector<double> lambdas;  // empty = default angle set
    bool diagnostics = false;
    std::string output;

    // Throws with the offending field name on schema violations.
    void validate() const;
    ObjectiveConfig objective_config() const;
    ClusterOptions cluster_options() const;
};

RunConfig run_config_from_json_text(const std::string& text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json_text(const RunConfig& config);

// Resolves the configured dataset source (file or generator + subsample).
Dataset resolve_dataset(const RunConfig& config);

}  // namespace vqasc
