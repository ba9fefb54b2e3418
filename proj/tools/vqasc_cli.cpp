// Command-line front end: dataset generation, clustering runs, expressibility
// sweeps, the classical oracle, and the circuit catalog.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vqasc/datagen.hpp"
#include "vqasc/dataset_io.hpp"
#include "vqasc/expressibility.hpp"
#include "vqasc/metrics.hpp"
#include "vqasc/run_config.hpp"
#include "vqasc/solver.hpp"

namespace {

using nlohmann::json;
using namespace vqasc;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

json metrics_json(const std::vector<int>& pred, const std::vector<int>& truth) {
    return json{{"acc", accuracy(pred, truth)},
                {"ari", adjusted_rand_index(pred, truth)},
                {"nmi", normalized_mutual_info(pred, truth)}};
}

int run_generate(const std::string& kind, int n, double noise, std::uint64_t seed,
                 double factor, const std::string& out_path) {
    Dataset data;
    if (kind == "blobs")
        data = make_blobs(n, noise, seed);
    else if (kind == "moons")
        data = make_moons(n, noise, seed);
    else
        data = make_circles(n, noise, seed, factor);
    save_dataset_csv(out_path, data);
    std::cout << "wrote " << data.size() << " points (" << kind << ") to " << out_path << "\n";
    return 0;
}

int run_cluster(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();

    const Dataset data = resolve_dataset(config);
    const ClusterResult result = cluster(data, config.cluster_options());

    json doc;
    doc["config"] = json::parse(run_config_to_json_text(config));
    doc["n"] = data.size();
    doc["tau"] = result.trace.tau;
    doc["labels"] = result.labels;
    doc["signs"] = result.signs;
    doc["chosen_lambda"] = result.chosen_lambda;
    doc["cut_value"] = result.cut_value;
    doc["converged"] = result.trace.converged;
    doc["best_restart"] = result.trace.best_restart;
    doc["j_star"] = result.trace.final_value.j;
    doc["sigma1_star"] = result.trace.final_value.sigma1;
    doc["sigma2_star"] = result.trace.final_value.sigma2;
    json iterations = json::array();
    for (const ObjectiveValue& v : result.trace.iterations)
        iterations.push_back({v.j, v.sigma1, v.sigma2});
    doc["iterations"] = std::move(iterations);
    doc["settling_fraction"] = result.settling_fraction;
    doc["warnings"] = result.warnings;

    if (data.labels) doc["metrics"] = metrics_json(result.labels, *data.labels);

    {
        // Side-by-side classical oracle on the same Laplacian.
        Eigen::MatrixXd features = data.points;
        if (config.pca_dims) features = pca_reduce(features, *config.pca_dims);
        features = rescale_features(features);
        AffinityMatrix affinity = gaussian_affinity(features, config.gamma);
        if (config.k) affinity = knn_sparsify(affinity, *config.k);
        const Laplacian lap = build_laplacian(affinity);
        const OracleResult oracle = classical_fiedler(lap.L);
        doc["oracle"] = {{"fiedler_value", oracle.fiedler_value},
                         {"ari_vs_oracle", adjusted_rand_index(result.labels, oracle.labels)}};
        if (data.labels)
            doc["oracle"]["metrics"] = metrics_json(oracle.labels, *data.labels);
    }

    if (result.statevector_dump) {
        json sv = json::array();
        for (std::size_t j = 0; j < result.statevector_dump->size(); ++j) {
            const cplx a = (*result.statevector_dump)[j];
            sv.push_back({{"index", j},
                          {"re", a.real()},
                          {"im", a.imag()},
                          {"abs", std::abs(a)}});
        }
        doc["statevector"] = std::move(sv);
    }

    doc["wall_time_ms"] = elapsed_ms(start);

    const std::string out = config.output.empty() ? "result.json" : config.output;
    atomic_write_text(out, doc.dump(2) + "\n");
    std::cout << "cluster: n=" << data.size() << " J*=" << result.trace.final_value.j
              << " cut=" << result.cut_value << " lambda=" << result.chosen_lambda;
    if (data.labels)
        std::cout << " acc=" << accuracy(result.labels, *data.labels);
    std::cout << " -> " << out << "\n";
    return 0;
}

int run_express(const std::vector<std::string>& ids, int n_qubits, int layers,
                const std::string& mode_arg, std::int64_t n_samples, int n_bins,
                std::uint64_t seed, const std::string& out_path) {
    std::vector<FidelityMode> modes;
    if (mode_arg == "raw" || mode_arg == "both") modes.push_back(FidelityMode::Raw);
    if (mode_arg == "phase" || mode_arg == "both") modes.push_back(FidelityMode::Phase);
    if (modes.empty()) throw std::runtime_error("express: mode must be raw|phase|both");

    std::string csv = "circuit_id,mode,kl_value,n_samples,seed\n";
    const std::string stem =
        out_path.size() > 4 && out_path.ends_with(".csv") ? out_path.substr(0, out_path.size() - 4)
                                                          : out_path;
    for (const std::string& id : ids) {
        const AnsatzSpec spec = make_spec(id, n_qubits, layers);
        for (const FidelityMode mode : modes) {
            const ExpressibilityReport report =
                expressibility(spec, mode, n_samples, n_bins, seed);
            const std::string mode_name = mode == FidelityMode::Raw ? "raw" : "phase";
            csv += id + "," + mode_name + "," +
                   (report.kl.overflow ? "overflow" : format_double(report.kl.value)) + "," +
                   std::to_string(n_samples) + "," + std::to_string(seed) + "\n";

            const std::vector<double> haar = haar_bin_probabilities(n_qubits, n_bins);
            std::string hist = "bin_lower,bin_upper,count,empirical_prob,haar_prob\n";
            for (int b = 0; b < n_bins; ++b) {
                const auto bi = static_cast<std::size_t>(b);
                hist += format_double(static_cast<double>(b) / n_bins) + "," +
                        format_double(b + 1 == n_bins ? 1.0
                                                      : static_cast<double>(b + 1) / n_bins) +
                        "," + std::to_string(report.histogram.counts[bi]) + "," +
                        format_double(report.histogram.empirical_probs[bi]) + "," +
                        format_double(haar[bi]) + "\n";
            }
            atomic_write_text(stem + "_" + id + "_" + mode_name + "_hist.csv", hist);

            std::cout << "express: circuit #" << id << " " << mode_name << " kl="
                      << (report.kl.overflow ? std::string("overflow")
                                             : format_double(report.kl.value))
                      << "\n";
        }
    }
    atomic_write_text(out_path, csv);
    return 0;
}

int run_oracle(const std::string& dataset_path, double gamma, std::optional<int> k,
               std::optional<int> pca_dims, std::optional<int> subsample_n,
               std::uint64_t subsample_seed, const std::string& out_path) {
    Dataset data = load_dataset_csv(dataset_path);
    if (subsample_n) data = subsample(data, *subsample_n, subsample_seed);

    Eigen::MatrixXd features = data.points;
    if (pca_dims) features = pca_reduce(features, *pca_dims);
    features = rescale_features(features);

    AffinityMatrix affinity = gaussian_affinity(features, gamma);
    if (k) affinity = knn_sparsify(affinity, *k);
    const Laplacian lap = build_laplacian(affinity);
    const OracleResult oracle = classical_fiedler(lap.L);

    json doc;
    doc["dataset"] = dataset_path;
    doc["n"] = data.size();
    doc["gamma"] = gamma;
    if (k) doc["k"] = *k;
    doc["connected"] = lap.connected;
    doc["eigenvalues"] = std::vector<double>(
        oracle.eigenvalues.data(), oracle.eigenvalues.data() + oracle.eigenvalues.size());
    doc["fiedler_value"] = oracle.fiedler_value;
    doc["fiedler_vector"] = std::vector<double>(
        oracle.fiedler_vector.data(), oracle.fiedler_vector.data() + oracle.fiedler_vector.size());
    doc["labels"] = oracle.labels;
    if (!lap.connected || oracle.fiedler_value <= 1e-8)
        doc["warnings"] = {"graph is disconnected (lambda_2 <= 1e-8); partition not unique"};
    if (data.labels) doc["metrics"] = metrics_json(oracle.labels, *data.labels);

    atomic_write_text(out_path, doc.dump(2) + "\n");
    std::cout << "oracle: n=" << data.size() << " lambda_2=" << oracle.fiedler_value << " -> "
              << out_path << "\n";
    return 0;
}

int run_catalog(int n_qubits, int layers, bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const CatalogEntry& e : catalog()) {
            json row = {{"id", e.id},
                        {"family", e.family},
                        {"param_formula", e.param_formula},
                        {"min_qubits", e.min_qubits}};
            if (n_qubits >= e.min_qubits)
                row["params"] = param_count(make_spec(e.id, n_qubits, layers));
            arr.push_back(std::move(row));
        }
        std::cout << arr.dump(2) << "\n";
        return 0;
    }
    std::cout << "id     params   formula      family\n";
    for (const CatalogEntry& e : catalog()) {
        std::string params = "-";
        if (n_qubits >= e.min_qubits)
            params = std::to_string(param_count(make_spec(e.id, n_qubits, layers)));
        std::printf("%-6s %-8s %-12s %s\n", e.id.c_str(), params.c_str(),
                    e.param_formula.c_str(), e.family.c_str());
    }
    std::cout << "(params column evaluated at n=" << n_qubits << ", L=" << layers << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational quantum approximate spectral clustering toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic dataset CSV");
    std::string gen_kind, gen_out = "dataset.csv";
    int gen_n = 128;
    double gen_noise = 0.1, gen_factor = 0.5;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", gen_kind, "blobs|moons|circles")->required();
    gen->add_option("--n", gen_n, "number of points (>= 4)");
    gen->add_option("--noise", gen_noise, "noise level");
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_option("--factor", gen_factor, "inner/outer radius ratio (circles)");
    gen->add_option("--out", gen_out, "output CSV path");

    // cluster
    auto* clu = app.add_subcommand("cluster", "Run the clustering pipeline");
    std::string clu_config, clu_dataset, clu_generator, clu_ansatz = "fig4",
                clu_gradient = "parameter_shift", clu_out, clu_lambdas;
    int clu_layers = 0, clu_gen_n = 128, clu_max_itr = 0, clu_restarts = 0;
    std::optional<int> clu_k, clu_pca, clu_subsample;
    double clu_gamma = 0.0, clu_gen_noise = 0.1, clu_tol = 0.0;
    std::optional<double> clu_tau, clu_alpha;
    std::uint64_t clu_gen_seed = 0, clu_subsample_seed = 0;
    std::optional<std::uint64_t> clu_seed;
    bool clu_dump = false;
    clu->add_option("--config", clu_config, "JSON run-config file");
    clu->add_option("--dataset", clu_dataset, "dataset CSV path");
    clu->add_option("--generator", clu_generator, "blobs|moons|circles (instead of --dataset)");
    clu->add_option("--gen-n", clu_gen_n, "generator point count");
    clu->add_option("--gen-noise", clu_gen_noise, "generator noise");
    clu->add_option("--gen-seed", clu_gen_seed, "generator seed");
    clu->add_option("--subsample", clu_subsample, "subsample to this many points");
    clu->add_option("--subsample-seed", clu_subsample_seed, "subsample seed");
    clu->add_option("--gamma", clu_gamma, "Gaussian similarity coefficient");
    clu->add_option("--k", clu_k, "k-NN sparsification parameter");
    clu->add_option("--pca-dims", clu_pca, "PCA target dimensions");
    clu->add_option("--ansatz", clu_ansatz, "catalog circuit id");
    clu->add_option("--layers", clu_layers, "ansatz layers");
    clu->add_option("--tau", clu_tau, "fixed penalty weight");
    clu->add_option("--alpha", clu_alpha, "penalty initialization factor");
    clu->add_option("--max-itr", clu_max_itr, "optimizer iteration cap");
    clu->add_option("--tol", clu_tol, "convergence tolerance on |dJ|");
    clu->add_option("--gradient-mode", clu_gradient, "parameter_shift|finite_difference");
    clu->add_option("--restarts", clu_restarts, "independent seeded restarts");
    clu->add_option("--seed", clu_seed, "run seed (required; no wall-clock seeding)");
    clu->add_option("--lambdas", clu_lambdas, "comma-separated readout angles");
    clu->add_flag("--dump-statevector", clu_dump, "attach the statevector diagnostic table");
    clu->add_option("--out", clu_out, "result JSON path");

    // express
    auto* exp = app.add_subcommand("express", "Expressibility sweep over catalog circuits");
    std::vector<std::string> exp_ids;
    std::string exp_mode = "both", exp_out = "express.csv";
    int exp_qubits = 4, exp_layers = 1, exp_bins = kDefaultHistogramBins;
    std::int64_t exp_samples = kDefaultFidelitySamples;
    std::optional<std::uint64_t> exp_seed;
    exp->add_option("--ids", exp_ids, "catalog circuit ids")->required()->delimiter(',');
    exp->add_option("--n-qubits", exp_qubits, "qubit count");
    exp->add_option("--layers", exp_layers, "ansatz layers");
    exp->add_option("--mode", exp_mode, "raw|phase|both");
    exp->add_option("--samples", exp_samples, "fidelity sample pairs");
    exp->add_option("--bins", exp_bins, "histogram bins");
    exp->add_option("--seed", exp_seed, "sampling seed (required)");
    exp->add_option("--out", exp_out, "report CSV path");

    // oracle
    auto* ora = app.add_subcommand("oracle", "Classical dense-eigensolver baseline");
    std::string ora_dataset, ora_out = "oracle.json";
    double ora_gamma = 1.0;
    std::optional<int> ora_k, ora_pca, ora_subsample;
    std::uint64_t ora_subsample_seed = 0;
    ora->add_option("--dataset", ora_dataset, "dataset CSV path")->required();
    ora->add_option("--gamma", ora_gamma, "Gaussian similarity coefficient");
    ora->add_option("--k", ora_k, "k-NN sparsification parameter");
    ora->add_option("--pca-dims", ora_pca, "PCA target dimensions");
    ora->add_option("--subsample", ora_subsample, "subsample to this many points");
    ora->add_option("--subsample-seed", ora_subsample_seed, "subsample seed");
    ora->add_option("--out", ora_out, "result JSON path");

    // catalog
    auto* cat = app.add_subcommand("catalog", "List registered ansatz circuits");
    int cat_qubits = 4, cat_layers = 1;
    bool cat_json = false;
    cat->add_option("--n-qubits", cat_qubits, "evaluate parameter counts at this qubit count");
    cat->add_option("--layers", cat_layers, "evaluate parameter counts at this layer count");
    cat->add_flag("--json", cat_json, "emit JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_generate(gen_kind, gen_n, gen_noise, gen_seed, gen_factor, gen_out);

        if (clu->parsed()) {
            RunConfig config;
            if (!clu_config.empty()) config = load_run_config(clu_config);
            // Flags override config-file fields.
            if (!clu_dataset.empty()) {
                config.dataset_path = clu_dataset;
                config.generator.reset();
            }
            if (!clu_generator.empty()) {
                config.generator =
                    GeneratorConfig{clu_generator, clu_gen_n, clu_gen_noise, clu_gen_seed, 0.5};
                config.dataset_path.reset();
            }
            if (clu_subsample) config.subsample_n = clu_subsample;
            if (clu->count("--subsample-seed")) config.subsample_seed = clu_subsample_seed;
            if (clu_gamma > 0.0) config.gamma = clu_gamma;
            if (clu_k) config.k = clu_k;
            if (clu_pca) config.pca_dims = clu_pca;
            if (clu->count("--ansatz")) config.ansatz_id = clu_ansatz;
            if (clu_layers > 0) config.layers = clu_layers;
            if (clu_tau) {
                config.tau = clu_tau;
                config.alpha.reset();
            }
            if (clu_alpha) {
                config.alpha = clu_alpha;
                config.tau.reset();
            }
            if (clu_max_itr > 0) config.max_itr = clu_max_itr;
            if (clu_tol > 0.0) config.convergence_tol = clu_tol;
            if (clu->count("--gradient-mode")) config.gradient_mode = clu_gradient;
            if (clu_restarts > 0) config.restarts = clu_restarts;
            if (clu_seed) config.seed = clu_seed;
            if (!clu_lambdas.empty()) {
                config.lambdas.clear();
                std::stringstream ss(clu_lambdas);
                std::string tok;
                while (std::getline(ss, tok, ',')) config.lambdas.push_back(std::stod(tok));
            }
            if (clu_dump) config.diagnostics = true;
            if (!clu_out.empty()) config.output = clu_out;
            return run_cluster(config);
        }

        if (exp->parsed()) {
            if (!exp_seed) throw std::runtime_error("express: --seed is required");
            return run_express(exp_ids, exp_qubits, exp_layers, exp_mode, exp_samples, exp_bins,
                               *exp_seed, exp_out);
        }

        if (ora->parsed())
            return run_oracle(ora_dataset, ora_gamma, ora_k, ora_pca, ora_subsample,
                              ora_subsample_seed, ora_out);

        if (cat->parsed()) return run_catalog(cat_qubits, cat_layers, cat_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
