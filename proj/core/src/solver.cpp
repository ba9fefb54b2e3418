#include "vqasc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>

#include "vqasc/metrics.hpp"
#include "vqasc/rng.hpp"

namespace vqasc {

namespace {

constexpr double kFiniteDiffStep = 1e-6;

std::vector<double> random_theta(int n_params, std::uint64_t seed, std::uint64_t restart) {
    std::mt19937_64 eng = seeded_engine(seed, restart);
    std::vector<double> theta(static_cast<std::size_t>(n_params));
    for (double& t : theta) t = uniform_angle(eng);
    return theta;
}

class PenalizedObjective final : public ceres::FirstOrderFunction {
  public:
    PenalizedObjective(const Eigen::MatrixXd& laplacian, const CircuitProgram& program,
                       double tau, GradientMode mode)
        : laplacian_(laplacian), program_(program), tau_(tau), mode_(mode) {}

    bool Evaluate(const double* parameters, double* cost, double* grad) const override {
        const std::span<const double> theta(parameters,
                                            static_cast<std::size_t>(program_.n_params));
        *cost = objective(theta, laplacian_, tau_, program_).j;
        if (grad != nullptr) {
            const std::vector<double> g = gradient(theta, laplacian_, tau_, program_, mode_);
            std::copy(g.begin(), g.end(), grad);
        }
        return true;
    }

    int NumParameters() const override { return program_.n_params; }

  private:
    const Eigen::MatrixXd& laplacian_;
    const CircuitProgram& program_;
    double tau_;
    GradientMode mode_;
};

// Records (J, sigma1, sigma2) at accepted iterations and stops once the
// decrease between accepted steps falls below the configured tolerance.
class TraceCallback final : public ceres::IterationCallback {
  public:
    TraceCallback(const Eigen::MatrixXd& laplacian, const CircuitProgram& program, double tau,
                  double convergence_tol, const std::vector<double>& theta)
        : laplacian_(laplacian),
          program_(program),
          tau_(tau),
          tol_(convergence_tol),
          theta_(theta) {}

    ceres::CallbackReturnType operator()(const ceres::IterationSummary& summary) override {
        iterations_.push_back(objective(theta_, laplacian_, tau_, program_));
        const std::size_t k = iterations_.size();
        if (summary.step_is_successful && k >= 2 &&
            std::abs(iterations_[k - 2].j - iterations_[k - 1].j) < tol_) {
            tolerance_hit_ = true;
            return ceres::SOLVER_TERMINATE_SUCCESSFULLY;
        }
        return ceres::SOLVER_CONTINUE;
    }

    const std::vector<ObjectiveValue>& iterations() const { return iterations_; }
    bool tolerance_hit() const { return tolerance_hit_; }

  private:
    const Eigen::MatrixXd& laplacian_;
    const CircuitProgram& program_;
    double tau_;
    double tol_;
    const std::vector<double>& theta_;
    std::vector<ObjectiveValue> iterations_;
    bool tolerance_hit_ = false;
};

struct RestartOutcome {
    std::vector<ObjectiveValue> iterations;
    std::vector<double> theta;
    ObjectiveValue final_value;
    bool converged = false;
};

RestartOutcome run_restart(const Eigen::MatrixXd& laplacian, const CircuitProgram& program,
                           const ObjectiveConfig& config, double tau, std::uint64_t restart) {
    RestartOutcome out;
    out.theta = random_theta(program.n_params, config.seed, restart);

    if (program.n_params == 0) {
        out.final_value = objective(out.theta, laplacian, tau, program);
        out.iterations = {out.final_value};
        out.converged = true;
        return out;
    }

    ceres::GradientProblem problem(
        new PenalizedObjective(laplacian, program, tau, config.gradient_mode));
    TraceCallback trace(laplacian, program, tau, config.convergence_tol, out.theta);

    ceres::GradientProblemSolver::Options options;
    options.line_search_direction_type = ceres::LBFGS;
    options.max_num_iterations = config.max_itr;
    options.logging_type = ceres::SILENT;
    options.function_tolerance = 1e-16;
    options.gradient_tolerance = 1e-12;
    options.parameter_tolerance = 1e-14;
    options.update_state_every_iteration = true;
    options.callbacks.push_back(&trace);

    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(options, problem, out.theta.data(), &summary);

    out.iterations = trace.iterations();
    out.final_value = objective(out.theta, laplacian, tau, program);
    if (out.iterations.empty() || out.iterations.back().j > out.final_value.j)
        out.iterations.push_back(out.final_value);
    out.converged =
        trace.tolerance_hit() || summary.termination_type == ceres::CONVERGENCE;
    return out;
}

}  // namespace

void ObjectiveConfig::validate() const {
    if (tau.has_value() == alpha.has_value())
        throw std::invalid_argument("ObjectiveConfig: exactly one of tau/alpha must be set");
    if (alpha && !(*alpha > 0.0))
        throw std::invalid_argument("ObjectiveConfig: alpha must be > 0");
    if (tau && !(*tau >= 0.0)) throw std::invalid_argument("ObjectiveConfig: tau must be >= 0");
    if (max_itr < 1) throw std::invalid_argument("ObjectiveConfig: max_itr must be >= 1");
    if (!(convergence_tol > 0.0))
        throw std::invalid_argument("ObjectiveConfig: convergence_tol must be > 0");
    if (restarts < 1) throw std::invalid_argument("ObjectiveConfig: restarts must be >= 1");
}

double init_tau(const Eigen::MatrixXd& L, const CircuitProgram& program,
                std::span<const double> theta0, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("init_tau: alpha must be > 0");
    return alpha * expectation(apply_circuit(program, theta0), L);
}

ObjectiveValue objective_from_state(const Statevector& psi, const Eigen::MatrixXd& L,
                                    double tau) {
    ObjectiveValue v;
    v.sigma1 = expectation(psi, L);
    v.sigma2 = uniform_overlap(psi);
    v.j = v.sigma1 + tau * v.sigma2;
    return v;
}

ObjectiveValue objective(std::span<const double> theta, const Eigen::MatrixXd& L, double tau,
                         const CircuitProgram& program) {
    if (tau < 0.0) throw std::invalid_argument("objective: tau must be >= 0");
    return objective_from_state(apply_circuit(program, theta), L, tau);
}

std::vector<double> gradient(std::span<const double> theta, const Eigen::MatrixXd& L, double tau,
                             const CircuitProgram& program, GradientMode mode) {
    if (std::cmp_not_equal(theta.size(), program.n_params))
        throw std::invalid_argument("gradient: parameter-length mismatch");

    if (mode == GradientMode::ParameterShift) {
        for (const GateOp& op : program.ops)
            if (op.param_slot && !is_rotation(op.kind))
                throw std::invalid_argument(
                    "gradient: parameter-shift requires single-qubit rotation gates, got " +
                    gate_name(op.kind));
    }

    const double shift =
        mode == GradientMode::ParameterShift ? std::numbers::pi / 2.0 : kFiniteDiffStep;
    const double scale = mode == GradientMode::ParameterShift ? 0.5 : 0.5 / kFiniteDiffStep;

    std::vector<double> work(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        work[i] = theta[i] + shift;
        const double plus = objective(work, L, tau, program).j;
        work[i] = theta[i] - shift;
        const double minus = objective(work, L, tau, program).j;
        work[i] = theta[i];
        grad[i] = scale * (plus - minus);
    }
    return grad;
}

OptimizationTrace optimize(const Laplacian& laplacian, const CircuitProgram& program,
                           const ObjectiveConfig& config) {
    config.validate();
    program.validate();
    if (laplacian.L.rows() != static_cast<Eigen::Index>(1ull << program.n_qubits))
        throw std::invalid_argument("optimize: Laplacian dimension != 2^n_qubits");

    OptimizationTrace result;
    if (!laplacian.connected)
        result.warnings.push_back("graph is disconnected; lambda_2 = 0 and the Fiedler "
                                  "partition is not unique");

    // The penalty weight is resolved once, from the first restart's draw, so
    // objective values are comparable across restarts.
    double tau;
    if (config.tau) {
        tau = *config.tau;
    } else {
        const std::vector<double> theta0 = random_theta(program.n_params, config.seed, 0);
        tau = init_tau(laplacian.L, program, theta0, *config.alpha);
    }
    if (tau <= 0.0)
        result.warnings.push_back("degenerate penalty weight tau <= 0; the uniform-state "
                                  "penalty is inactive");
    result.tau = tau;

    std::vector<std::future<RestartOutcome>> futures;
    futures.reserve(static_cast<std::size_t>(config.restarts));
    for (int r = 0; r < config.restarts; ++r)
        futures.push_back(std::async(std::launch::async, run_restart, std::cref(laplacian.L),
                                     std::cref(program), std::cref(config), tau,
                                     static_cast<std::uint64_t>(r)));

    std::vector<RestartOutcome> outcomes;
    outcomes.reserve(futures.size());
    for (auto& f : futures) outcomes.push_back(f.get());

    // Min-J selection, except that restarts which settled into the penalized
    // uniform direction (sigma2 still large, J pinned near tau) lose to any
    // restart that actually left it. Falls back to plain min-J if every
    // restart is degenerate.
    const auto degenerate = [&](const RestartOutcome& o) { return o.final_value.sigma2 > 0.5; };
    int best = -1;
    bool any_proper = false;
    for (const RestartOutcome& o : outcomes)
        if (!degenerate(o)) any_proper = true;
    for (int r = 0; r < config.restarts; ++r) {
        const RestartOutcome& o = outcomes[static_cast<std::size_t>(r)];
        if (any_proper && degenerate(o)) continue;
        if (best < 0 || o.final_value.j < outcomes[static_cast<std::size_t>(best)].final_value.j)
            best = r;
    }
    if (any_proper) {
        for (const RestartOutcome& o : outcomes)
            if (degenerate(o)) {
                result.warnings.push_back(
                    "a restart converged onto the uniform state (sigma2 > 0.5) and was "
                    "not selected");
                break;
            }
    }

    RestartOutcome& winner = outcomes[static_cast<std::size_t>(best)];
    result.iterations = std::move(winner.iterations);
    result.theta_star = std::move(winner.theta);
    result.final_value = winner.final_value;
    result.converged = winner.converged;
    result.best_restart = best;
    return result;
}

ClusterResult readout_signs_from_state(const Statevector& psi, std::span<const double> lambdas,
                                       const Eigen::MatrixXd& L) {
    if (lambdas.empty()) throw std::invalid_argument("readout_signs: empty angle set");
    if (static_cast<Eigen::Index>(psi.dim()) != L.rows())
        throw std::invalid_argument("readout_signs: state/Laplacian dimension mismatch");

    // A constant sign pattern (every t on one side, cut 0) carries no
    // partition; it can only appear when an angle zeroes the real parts
    // exactly. Prefer the best proper partition, fall back if none exists.
    ClusterResult out;
    bool have_best = false, best_is_split = false;
    for (const double lambda : lambdas) {
        const cplx rotation = std::exp(cplx{0.0, lambda});
        std::vector<int> signs(psi.dim());
        for (std::size_t j = 0; j < psi.dim(); ++j) {
            const double t = (rotation * psi.amplitudes[j]).real();
            signs[j] = t < 0.0 ? -1 : 1;
        }
        bool split = false;
        for (const int s : signs)
            if (s != signs[0]) split = true;
        const double w = cut_value(signs, L);
        const bool better = !have_best || (split && !best_is_split) ||
                            (split == best_is_split && w < out.cut_value);
        if (better) {
            have_best = true;
            best_is_split = split;
            out.cut_value = w;
            out.chosen_lambda = lambda;
            out.signs = std::move(signs);
        }
    }
    out.labels.resize(out.signs.size());
    for (std::size_t i = 0; i < out.signs.size(); ++i)
        out.labels[i] = (out.signs[i] + 1) / 2;
    return out;
}

ClusterResult readout_signs(const CircuitProgram& program, std::span<const double> theta_star,
                            std::span<const double> lambdas, const Eigen::MatrixXd& L) {
    return readout_signs_from_state(apply_circuit(program, theta_star), lambdas, L);
}

double settling_fraction(const Statevector& psi) {
    const double threshold = 1.0 / (4.0 * std::sqrt(static_cast<double>(psi.dim())));
    std::size_t below = 0;
    for (const cplx& a : psi.amplitudes)
        if (std::abs(a) < threshold) ++below;
    return static_cast<double>(below) / static_cast<double>(psi.dim());
}

ClusterResult cluster(const Dataset& dataset, const ClusterOptions& options) {
    const Eigen::Index n_points = dataset.size();
    if (n_points < 2) throw std::invalid_argument("cluster: need at least 2 points");
    if ((n_points & (n_points - 1)) != 0)
        throw std::invalid_argument("cluster: dataset size " + std::to_string(n_points) +
                                    " is not a power of two; subsample the data");
    int n_qubits = 0;
    while ((Eigen::Index{1} << n_qubits) < n_points) ++n_qubits;

    Eigen::MatrixXd features = dataset.points;
    if (options.graph.pca_dims) features = pca_reduce(features, *options.graph.pca_dims);
    features = rescale_features(features);

    AffinityMatrix affinity = gaussian_affinity(features, options.graph.gamma);
    if (options.graph.k) affinity = knn_sparsify(affinity, *options.graph.k);

    const Laplacian laplacian = build_laplacian(affinity);
    if (!laplacian.connected)
        throw std::runtime_error("cluster: affinity graph is disconnected; increase k or gamma");

    const CircuitProgram program =
        build_ansatz(make_spec(options.ansatz_id, n_qubits, options.layers));

    const OptimizationTrace trace = optimize(laplacian, program, options.objective);
    const Statevector psi = apply_circuit(program, trace.theta_star);

    ClusterResult out = readout_signs_from_state(psi, options.lambdas, laplacian.L);
    out.settling_fraction = settling_fraction(psi);
    out.warnings = trace.warnings;
    if (out.settling_fraction > 0.5)
        out.warnings.push_back("settling detected: most statevector components are near zero");
    if (options.diagnostics) out.statevector_dump = psi.amplitudes;
    out.trace = trace;
    return out;
}

}  // namespace vqasc
