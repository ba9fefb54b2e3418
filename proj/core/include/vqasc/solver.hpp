#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vqasc/ansatz.hpp"
#include "vqasc/graph.hpp"
#include "vqasc/simcore.hpp"

namespace vqasc {

enum class GradientMode { ParameterShift, FiniteDifference };

struct ObjectiveConfig {
    // Exactly one of tau / alpha is set; alpha feeds the
    // tau = alpha * <sigma>_1(theta_0) initialization rule.
    std::optional<double> tau;
    std::optional<double> alpha;
    int max_itr = 2000;
    double convergence_tol = 1e-8;
    GradientMode gradient_mode = GradientMode::ParameterShift;
    int restarts = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ObjectiveValue {
    double j = 0.0;       // sigma1 + tau * sigma2
    double sigma1 = 0.0;  // <psi|L|psi>
    double sigma2 = 0.0;  // uniform-state overlap
};

struct OptimizationTrace {
    std::vector<ObjectiveValue> iterations;  // accepted steps, initial point first
    std::vector<double> theta_star;
    ObjectiveValue final_value;
    bool converged = false;
    double tau = 0.0;        // penalty weight actually used
    int best_restart = 0;
    std::vector<std::string> warnings;
};

struct ClusterResult {
    std::vector<int> signs;   // {-1, +1}
    double chosen_lambda = 0.0;
    double cut_value = 0.0;   // signs^T L signs, minimal over the angle set
    std::vector<int> labels;  // (signs + 1) / 2
    std::optional<std::vector<cplx>> statevector_dump;
    OptimizationTrace trace;
    double settling_fraction = 0.0;  // share of components with |psi_j| < 1/(4 sqrt(N))
    std::vector<std::string> warnings;
};

// Measurement angles that resolve a two-cluster phase split.
inline const std::vector<double> kDefaultLambdas = {
    0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 4.0};

// tau = alpha * <0|U(theta0)^dag L U(theta0)|0>.
double init_tau(const Eigen::MatrixXd& L, const CircuitProgram& program,
                std::span<const double> theta0, double alpha);

ObjectiveValue objective_from_state(const Statevector& psi, const Eigen::MatrixXd& L, double tau);

ObjectiveValue objective(std::span<const double> theta, const Eigen::MatrixXd& L, double tau,
                         const CircuitProgram& program);

// dJ/dtheta. ParameterShift needs every parameterized gate to be a
// single-qubit rotation and uses +-pi/2 shifts; FiniteDifference uses
// central differences with step 1e-6.
std::vector<double> gradient(std::span<const double> theta, const Eigen::MatrixXd& L, double tau,
                             const CircuitProgram& program, GradientMode mode);

// Quasi-Newton minimization of J over `restarts` seeded initializations;
// returns the best trace (min final J, ties to the lowest restart index).
OptimizationTrace optimize(const Laplacian& laplacian, const CircuitProgram& program,
                           const ObjectiveConfig& config);

// Multi-angle sign readout: per lambda, f_j = sign(Re(e^{i lambda} psi_j))
// with t = 0 mapping to +1; keeps the angle of minimal cut value.
ClusterResult readout_signs_from_state(const Statevector& psi, std::span<const double> lambdas,
                                       const Eigen::MatrixXd& L);

ClusterResult readout_signs(const CircuitProgram& program, std::span<const double> theta_star,
                            std::span<const double> lambdas, const Eigen::MatrixXd& L);

struct GraphConfig {
    double gamma = 1.0;
    std::optional<int> k;        // k-NN sparsification, dense graph if unset
    std::optional<int> pca_dims; // applied before rescaling when set
};

struct ClusterOptions {
    GraphConfig graph;
    std::string ansatz_id = "fig4";
    int layers = 1;
    ObjectiveConfig objective;
    std::vector<double> lambdas = kDefaultLambdas;
    bool diagnostics = false;  // attach the statevector dump
};

// Full pipeline: rescale -> affinity -> k-NN -> Laplacian -> optimize ->
// readout. Requires N = 2^n; rejects disconnected graphs with a hint.
ClusterResult cluster(const Dataset& dataset, const ClusterOptions& options);

double settling_fraction(const Statevector& psi);

}  // namespace vqasc
