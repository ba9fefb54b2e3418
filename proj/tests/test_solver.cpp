#include <cmath>
#include <numbers>

#include <doctest.h>

#include "test_helpers.hpp"
#include "vqasc/datagen.hpp"
#include "vqasc/metrics.hpp"
#include "vqasc/solver.hpp"

using namespace vqasc;
using vqasc::testing::random_angles;

namespace {

Eigen::MatrixXd k2_laplacian() {
    Eigen::MatrixXd lap(2, 2);
    lap << 1, -1, -1, 1;
    return lap;
}

Laplacian path4() {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 3; ++i) w(i, i + 1) = w(i + 1, i) = 1.0;
    return build_laplacian(AffinityMatrix{w, 1.0, std::nullopt});
}

CircuitProgram single_ry() {
    CircuitProgram p;
    p.n_qubits = 1;
    p.ops.push_back({GateKind::RY, {0}, 0, 0.0});
    p.n_params = 1;
    return p;
}

Statevector state_from(std::initializer_list<cplx> amps) {
    Statevector psi;
    psi.amplitudes = amps;
    psi.n_qubits = 0;
    while ((std::size_t{1} << psi.n_qubits) < psi.amplitudes.size()) ++psi.n_qubits;
    double norm2 = 0.0;
    for (const cplx& a : psi.amplitudes) norm2 += std::norm(a);
    for (cplx& a : psi.amplitudes) a /= std::sqrt(norm2);
    return psi;
}

}  // namespace

TEST_CASE("ObjectiveConfig validation") {
    ObjectiveConfig config;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // neither tau nor alpha
    config.tau = 0.5;
    config.alpha = 1.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // both
    config.alpha.reset();
    CHECK_NOTHROW(config.validate());
    config.max_itr = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config.max_itr = 10;
    config.restarts = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("init_tau follows the alpha rule") {
    // Empty circuit leaves |0>, so <sigma>_1 = L(0,0).
    CircuitProgram empty;
    empty.n_qubits = 1;
    Eigen::MatrixXd lap(2, 2);
    lap << 0.5, 0.0, 0.0, 2.0;
    CHECK(init_tau(lap, empty, {}, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(init_tau(lap, empty, {}, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(init_tau(Eigen::MatrixXd::Zero(2, 2), empty, {}, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(init_tau(lap, empty, {}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(init_tau(lap, empty, {}, -1.0), std::invalid_argument);
}

TEST_CASE("objective decomposition on known states") {
    const Laplacian p4 = path4();

    // Uniform state: in the Laplacian kernel, full overlap with itself.
    CircuitProgram hadamards;
    hadamards.n_qubits = 2;
    hadamards.ops.push_back({GateKind::H, {0}, std::nullopt, 0.0});
    hadamards.ops.push_back({GateKind::H, {1}, std::nullopt, 0.0});
    const double tau = 0.7;
    const ObjectiveValue uniform = objective({}, p4.L, tau, hadamards);
    CHECK(uniform.sigma1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(uniform.sigma2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(uniform.j == doctest::Approx(tau).epsilon(1e-12));

    // Fiedler vector: J = lambda_2, penalty term vanishes.
    const OracleResult oracle = classical_fiedler(p4.L);
    Statevector fiedler;
    fiedler.n_qubits = 2;
    fiedler.amplitudes.resize(4);
    for (int i = 0; i < 4; ++i)
        fiedler.amplitudes[static_cast<std::size_t>(i)] = cplx{oracle.fiedler_vector[i], 0.0};
    const ObjectiveValue at_fiedler = objective_from_state(fiedler, p4.L, tau);
    CHECK(at_fiedler.sigma2 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(at_fiedler.j == doctest::Approx(oracle.fiedler_value).epsilon(1e-10));
    CHECK(at_fiedler.j == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-10));

    // tau = 0 switches the penalty off.
    const ObjectiveValue unpenalized = objective({}, p4.L, 0.0, hadamards);
    CHECK(unpenalized.j == doctest::Approx(unpenalized.sigma1).epsilon(1e-15));

    CHECK_THROWS_AS(objective({}, p4.L, -0.1, hadamards), std::invalid_argument);
}

TEST_CASE("objective stays nonnegative for PSD Laplacians") {
    std::mt19937_64 eng = seeded_engine(67, 0);
    const Laplacian p4 = path4();
    const CircuitProgram program = build_ansatz(make_spec("C", 2, 2));
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> theta = random_angles(eng, program.n_params);
        const ObjectiveValue v = objective(theta, p4.L, 0.8, program);
        CHECK(v.j >= -1e-12);
        CHECK(v.j == doctest::Approx(v.sigma1 + 0.8 * v.sigma2).epsilon(1e-15));
    }
}

TEST_CASE("gradient of the closed-form single-RY objective") {
    // psi = (cos t/2, sin t/2), L = diag(0, 2): J(t) = 2 sin^2(t/2), J' = sin t.
    Eigen::MatrixXd lap(2, 2);
    lap << 0, 0, 0, 2;
    const CircuitProgram p = single_ry();
    const double theta[] = {std::numbers::pi / 2.0};

    const std::vector<double> ps =
        gradient(std::span(theta, 1), lap, 0.0, p, GradientMode::ParameterShift);
    CHECK(ps[0] == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> fd =
        gradient(std::span(theta, 1), lap, 0.0, p, GradientMode::FiniteDifference);
    CHECK(fd[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("all-zero point is stationary for a diagonal observable") {
    // With a diagonal L and tau = 0 the +-pi/2 shifted states of circuit #B
    // give identical expectations, so every component vanishes.
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(16, 16);
    for (int i = 0; i < 16; ++i) lap(i, i) = 1.0 + i;
    const CircuitProgram p = build_ansatz(make_spec("B", 4, 1));
    const std::vector<double> zeros(static_cast<std::size_t>(p.n_params), 0.0);
    for (const double g : gradient(zeros, lap, 0.0, p, GradientMode::ParameterShift))
        CHECK(std::abs(g) < 1e-8);
}

TEST_CASE("parameter-shift agrees with finite differences on random points") {
    std::mt19937_64 eng = seeded_engine(71, 0);
    const Laplacian p4 = path4();
    const char* ids[] = {"B", "C", "2", "23", "35"};
    for (const char* id : ids) {
        const CircuitProgram program = build_ansatz(make_spec(id, 2, 2));
        for (int trial = 0; trial < 5; ++trial) {
            const std::vector<double> theta = random_angles(eng, program.n_params);
            const std::vector<double> ps =
                gradient(theta, p4.L, 0.8, program, GradientMode::ParameterShift);
            const std::vector<double> fd =
                gradient(theta, p4.L, 0.8, program, GradientMode::FiniteDifference);
            double diff2 = 0.0, norm2 = 0.0;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                diff2 += (ps[i] - fd[i]) * (ps[i] - fd[i]);
                norm2 += ps[i] * ps[i];
            }
            CHECK(std::sqrt(diff2) <= 1e-6 * std::max(1.0, std::sqrt(norm2)));
        }
    }
}

TEST_CASE("parameter-shift rejects parameterized controlled rotations") {
    const CircuitProgram p = build_ansatz(make_spec("13", 2, 1));  // CRZ slots
    const std::vector<double> theta(static_cast<std::size_t>(p.n_params), 0.3);
    const Laplacian p4 = path4();
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(4, 4);
    CHECK_THROWS_AS(gradient(theta, p4.L, 0.0, p, GradientMode::ParameterShift),
                    std::invalid_argument);
    CHECK_NOTHROW(gradient(theta, p4.L, 0.0, p, GradientMode::FiniteDifference));
}

TEST_CASE("optimize finds lambda_2 on K2 with a single RY") {
    Laplacian lap;
    lap.L = k2_laplacian();
    lap.connected = true;

    ObjectiveConfig config;
    config.tau = 4.0;  // above lambda_2 = 2, so the Fiedler state is the optimum
    config.restarts = 2;
    config.seed = 3;
    const OptimizationTrace trace = optimize(lap, single_ry(), config);
    CHECK(trace.final_value.j == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(trace.converged);

    // psi* is proportional to (1, -1)/sqrt(2).
    const Statevector psi = apply_circuit(single_ry(), trace.theta_star);
    CHECK(std::abs(psi.amplitudes[0] + psi.amplitudes[1]) < 1e-4);
}

TEST_CASE("optimize reaches the ground state when the penalty is off") {
    Laplacian lap;
    lap.L = k2_laplacian();
    lap.connected = true;
    ObjectiveConfig config;
    config.tau = 0.0;
    config.restarts = 2;
    config.seed = 5;
    const OptimizationTrace trace = optimize(lap, single_ry(), config);
    CHECK(trace.final_value.j == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("optimize on the P4 path with circuit #C") {
    const Laplacian lap = path4();
    ObjectiveConfig config;
    config.alpha = 1.0;
    config.restarts = 5;
    config.seed = 11;
    const CircuitProgram program = build_ansatz(make_spec("C", 2, 2));
    const OptimizationTrace trace = optimize(lap, program, config);

    const double lambda2 = 2.0 - std::sqrt(2.0);
    CHECK(std::abs(trace.final_value.j - lambda2) <= 0.05 * lambda2);

    // Trace bookkeeping: identity holds and J never increases.
    for (const ObjectiveValue& v : trace.iterations)
        CHECK(v.j == doctest::Approx(v.sigma1 + trace.tau * v.sigma2).epsilon(1e-12));
    for (std::size_t i = 1; i < trace.iterations.size(); ++i)
        CHECK(trace.iterations[i].j <= trace.iterations[i - 1].j + 1e-10);
    CHECK(trace.best_restart >= 0);
    CHECK(trace.best_restart < 5);
}

TEST_CASE("optimize warns on disconnected graphs and degenerate tau") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 2);
    const Laplacian lap = build_laplacian(AffinityMatrix{w, 1.0, std::nullopt});
    ObjectiveConfig config;
    config.tau = 0.0;
    config.max_itr = 5;
    config.seed = 1;
    const OptimizationTrace trace = optimize(lap, single_ry(), config);
    REQUIRE(trace.warnings.size() == 2);
    CHECK(trace.warnings[0].find("disconnected") != std::string::npos);
    CHECK(trace.warnings[1].find("tau") != std::string::npos);
}

TEST_CASE("readout recovers sign patterns") {
    const Laplacian p4 = path4();

    const Statevector real_state = state_from({0.6, 0.5, -0.45, -0.55});
    const ClusterResult direct =
        readout_signs_from_state(real_state, kDefaultLambdas, p4.L);
    CHECK(direct.signs == std::vector<int>{1, 1, -1, -1});
    CHECK(direct.labels == std::vector<int>{1, 1, 0, 0});
    CHECK(direct.cut_value == doctest::Approx(4.0));

    // i * (real vector): the angle sweep recovers the same partition and cut.
    Statevector rotated = real_state;
    for (cplx& a : rotated.amplitudes) a *= cplx{0.0, 1.0};
    const ClusterResult via_rotation =
        readout_signs_from_state(rotated, kDefaultLambdas, p4.L);
    CHECK(via_rotation.cut_value == doctest::Approx(direct.cut_value));
    const bool same = via_rotation.signs == direct.signs;
    std::vector<int> flipped(direct.signs.size());
    for (std::size_t i = 0; i < flipped.size(); ++i) flipped[i] = -direct.signs[i];
    CHECK((same || via_rotation.signs == flipped));

    // Boundary component Re(e^{i lambda} psi_j) = 0 resolves to +1.
    const Statevector boundary = state_from({0.0, 1.0, -1.0, 1.0});
    const double zero_lambda[] = {0.0};
    const ClusterResult tie =
        readout_signs_from_state(boundary, std::span(zero_lambda, 1), p4.L);
    CHECK(tie.signs[0] == 1);

    CHECK_THROWS_AS(readout_signs_from_state(real_state, {}, p4.L), std::invalid_argument);
}

TEST_CASE("readout picks the exhaustive minimum and absorbs global phases") {
    std::mt19937_64 eng = seeded_engine(73, 0);
    const Laplacian p4 = path4();
    for (int trial = 0; trial < 40; ++trial) {
        const Statevector psi = vqasc::testing::random_state(eng, 2);
        const ClusterResult result = readout_signs_from_state(psi, kDefaultLambdas, p4.L);

        double best_split = std::numeric_limits<double>::infinity();
        double best_any = std::numeric_limits<double>::infinity();
        for (const double lambda : kDefaultLambdas) {
            std::vector<int> signs(4);
            for (std::size_t j = 0; j < 4; ++j)
                signs[j] =
                    (std::exp(cplx{0, lambda}) * psi.amplitudes[j]).real() < 0.0 ? -1 : 1;
            const double w = cut_value(signs, p4.L);
            best_any = std::min(best_any, w);
            if (signs != std::vector<int>{1, 1, 1, 1} && signs != std::vector<int>{-1, -1, -1, -1})
                best_split = std::min(best_split, w);
        }
        const double expected = std::isfinite(best_split) ? best_split : best_any;
        CHECK(result.cut_value == doctest::Approx(expected).epsilon(1e-12));

        for (const double phase : kDefaultLambdas) {
            Statevector shifted = psi;
            for (cplx& a : shifted.amplitudes) a *= std::exp(cplx{0, phase});
            const ClusterResult shifted_result =
                readout_signs_from_state(shifted, kDefaultLambdas, p4.L);
            CHECK(shifted_result.cut_value == doctest::Approx(result.cut_value).epsilon(1e-12));
        }
    }
}

TEST_CASE("program-level readout matches the per-component sign circuit") {
    std::mt19937_64 eng = seeded_engine(79, 0);
    const Laplacian p4 = path4();
    const CircuitProgram program = build_ansatz(make_spec("C", 2, 1));
    const std::vector<double> theta = random_angles(eng, program.n_params);
    const ClusterResult result = readout_signs(program, theta, kDefaultLambdas, p4.L);

    for (std::size_t j = 0; j < 4; ++j) {
        const double t = component_sign_value(program, theta, j, result.chosen_lambda,
                                              SignBackend::Ancilla);
        CHECK(result.signs[j] == (t < 0.0 ? -1 : 1));
    }
}

TEST_CASE("settling fraction flags collapsed states") {
    Statevector uniform = Statevector::zero_state(4);
    const double amp = 1.0 / 4.0;
    for (cplx& a : uniform.amplitudes) a = cplx{amp, 0.0};
    CHECK(settling_fraction(uniform) == doctest::Approx(0.0));

    const Statevector collapsed = Statevector::zero_state(4);
    CHECK(settling_fraction(collapsed) == doctest::Approx(15.0 / 16.0));
}

TEST_CASE("cluster pipeline on an N=16 two-blob dataset") {
    const Dataset data = make_blobs(16, 0.3, 2024);

    ClusterOptions options;
    options.graph.gamma = 0.5;
    options.ansatz_id = "C";
    options.layers = 4;
    options.objective.alpha = 1.0;
    options.objective.restarts = 3;
    options.objective.seed = 7;
    options.diagnostics = true;

    const ClusterResult result = cluster(data, options);
    REQUIRE(result.labels.size() == 16);
    REQUIRE(result.statevector_dump.has_value());

    // Wide separation: partition matches both the generator labels and the
    // classical Fiedler signs.
    CHECK(adjusted_rand_index(result.labels, *data.labels) == doctest::Approx(1.0));

    const Eigen::MatrixXd features = rescale_features(data.points);
    const Laplacian lap = build_laplacian(gaussian_affinity(features, options.graph.gamma));
    const OracleResult oracle = classical_fiedler(lap.L);
    CHECK(adjusted_rand_index(result.labels, oracle.labels) == doctest::Approx(1.0));
    CHECK(result.settling_fraction < 0.5);
}

TEST_CASE("cluster on N=4 splits well-separated pairs") {
    Dataset data;
    data.points.resize(4, 1);
    data.points << -2.0, -1.9, 2.0, 1.9;
    ClusterOptions options;
    options.graph.gamma = 1.0;
    options.ansatz_id = "C";
    options.layers = 2;
    options.objective.alpha = 1.0;
    options.objective.restarts = 3;
    options.objective.seed = 9;
    const ClusterResult result = cluster(data, options);
    CHECK(result.labels[0] == result.labels[1]);
    CHECK(result.labels[2] == result.labels[3]);
    CHECK(result.labels[0] != result.labels[2]);
}

TEST_CASE("cluster guards") {
    // Not a power of two.
    Dataset bad;
    bad.points = Eigen::MatrixXd::Random(12, 2);
    ClusterOptions options;
    options.objective.alpha = 1.0;
    options.objective.seed = 1;
    CHECK_THROWS_WITH_AS(cluster(bad, options),
                         doctest::Contains("power of two"), std::invalid_argument);

    // k-NN with k = 1 on two distant blobs leaves the graph disconnected.
    const Dataset blobs = make_blobs(8, 0.05, 11);
    ClusterOptions tight;
    tight.graph.gamma = 50.0;
    tight.graph.k = 1;
    tight.ansatz_id = "C";
    tight.layers = 1;
    tight.objective.alpha = 1.0;
    tight.objective.seed = 1;
    CHECK_THROWS_WITH_AS(cluster(blobs, tight), doctest::Contains("increase k or gamma"),
                         std::runtime_error);
}
