#include "vqasc/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace vqasc {

namespace {

void check_same_length(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("metrics: label vectors differ in length");
    if (a.empty()) throw std::invalid_argument("metrics: empty label vectors");
}

// 2x2 contingency counts for binary labels.
std::array<std::array<long long, 2>, 2> contingency(const std::vector<int>& pred,
                                                    const std::vector<int>& truth) {
    std::array<std::array<long long, 2>, 2> n{{{0, 0}, {0, 0}}};
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const int p = pred[i] ? 1 : 0;
        const int t = truth[i] ? 1 : 0;
        ++n[static_cast<std::size_t>(p)][static_cast<std::size_t>(t)];
    }
    return n;
}

double choose2(long long m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); }

}  // namespace

OracleResult classical_fiedler(const Eigen::MatrixXd& L) {
    if (L.rows() != L.cols()) throw std::invalid_argument("classical_fiedler: matrix not square");
    if (L.rows() < 2) throw std::invalid_argument("classical_fiedler: need at least 2 vertices");
    const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("classical_fiedler: matrix not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("classical_fiedler: eigendecomposition failed");

    OracleResult out;
    out.eigenvalues = solver.eigenvalues();
    out.fiedler_value = out.eigenvalues[1];
    out.fiedler_vector = solver.eigenvectors().col(1);
    out.labels.resize(static_cast<std::size_t>(L.rows()));
    for (Eigen::Index i = 0; i < L.rows(); ++i)
        out.labels[static_cast<std::size_t>(i)] = out.fiedler_vector[i] < 0.0 ? 0 : 1;
    return out;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
    check_same_length(pred, truth);
    std::size_t same = 0;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if ((pred[i] ? 1 : 0) == (truth[i] ? 1 : 0)) ++same;
    const double n = static_cast<double>(pred.size());
    const double direct = static_cast<double>(same) / n;
    return std::max(direct, 1.0 - direct);
}

double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
    check_same_length(pred, truth);
    if (pred.size() < 2) throw std::invalid_argument("adjusted_rand_index: need N >= 2");

    const auto n = contingency(pred, truth);
    const long long a0 = n[0][0] + n[0][1], a1 = n[1][0] + n[1][1];
    const long long b0 = n[0][0] + n[1][0], b1 = n[0][1] + n[1][1];
    const double total = choose2(static_cast<long long>(pred.size()));

    const double index = choose2(n[0][0]) + choose2(n[0][1]) + choose2(n[1][0]) + choose2(n[1][1]);
    const double sum_a = choose2(a0) + choose2(a1);
    const double sum_b = choose2(b0) + choose2(b1);
    const double expected = sum_a * sum_b / total;
    const double max_index = 0.5 * (sum_a + sum_b);

    const double denom = max_index - expected;
    if (std::abs(denom) < 1e-300) return 1.0;  // both partitions trivial and identical
    return (index - expected) / denom;
}

double normalized_mutual_info(const std::vector<int>& pred, const std::vector<int>& truth) {
    check_same_length(pred, truth);
    const auto n = contingency(pred, truth);
    const double total = static_cast<double>(pred.size());

    const double a[2] = {static_cast<double>(n[0][0] + n[0][1]),
                         static_cast<double>(n[1][0] + n[1][1])};
    const double b[2] = {static_cast<double>(n[0][0] + n[1][0]),
                         static_cast<double>(n[0][1] + n[1][1])};

    auto entropy = [&](const double* counts) {
        double h = 0.0;
        for (int i = 0; i < 2; ++i) {
            if (counts[i] > 0.0) {
                const double p = counts[i] / total;
                h -= p * std::log(p);
            }
        }
        return h;
    };
    const double h_pred = entropy(a);
    const double h_truth = entropy(b);
    if (h_pred == 0.0 || h_truth == 0.0) return 0.0;  // constant partition

    double mi = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double nij = static_cast<double>(n[static_cast<std::size_t>(i)]
                                                    [static_cast<std::size_t>(j)]);
            if (nij > 0.0) mi += (nij / total) * std::log(total * nij / (a[i] * b[j]));
        }
    }
    return mi / (0.5 * (h_pred + h_truth));
}

double cut_value(const std::vector<int>& signs, const Eigen::MatrixXd& L) {
    if (static_cast<Eigen::Index>(signs.size()) != L.rows())
        throw std::invalid_argument("cut_value: dimension mismatch");
    Eigen::VectorXd f(L.rows());
    for (Eigen::Index i = 0; i < L.rows(); ++i) {
        const int s = signs[static_cast<std::size_t>(i)];
        if (s != 1 && s != -1) throw std::invalid_argument("cut_value: signs must be +-1");
        f[i] = static_cast<double>(s);
    }
    return f.dot(L * f);
}

}  // namespace vqasc
