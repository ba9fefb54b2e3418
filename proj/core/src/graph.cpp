#include "vqasc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace vqasc {

Eigen::MatrixXd rescale_features(const Eigen::MatrixXd& X) {
    if (X.rows() < 2) throw std::invalid_argument("rescale_features: need at least 2 points");
    if (!X.allFinite()) throw std::invalid_argument("rescale_features: non-finite input");

    Eigen::MatrixXd out(X.rows(), X.cols());
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const double lo = X.col(c).minCoeff();
        const double hi = X.col(c).maxCoeff();
        if (hi == lo) {
            out.col(c).setZero();
        } else {
            out.col(c) = (2.0 * (X.col(c).array() - lo) / (hi - lo) - 1.0).matrix();
        }
    }
    return out;
}

AffinityMatrix gaussian_affinity(const Eigen::MatrixXd& X, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gaussian_affinity: gamma must be > 0");
    const Eigen::Index n = X.rows();
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d2 = (X.row(i) - X.row(j)).squaredNorm();
            const double w = std::exp(-gamma * d2);
            W(i, j) = w;
            W(j, i) = w;
        }
    }
    return AffinityMatrix{std::move(W), gamma, std::nullopt};
}

AffinityMatrix knn_sparsify(const AffinityMatrix& affinity, int k) {
    const Eigen::Index n = affinity.W.rows();
    if (k < 1 || k >= n) throw std::invalid_argument("knn_sparsify: k out of range [1, N-1]");

    // keep(i, j) = j is among the k strongest neighbors of i.
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> keep(n, n);
    keep.setConstant(false);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i) {
        order.clear();
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) order.push_back(j);
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            if (affinity.W(i, a) != affinity.W(i, b)) return affinity.W(i, a) > affinity.W(i, b);
            return a < b;  // tie-break: lower index first
        });
        for (int r = 0; r < k; ++r) keep(i, order[static_cast<std::size_t>(r)]) = true;
    }

    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && (keep(i, j) || keep(j, i))) W(i, j) = affinity.W(i, j);
    return AffinityMatrix{std::move(W), affinity.gamma, k};
}

bool is_connected(const Eigen::MatrixXd& W) {
    const Eigen::Index n = W.rows();
    if (n <= 1) return true;

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::queue<Eigen::Index> frontier;
    frontier.push(0);
    seen[0] = true;
    Eigen::Index visited = 1;
    while (!frontier.empty()) {
        const Eigen::Index v = frontier.front();
        frontier.pop();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!seen[static_cast<std::size_t>(j)] && W(v, j) > kEdgeWeightEps) {
                seen[static_cast<std::size_t>(j)] = true;
                ++visited;
                frontier.push(j);
            }
        }
    }
    return visited == n;
}

Laplacian build_laplacian(const AffinityMatrix& affinity) {
    const Eigen::MatrixXd& W = affinity.W;
    if (W.rows() != W.cols()) throw std::invalid_argument("build_laplacian: W not square");

    Eigen::MatrixXd L = -W;
    L.diagonal() = W.rowwise().sum();
    return Laplacian{std::move(L), is_connected(W)};
}

Eigen::MatrixXd pca_reduce(const Eigen::MatrixXd& X, int target_dims) {
    if (target_dims < 1 || target_dims > X.cols())
        throw std::invalid_argument("pca_reduce: target_dims out of range");
    const Eigen::Index n = X.rows();
    if (n < 2) throw std::invalid_argument("pca_reduce: need at least 2 points");

    const Eigen::MatrixXd centered = X.rowwise() - X.colwise().mean();
    const Eigen::MatrixXd cov =
        (centered.transpose() * centered) / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("pca_reduce: eigendecomposition failed");

    // Eigen sorts ascending; take the top target_dims, strongest first.
    Eigen::MatrixXd components(X.cols(), target_dims);
    for (int c = 0; c < target_dims; ++c)
        components.col(c) = solver.eigenvectors().col(X.cols() - 1 - c);

    for (int c = 0; c < target_dims; ++c) {
        Eigen::Index max_row = 0;
        components.col(c).cwiseAbs().maxCoeff(&max_row);
        if (components(max_row, c) < 0.0) components.col(c) = -components.col(c);
    }
    return centered * components;
}

}  // namespace vqasc
