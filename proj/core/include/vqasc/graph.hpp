#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqasc {

struct Dataset {
    Eigen::MatrixXd points;                      // N x d
    std::optional<std::vector<int>> labels;      // ground truth, evaluation only
    std::string name;

    Eigen::Index size() const { return points.rows(); }
    Eigen::Index dims() const { return points.cols(); }
};

struct AffinityMatrix {
    Eigen::MatrixXd W;        // symmetric, zero diagonal, entries in [0, 1]
    double gamma = 0.0;
    std::optional<int> k;     // set after k-NN sparsification
};

struct Laplacian {
    Eigen::MatrixXd L;        // D - W; symmetric, zero row sums, PSD
    bool connected = false;
};

// Edges at or below this weight are treated as absent by the traversal.
inline constexpr double kEdgeWeightEps = 1e-15;

// Per-feature affine map onto [-1, 1]; constant features map to 0.
Eigen::MatrixXd rescale_features(const Eigen::MatrixXd& X);

// W_ij = exp(-gamma * |x_i - x_j|^2) off the diagonal, 0 on it.
AffinityMatrix gaussian_affinity(const Eigen::MatrixXd& X, double gamma);

// Union k-NN rule: edge (i, j) kept iff j is among i's k strongest neighbors
// or vice versa. Affinity ties break toward the lower vertex index.
AffinityMatrix knn_sparsify(const AffinityMatrix& affinity, int k);

// L = diag(row sums of W) - W, with connectivity from a breadth-first sweep.
Laplacian build_laplacian(const AffinityMatrix& affinity);

bool is_connected(const Eigen::MatrixXd& W);

// Projection onto the top-variance eigenvectors of the mean-centered
// covariance; each component's largest-magnitude loading is made positive.
Eigen::MatrixXd pca_reduce(const Eigen::MatrixXd& X, int target_dims);

}  // namespace vqasc
