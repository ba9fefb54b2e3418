#pragma once

#include <vector>

#include <Eigen/Dense>

namespace vqasc {

// Classical dense-eigensolver oracle output.
struct OracleResult {
    Eigen::VectorXd eigenvalues;     // ascending
    double fiedler_value = 0.0;      // eigenvalues[1]
    Eigen::VectorXd fiedler_vector;
    std::vector<int> labels;         // {0,1} from Fiedler signs, zeros -> 1
};

// Full symmetric eigendecomposition; throws on non-symmetric input.
OracleResult classical_fiedler(const Eigen::MatrixXd& L);

// Binary clustering accuracy, max over the two label permutations.
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// Hubert-Arabie adjusted Rand index from the 2x2 contingency table.
double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth);

// I(pred; truth) / mean(H(pred), H(truth)) with natural-log entropies;
// defined as 0 when either partition is constant.
double normalized_mutual_info(const std::vector<int>& pred, const std::vector<int>& truth);

// f^T L f for f in {-1,+1}^N; equals 4x the total weight cut by the partition.
double cut_value(const std::vector<int>& signs, const Eigen::MatrixXd& L);

}  // namespace vqasc
