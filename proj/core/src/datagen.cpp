#include "vqasc/datagen.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vqasc/rng.hpp"

namespace vqasc {

namespace {

// Shuffles rows in place with the generator stream that follows the draws.
Dataset shuffled(Eigen::MatrixXd points, std::vector<int> labels, std::mt19937_64& eng,
                 std::string name) {
    const auto n = static_cast<std::size_t>(points.rows());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(i + 1));
        std::swap(order[i], order[std::min(j, i)]);
    }

    Dataset out;
    out.name = std::move(name);
    out.points.resize(points.rows(), points.cols());
    std::vector<int> shuffled_labels(n);
    for (std::size_t r = 0; r < n; ++r) {
        out.points.row(static_cast<Eigen::Index>(r)) =
            points.row(static_cast<Eigen::Index>(order[r]));
        shuffled_labels[r] = labels[order[r]];
    }
    out.labels = std::move(shuffled_labels);
    return out;
}

void check_n(int n) {
    if (n < 4) throw std::invalid_argument("dataset generators need N >= 4");
}

}  // namespace

Dataset make_blobs(int n, double noise, std::uint64_t seed) {
    check_n(n);
    std::mt19937_64 eng = seeded_engine(seed, 0);

    const int n0 = n / 2;
    Eigen::MatrixXd points(n, 2);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int label = i < n0 ? 0 : 1;
        const double cx = label == 0 ? -2.0 : 2.0;
        points(i, 0) = cx + noise * gauss(eng);
        points(i, 1) = noise * gauss(eng);
        labels[static_cast<std::size_t>(i)] = label;
    }
    return shuffled(std::move(points), std::move(labels), eng, "blobs");
}

Dataset make_moons(int n, double noise, std::uint64_t seed) {
    check_n(n);
    std::mt19937_64 eng = seeded_engine(seed, 0);

    const int n_out = n / 2;
    const int n_in = n - n_out;
    Eigen::MatrixXd points(n, 2);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n_out; ++i) {
        const double t = std::numbers::pi * i / std::max(1, n_out - 1);
        points(i, 0) = std::cos(t);
        points(i, 1) = std::sin(t);
        labels[static_cast<std::size_t>(i)] = 0;
    }
    for (int i = 0; i < n_in; ++i) {
        const double t = std::numbers::pi * i / std::max(1, n_in - 1);
        points(n_out + i, 0) = 1.0 - std::cos(t);
        points(n_out + i, 1) = 0.5 - std::sin(t);
        labels[static_cast<std::size_t>(n_out + i)] = 1;
    }
    if (noise > 0.0) {
        for (int i = 0; i < n; ++i) {
            points(i, 0) += noise * gauss(eng);
            points(i, 1) += noise * gauss(eng);
        }
    }
    return shuffled(std::move(points), std::move(labels), eng, "moons");
}

Dataset make_circles(int n, double noise, std::uint64_t seed, double factor) {
    check_n(n);
    if (!(factor > 0.0 && factor < 1.0))
        throw std::invalid_argument("make_circles: factor must be in (0, 1)");
    std::mt19937_64 eng = seeded_engine(seed, 0);

    const int n_out = n / 2;
    const int n_in = n - n_out;
    Eigen::MatrixXd points(n, 2);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n_out; ++i) {
        const double t = 2.0 * std::numbers::pi * i / n_out;
        points(i, 0) = std::cos(t);
        points(i, 1) = std::sin(t);
        labels[static_cast<std::size_t>(i)] = 0;
    }
    for (int i = 0; i < n_in; ++i) {
        const double t = 2.0 * std::numbers::pi * i / n_in;
        points(n_out + i, 0) = factor * std::cos(t);
        points(n_out + i, 1) = factor * std::sin(t);
        labels[static_cast<std::size_t>(n_out + i)] = 1;
    }
    if (noise > 0.0) {
        for (int i = 0; i < n; ++i) {
            points(i, 0) += noise * gauss(eng);
            points(i, 1) += noise * gauss(eng);
        }
    }
    return shuffled(std::move(points), std::move(labels), eng, "circles");
}

}  // namespace vqasc
