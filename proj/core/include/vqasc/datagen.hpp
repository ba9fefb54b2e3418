#pragma once

#include <cstdint>

#include "vqasc/graph.hpp"

namespace vqasc {

// Two isotropic Gaussians centered at (-2, 0) and (2, 0); `noise` is the
// cluster standard deviation. Rows come out label-shuffled.
Dataset make_blobs(int n, double noise, std::uint64_t seed);

// Two interleaved half-circles with additive Gaussian noise.
Dataset make_moons(int n, double noise, std::uint64_t seed);

// Two concentric rings; `factor` is the inner/outer radius ratio.
Dataset make_circles(int n, double noise, std::uint64_t seed, double factor = 0.5);

}  // namespace vqasc
