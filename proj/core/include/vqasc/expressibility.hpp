#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vqasc/ansatz.hpp"
#include "vqasc/simcore.hpp"

namespace vqasc {

inline constexpr int kDefaultHistogramBins = 150;
inline constexpr std::int64_t kDefaultFidelitySamples = 5000;

enum class FidelityMode { Raw, Phase };

struct FidelityHistogram {
    int n_bins = 0;
    std::vector<std::int64_t> counts;
    std::int64_t n_samples = 0;
    std::vector<double> empirical_probs;  // counts / n_samples
};

// KL divergence result; `overflow` marks empirical mass sitting in a bin whose
// reference probability underflows below 1e-300 (reported, not thrown).
struct KlValue {
    double value = 0.0;
    bool overflow = false;
};

struct ExpressibilityReport {
    FidelityMode mode = FidelityMode::Raw;
    KlValue kl;
    FidelityHistogram histogram;
    AnsatzSpec spec;
    std::uint64_t seed = 0;
};

// Maps psi onto the uniform-magnitude state with the same per-basis phases;
// zero amplitudes get phase 0 by convention.
Statevector pseudo_project(const Statevector& psi);

// Analytic Haar fidelity mass per bin over a uniform partition of [0, 1],
// from the closed-form CDF 1 - (1-F)^(d-1) with d = 2^n.
std::vector<double> haar_bin_probabilities(int n_qubits, int n_bins);

// Pairwise fidelities of states from independent uniform parameter draws;
// Phase mode pseudo-projects both states first. Sample i is generated from
// the (seed, i) stream, so results are order- and thread-independent.
std::vector<double> sample_fidelities(const AnsatzSpec& spec, std::int64_t n_samples,
                                      FidelityMode mode, std::uint64_t seed);

std::vector<double> sample_fidelities(const CircuitProgram& program, std::int64_t n_samples,
                                      FidelityMode mode, std::uint64_t seed);

// Fidelities of Haar-random state pairs (complex Gaussian, normalized).
std::vector<double> sample_haar_fidelities(int n_qubits, std::int64_t n_samples,
                                           std::uint64_t seed);

FidelityHistogram histogram_fidelities(std::span<const double> fidelities, int n_bins);

KlValue kl_divergence(std::span<const double> empirical_probs,
                      std::span<const double> reference_probs);

// Composes sampling, histogramming, and the KL divergence against the Haar
// reference. Lower values mean a more expressive circuit.
ExpressibilityReport expressibility(const AnsatzSpec& spec, FidelityMode mode,
                                    std::int64_t n_samples = kDefaultFidelitySamples,
                                    int n_bins = kDefaultHistogramBins, std::uint64_t seed = 0);

// Monte-Carlo estimate of the t-th fidelity moment over sampled pairs.
double frame_potential(const AnsatzSpec& spec, int t, std::int64_t n_samples, FidelityMode mode,
                       std::uint64_t seed);

}  // namespace vqasc
