#include "vqasc/expressibility.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

#include "vqasc/rng.hpp"

namespace vqasc {

namespace {

constexpr double kZeroAmplitudeEps = 1e-12;
constexpr double kReferenceUnderflow = 1e-300;

std::vector<double> draw_angles(std::mt19937_64& eng, int count) {
    std::vector<double> theta(static_cast<std::size_t>(count));
    for (double& t : theta) t = uniform_angle(eng);
    return theta;
}

// Chunked parallel map over sample indices; per-sample seeding keeps the
// result identical to the sequential loop.
std::vector<double> sample_parallel(std::int64_t n_samples,
                                    const std::function<double(std::int64_t)>& one_sample) {
    std::vector<double> out(static_cast<std::size_t>(n_samples));
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::int64_t n_chunks = std::min<std::int64_t>(n_samples, static_cast<std::int64_t>(hw));
    if (n_chunks <= 1) {
        for (std::int64_t i = 0; i < n_samples; ++i)
            out[static_cast<std::size_t>(i)] = one_sample(i);
        return out;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(n_chunks));
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        const std::int64_t lo = c * n_samples / n_chunks;
        const std::int64_t hi = (c + 1) * n_samples / n_chunks;
        futures.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::int64_t i = lo; i < hi; ++i)
                out[static_cast<std::size_t>(i)] = one_sample(i);
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

}  // namespace

Statevector pseudo_project(const Statevector& psi) {
    Statevector out;
    out.n_qubits = psi.n_qubits;
    out.amplitudes.resize(psi.dim());
    const double magnitude = 1.0 / std::sqrt(static_cast<double>(psi.dim()));
    for (std::size_t k = 0; k < psi.dim(); ++k) {
        const double abs_k = std::abs(psi.amplitudes[k]);
        if (abs_k > kZeroAmplitudeEps) {
            out.amplitudes[k] = psi.amplitudes[k] / abs_k * magnitude;
        } else {
            out.amplitudes[k] = cplx{magnitude, 0.0};  // arg(0) := 0
        }
    }
    return out;
}

std::vector<double> haar_bin_probabilities(int n_qubits, int n_bins) {
    if (n_bins < 1) throw std::invalid_argument("haar_bin_probabilities: n_bins must be >= 1");
    if (n_qubits < 1)
        throw std::invalid_argument("haar_bin_probabilities: n_qubits must be >= 1");

    const double dm1 = static_cast<double>((std::uint64_t{1} << n_qubits) - 1);
    // CDF(F) = 1 - (1-F)^(d-1); bin mass = CDF(b) - CDF(a) = (1-a)^(d-1) - (1-b)^(d-1).
    auto tail = [dm1](double f) { return std::pow(1.0 - f, dm1); };
    std::vector<double> probs(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b) {
        const double lo = static_cast<double>(b) / n_bins;
        const double hi = b + 1 == n_bins ? 1.0 : static_cast<double>(b + 1) / n_bins;
        probs[static_cast<std::size_t>(b)] = tail(lo) - tail(hi);
    }
    return probs;
}

std::vector<double> sample_fidelities(const AnsatzSpec& spec, std::int64_t n_samples,
                                      FidelityMode mode, std::uint64_t seed) {
    return sample_fidelities(build_ansatz(spec), n_samples, mode, seed);
}

std::vector<double> sample_fidelities(const CircuitProgram& program, std::int64_t n_samples,
                                      FidelityMode mode, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("sample_fidelities: n_samples must be >= 1");
    program.validate();

    return sample_parallel(n_samples, [&](std::int64_t i) {
        std::mt19937_64 eng = seeded_engine(seed, static_cast<std::uint64_t>(i));
        const std::vector<double> theta = draw_angles(eng, program.n_params);
        const std::vector<double> phi = draw_angles(eng, program.n_params);
        Statevector a = apply_circuit(program, theta);
        Statevector b = apply_circuit(program, phi);
        if (mode == FidelityMode::Phase) {
            a = pseudo_project(a);
            b = pseudo_project(b);
        }
        return fidelity(a, b);
    });
}

std::vector<double> sample_haar_fidelities(int n_qubits, std::int64_t n_samples,
                                           std::uint64_t seed) {
    if (n_samples < 1)
        throw std::invalid_argument("sample_haar_fidelities: n_samples must be >= 1");
    const std::size_t dim = std::size_t{1} << n_qubits;

    return sample_parallel(n_samples, [&](std::int64_t i) {
        std::mt19937_64 eng = seeded_engine(seed, static_cast<std::uint64_t>(i));
        auto draw_state = [&] {
            Statevector psi;
            psi.n_qubits = n_qubits;
            psi.amplitudes.resize(dim);
            double norm2 = 0.0;
            for (cplx& a : psi.amplitudes) {
                a = cplx{gauss(eng), gauss(eng)};
                norm2 += std::norm(a);
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (cplx& a : psi.amplitudes) a *= inv;
            return psi;
        };
        const Statevector a = draw_state();
        const Statevector b = draw_state();
        return fidelity(a, b);
    });
}

FidelityHistogram histogram_fidelities(std::span<const double> fidelities, int n_bins) {
    if (n_bins < 1) throw std::invalid_argument("histogram_fidelities: n_bins must be >= 1");
    if (fidelities.empty())
        throw std::invalid_argument("histogram_fidelities: no samples");

    FidelityHistogram h;
    h.n_bins = n_bins;
    h.n_samples = static_cast<std::int64_t>(fidelities.size());
    h.counts.assign(static_cast<std::size_t>(n_bins), 0);
    for (const double f : fidelities) {
        if (!(f >= 0.0 && f <= 1.0 + 1e-12))
            throw std::invalid_argument("histogram_fidelities: fidelity outside [0, 1]");
        const int b = std::min(n_bins - 1, static_cast<int>(f * n_bins));
        ++h.counts[static_cast<std::size_t>(b)];
    }
    h.empirical_probs.resize(static_cast<std::size_t>(n_bins));
    for (int b = 0; b < n_bins; ++b)
        h.empirical_probs[static_cast<std::size_t>(b)] =
            static_cast<double>(h.counts[static_cast<std::size_t>(b)]) /
            static_cast<double>(h.n_samples);
    return h;
}

KlValue kl_divergence(std::span<const double> empirical_probs,
                      std::span<const double> reference_probs) {
    if (empirical_probs.size() != reference_probs.size())
        throw std::invalid_argument("kl_divergence: length mismatch");
    KlValue out;
    for (std::size_t b = 0; b < empirical_probs.size(); ++b) {
        const double p = empirical_probs[b];
        const double q = reference_probs[b];
        if (p < 0.0 || q < 0.0) throw std::invalid_argument("kl_divergence: negative probability");
        if (p == 0.0) continue;
        if (q < kReferenceUnderflow) {
            out.overflow = true;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        out.value += p * std::log(p / q);
    }
    return out;
}

ExpressibilityReport expressibility(const AnsatzSpec& spec, FidelityMode mode,
                                    std::int64_t n_samples, int n_bins, std::uint64_t seed) {
    ExpressibilityReport report;
    report.mode = mode;
    report.spec = spec;
    report.seed = seed;
    const std::vector<double> fidelities = sample_fidelities(spec, n_samples, mode, seed);
    report.histogram = histogram_fidelities(fidelities, n_bins);
    const std::vector<double> reference = haar_bin_probabilities(spec.n_qubits, n_bins);
    report.kl = kl_divergence(report.histogram.empirical_probs, reference);
    return report;
}

double frame_potential(const AnsatzSpec& spec, int t, std::int64_t n_samples, FidelityMode mode,
                       std::uint64_t seed) {
    if (t < 1) throw std::invalid_argument("frame_potential: t must be >= 1");
    const std::vector<double> fidelities = sample_fidelities(spec, n_samples, mode, seed);
    double acc = 0.0;
    for (const double f : fidelities) acc += std::pow(f, t);
    return acc / static_cast<double>(fidelities.size());
}

}  // namespace vqasc
