#pragma once

#include <random>
#include <vector>

#include "vqasc/rng.hpp"
#include "vqasc/simcore.hpp"

namespace vqasc::testing {

// Random gate sequence touching all qubits; parametric gates take slots in
// program order so the slot invariant holds by construction.
inline CircuitProgram random_program(std::mt19937_64& eng, int n_qubits, int n_gates) {
    static const GateKind pool[] = {GateKind::RX, GateKind::RY,  GateKind::RZ,  GateKind::H,
                                    GateKind::X,  GateKind::CX,  GateKind::CY,  GateKind::CZ,
                                    GateKind::CRX, GateKind::CRY, GateKind::CRZ};
    CircuitProgram p;
    p.n_qubits = n_qubits;
    int next_slot = 0;
    for (int g = 0; g < n_gates; ++g) {
        GateKind kind = pool[static_cast<std::size_t>(uniform01(eng) * std::size(pool))];
        if (n_qubits < 2 && is_controlled(kind)) kind = GateKind::RY;
        GateOp op;
        op.kind = kind;
        const int a = static_cast<int>(uniform01(eng) * n_qubits);
        if (is_controlled(kind)) {
            int b = static_cast<int>(uniform01(eng) * (n_qubits - 1));
            if (b >= a) ++b;
            op.targets = {a, b};
        } else {
            op.targets = {a};
        }
        if (is_parametric(kind)) op.param_slot = next_slot++;
        p.ops.push_back(std::move(op));
    }
    p.n_params = next_slot;
    return p;
}

inline std::vector<double> random_angles(std::mt19937_64& eng, int count) {
    std::vector<double> theta(static_cast<std::size_t>(count));
    for (double& t : theta) t = uniform_angle(eng);
    return theta;
}

// Normalized Haar-random state via complex Gaussian amplitudes.
inline Statevector random_state(std::mt19937_64& eng, int n_qubits) {
    Statevector psi;
    psi.n_qubits = n_qubits;
    psi.amplitudes.resize(std::size_t{1} << n_qubits);
    double norm2 = 0.0;
    for (cplx& a : psi.amplitudes) {
        a = cplx{gauss(eng), gauss(eng)};
        norm2 += std::norm(a);
    }
    for (cplx& a : psi.amplitudes) a /= std::sqrt(norm2);
    return psi;
}

}  // namespace vqasc::testing
