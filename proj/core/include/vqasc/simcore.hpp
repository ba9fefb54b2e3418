#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqasc {

using cplx = std::complex<double>;

// Full 2^n amplitude vector of an n-qubit pure state.
// Basis index k encodes qubit states little-endian, zero-indexed:
// qubit q is bit q of k (qubit 0 = least significant bit).
struct Statevector {
    int n_qubits = 0;
    std::vector<cplx> amplitudes;

    static Statevector zero_state(int n_qubits);

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const;
};

enum class GateKind {
    RX,
    RY,
    RZ,
    H,
    X,
    CX,
    CY,
    CZ,
    CRX,
    CRY,
    CRZ,
    AncillaPhase,  // fixed-angle RZ used by the sign-estimation circuit
};

// RX/RY/RZ: the single-qubit rotations the parameter-shift rule covers.
bool is_rotation(GateKind kind);
bool is_controlled(GateKind kind);
bool is_parametric(GateKind kind);
std::string gate_name(GateKind kind);

// 2x2 matrix of the acting part of a gate, row-major {m00, m01, m10, m11}.
// Rotation convention: R_a(t) = exp(-i t a / 2), so RY(pi)|0> = +|1>.
std::array<cplx, 4> gate_matrix_1q(GateKind kind, double angle);

struct GateOp {
    GateKind kind;
    // {target} for single-qubit gates, {control, target} for controlled ones.
    std::vector<int> targets;
    // Index into the parameter vector; empty means `fixed_angle` is used.
    std::optional<int> param_slot;
    double fixed_angle = 0.0;
};

struct CircuitProgram {
    int n_qubits = 0;
    std::vector<GateOp> ops;
    int n_params = 0;

    // Throws std::invalid_argument on out-of-range targets, duplicate targets,
    // or param slots not forming exactly {0, ..., n_params-1} once each.
    void validate() const;
};

// Returns U(theta)|0...0>.
Statevector apply_circuit(const CircuitProgram& program, std::span<const double> theta);

// <psi|M|psi> for a dense real symmetric M (symmetric within 1e-10); the
// imaginary residue of the quadratic form must stay below 1e-10 and is dropped.
double expectation(const Statevector& psi, const Eigen::MatrixXd& observable);

// |<0|H^n|psi>|^2 = |sum_k psi_k|^2 / 2^n, in [0, 1].
double uniform_overlap(const Statevector& psi);

// |<a|b>|^2.
double fidelity(const Statevector& a, const Statevector& b);

enum class SignBackend {
    Direct,   // Re(e^{i lambda} psi_j) straight off the statevector
    Ancilla,  // (n+1)-qubit sign-estimation circuit, ancilla Z-expectation
};

// Sign readout value t = Re(e^{i lambda} psi_j) for basis component j.
// Both backends agree within 1e-9; `Ancilla` simulates the Hadamard-test
// variant (H, controlled-U, anticontrolled-V_j, RZ(lambda), H on the ancilla).
double component_sign_value(const CircuitProgram& program, std::span<const double> theta,
                            std::size_t basis_index, double lambda,
                            SignBackend backend = SignBackend::Direct);

}  // namespace vqasc
