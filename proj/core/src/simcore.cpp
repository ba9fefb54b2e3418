#include "vqasc/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vqasc {

namespace {

constexpr cplx kI{0.0, 1.0};

// Applies the 2x2 matrix `u` to `target`, restricted to basis states whose
// bits match `ctrl_value` on `ctrl_mask`. O(2^n).
void apply_1q(std::vector<cplx>& amp, int target, const std::array<cplx, 4>& u,
              std::uint64_t ctrl_mask, std::uint64_t ctrl_value) {
    const std::uint64_t n = amp.size();
    const std::uint64_t step = 1ull << target;
    for (std::uint64_t base = 0; base < n; base += (step << 1)) {
        for (std::uint64_t off = 0; off < step; ++off) {
            const std::uint64_t i0 = base + off;
            if ((i0 & ctrl_mask) != ctrl_value) continue;
            const std::uint64_t i1 = i0 + step;
            const cplx a = amp[i0], b = amp[i1];
            amp[i0] = u[0] * a + u[1] * b;
            amp[i1] = u[2] * a + u[3] * b;
        }
    }
}

// Resolved form of one GateOp: acting 2x2 matrix + target + control bits.
struct ResolvedGate {
    std::array<cplx, 4> u;
    int target;
    std::uint64_t ctrl_mask = 0;
    std::uint64_t ctrl_value = 0;
};

ResolvedGate resolve(const GateOp& op, std::span<const double> theta) {
    double angle = op.fixed_angle;
    if (op.param_slot) angle = theta[static_cast<std::size_t>(*op.param_slot)];

    ResolvedGate g;
    g.u = gate_matrix_1q(op.kind, angle);
    if (is_controlled(op.kind)) {
        const int control = op.targets[0];
        g.target = op.targets[1];
        g.ctrl_mask = 1ull << control;
        g.ctrl_value = 1ull << control;
    } else {
        g.target = op.targets[0];
    }
    return g;
}

}  // namespace

Statevector Statevector::zero_state(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("Statevector: n_qubits must be >= 1");
    Statevector psi;
    psi.n_qubits = n_qubits;
    psi.amplitudes.assign(1ull << n_qubits, cplx{0.0, 0.0});
    psi.amplitudes[0] = cplx{1.0, 0.0};
    return psi;
}

double Statevector::norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

bool is_controlled(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CY:
        case GateKind::CZ:
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ:
            return true;
        default:
            return false;
    }
}

bool is_parametric(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ:
        case GateKind::AncillaPhase:
            return true;
        default:
            return false;
    }
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::CX: return "CX";
        case GateKind::CY: return "CY";
        case GateKind::CZ: return "CZ";
        case GateKind::CRX: return "CRX";
        case GateKind::CRY: return "CRY";
        case GateKind::CRZ: return "CRZ";
        case GateKind::AncillaPhase: return "ANCILLA_PHASE";
    }
    return "?";
}

std::array<cplx, 4> gate_matrix_1q(GateKind kind, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
        case GateKind::RX:
        case GateKind::CRX:
            return {cplx{c, 0}, -kI * s, -kI * s, cplx{c, 0}};
        case GateKind::RY:
        case GateKind::CRY:
            return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
        case GateKind::RZ:
        case GateKind::CRZ:
        case GateKind::AncillaPhase:
            return {std::exp(-kI * (angle / 2.0)), cplx{0, 0}, cplx{0, 0},
                    std::exp(kI * (angle / 2.0))};
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return {cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0}};
        }
        case GateKind::X:
        case GateKind::CX:
            return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        case GateKind::CY:
            return {cplx{0, 0}, -kI, kI, cplx{0, 0}};
        case GateKind::CZ:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
    }
    throw std::invalid_argument("gate_matrix_1q: unknown gate kind");
}

void CircuitProgram::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("CircuitProgram: n_qubits must be >= 1");
    if (n_params < 0) throw std::invalid_argument("CircuitProgram: n_params must be >= 0");

    std::vector<int> slot_uses(static_cast<std::size_t>(n_params), 0);
    for (const GateOp& op : ops) {
        const std::size_t want = is_controlled(op.kind) ? 2 : 1;
        if (op.targets.size() != want)
            throw std::invalid_argument("CircuitProgram: wrong target count for " +
                                        gate_name(op.kind));
        for (int q : op.targets)
            if (q < 0 || q >= n_qubits)
                throw std::invalid_argument("CircuitProgram: target index out of range");
        if (want == 2 && op.targets[0] == op.targets[1])
            throw std::invalid_argument("CircuitProgram: control equals target");
        if (op.param_slot) {
            if (!is_parametric(op.kind))
                throw std::invalid_argument("CircuitProgram: param slot on non-parametric " +
                                            gate_name(op.kind));
            if (*op.param_slot < 0 || *op.param_slot >= n_params)
                throw std::invalid_argument("CircuitProgram: param slot out of range");
            ++slot_uses[static_cast<std::size_t>(*op.param_slot)];
        }
    }
    for (int uses : slot_uses)
        if (uses != 1)
            throw std::invalid_argument(
                "CircuitProgram: param slots must form {0..n_params-1}, used once each");
}

Statevector apply_circuit(const CircuitProgram& program, std::span<const double> theta) {
    if (std::cmp_not_equal(theta.size(), program.n_params))
        throw std::invalid_argument("apply_circuit: parameter-length mismatch");
    program.validate();

    Statevector psi = Statevector::zero_state(program.n_qubits);
    for (const GateOp& op : program.ops) {
        const ResolvedGate g = resolve(op, theta);
        apply_1q(psi.amplitudes, g.target, g.u, g.ctrl_mask, g.ctrl_value);
    }
    return psi;
}

double expectation(const Statevector& psi, const Eigen::MatrixXd& observable) {
    const auto dim = static_cast<Eigen::Index>(psi.dim());
    if (observable.rows() != dim || observable.cols() != dim)
        throw std::invalid_argument("expectation: observable dimension mismatch");
    const double scale = std::max(1.0, observable.cwiseAbs().maxCoeff());
    if ((observable - observable.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("expectation: observable is not symmetric");

    Eigen::VectorXd re(dim), im(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        re[k] = psi.amplitudes[static_cast<std::size_t>(k)].real();
        im[k] = psi.amplitudes[static_cast<std::size_t>(k)].imag();
    }
    const Eigen::VectorXd m_re = observable * re;
    const Eigen::VectorXd m_im = observable * im;
    const double value = re.dot(m_re) + im.dot(m_im);
    const double residue = re.dot(m_im) - im.dot(m_re);
    if (std::abs(residue) > 1e-10 * std::max(1.0, std::abs(value)))
        throw std::runtime_error("expectation: imaginary residue above tolerance");
    return value;
}

double uniform_overlap(const Statevector& psi) {
    cplx s{0.0, 0.0};
    for (const cplx& a : psi.amplitudes) s += a;
    return std::norm(s) / static_cast<double>(psi.dim());
}

double fidelity(const Statevector& a, const Statevector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
    cplx overlap{0.0, 0.0};
    for (std::size_t k = 0; k < a.dim(); ++k)
        overlap += std::conj(a.amplitudes[k]) * b.amplitudes[k];
    return std::norm(overlap);
}

double component_sign_value(const CircuitProgram& program, std::span<const double> theta,
                            std::size_t basis_index, double lambda, SignBackend backend) {
    if (std::cmp_not_equal(theta.size(), program.n_params))
        throw std::invalid_argument("component_sign_value: parameter-length mismatch");
    const std::uint64_t dim = 1ull << program.n_qubits;
    if (basis_index >= dim)
        throw std::invalid_argument("component_sign_value: basis index out of range");

    if (backend == SignBackend::Direct) {
        const Statevector psi = apply_circuit(program, theta);
        return (std::exp(kI * lambda) * psi.amplitudes[basis_index]).real();
    }

    // Ancilla backend: simulate on n+1 qubits, ancilla = qubit n.
    // Circuit of the ancilla line: H, ctrl-U (ancilla=1), antictrl-V_j
    // (ancilla=0), RZ(lambda), H; then <Z> on the ancilla.
    program.validate();
    const int anc = program.n_qubits;
    const std::uint64_t anc_bit = 1ull << anc;
    std::vector<cplx> amp(dim << 1, cplx{0.0, 0.0});
    amp[0] = cplx{1.0, 0.0};

    apply_1q(amp, anc, gate_matrix_1q(GateKind::H, 0.0), 0, 0);
    for (const GateOp& op : program.ops) {
        ResolvedGate g = resolve(op, theta);
        g.ctrl_mask |= anc_bit;
        g.ctrl_value |= anc_bit;
        apply_1q(amp, g.target, g.u, g.ctrl_mask, g.ctrl_value);
    }
    // V_j = tensor of X on qubits where bit q of j is 1, so V_j|0..0> = |j>.
    for (int q = 0; q < program.n_qubits; ++q) {
        if ((basis_index >> q) & 1ull)
            apply_1q(amp, q, gate_matrix_1q(GateKind::X, 0.0), anc_bit, 0);
    }
    apply_1q(amp, anc, gate_matrix_1q(GateKind::AncillaPhase, lambda), 0, 0);
    apply_1q(amp, anc, gate_matrix_1q(GateKind::H, 0.0), 0, 0);

    double z = 0.0;
    for (std::uint64_t k = 0; k < amp.size(); ++k)
        z += ((k & anc_bit) ? -1.0 : 1.0) * std::norm(amp[k]);
    return z;
}

}  // namespace vqasc
