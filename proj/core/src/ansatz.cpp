#include "vqasc/ansatz.hpp"

#include <stdexcept>

namespace vqasc {

namespace {

GateKind rotation_kind(RotationAxis axis) {
    switch (axis) {
        case RotationAxis::X: return GateKind::RX;
        case RotationAxis::Y: return GateKind::RY;
        case RotationAxis::Z: return GateKind::RZ;
    }
    throw std::invalid_argument("rotation_kind: bad axis");
}

GateKind entangler_kind(EntanglerGate gate) {
    switch (gate) {
        case EntanglerGate::CX: return GateKind::CX;
        case EntanglerGate::CY: return GateKind::CY;
        case EntanglerGate::CZ: return GateKind::CZ;
    }
    throw std::invalid_argument("entangler_kind: bad gate");
}

GateKind controlled_rotation_kind(RotationAxis axis) {
    switch (axis) {
        case RotationAxis::X: return GateKind::CRX;
        case RotationAxis::Y: return GateKind::CRY;
        case RotationAxis::Z: return GateKind::CRZ;
    }
    throw std::invalid_argument("controlled_rotation_kind: bad axis");
}

class CircuitBuilder {
  public:
    explicit CircuitBuilder(int n_qubits) { program_.n_qubits = n_qubits; }

    int n() const { return program_.n_qubits; }

    // Parameterized rotation on one qubit, consuming the next slot.
    void rot(GateKind kind, int qubit) {
        program_.ops.push_back({kind, {qubit}, next_slot_++, 0.0});
    }

    // Parameterized controlled rotation (control -> target).
    void crot(GateKind kind, int control, int target) {
        program_.ops.push_back({kind, {control, target}, next_slot_++, 0.0});
    }

    void fixed(GateKind kind, int qubit) {
        program_.ops.push_back({kind, {qubit}, std::nullopt, 0.0});
    }

    void fixed2(GateKind kind, int control, int target) {
        program_.ops.push_back({kind, {control, target}, std::nullopt, 0.0});
    }

    void rot_column(GateKind kind) {
        for (int q = 0; q < n(); ++q) rot(kind, q);
    }

    void fixed_column(GateKind kind) {
        for (int q = 0; q < n(); ++q) fixed(kind, q);
    }

    CircuitProgram finish() {
        program_.n_params = next_slot_;
        program_.validate();
        return std::move(program_);
    }

  private:
    CircuitProgram program_;
    int next_slot_ = 0;
};

void entangle_block(CircuitBuilder& b, EntanglerGate gate, EntanglementLayout layout) {
    const GateKind kind = entangler_kind(gate);
    for (int q = 0; q + 1 < b.n(); ++q) b.fixed2(kind, q, q + 1);
    if (layout == EntanglementLayout::Circular) b.fixed2(kind, b.n() - 1, 0);
}

void build_template_layer(CircuitBuilder& b, const TemplateSpec& t) {
    b.rot_column(rotation_kind(t.r1));
    b.rot_column(rotation_kind(t.r2));
    entangle_block(b, t.ent, t.layout);
}

// Circuit #A: H column, RZ column, linear CX chain.
void build_a_layer(CircuitBuilder& b) {
    b.fixed_column(GateKind::H);
    b.rot_column(GateKind::RZ);
    for (int q = 0; q + 1 < b.n(); ++q) b.fixed2(GateKind::CX, q, q + 1);
}

// Circuit #B: RY column, circular CZ block (wrap drawn first), RY column.
void build_b_layer(CircuitBuilder& b) {
    b.rot_column(GateKind::RY);
    b.fixed2(GateKind::CZ, 0, b.n() - 1);
    for (int q = 0; q + 1 < b.n(); ++q) b.fixed2(GateKind::CZ, q, q + 1);
    b.rot_column(GateKind::RY);
}

// Paired entanglers used by #7/#8/#11/#12/#16/#17: first (2i+1 -> 2i),
// then the offset pairs (2i+2 -> 2i+1).
void even_pairs(CircuitBuilder& b, GateKind kind, bool parametric) {
    for (int q = 0; q + 1 < b.n(); q += 2)
        parametric ? b.crot(kind, q + 1, q) : b.fixed2(kind, q + 1, q);
}

void odd_pairs(CircuitBuilder& b, GateKind kind, bool parametric) {
    for (int q = 1; q + 1 < b.n(); q += 2)
        parametric ? b.crot(kind, q + 1, q) : b.fixed2(kind, q + 1, q);
}

// Wrap-first circular block of #13/#14/#15/#18/#19 (first half):
// (n-1 -> 0), then (c -> c+1) for c = n-2..0.
void circular_block_a(CircuitBuilder& b, GateKind kind, bool parametric) {
    auto emit = [&](int c, int t) { parametric ? b.crot(kind, c, t) : b.fixed2(kind, c, t); };
    emit(b.n() - 1, 0);
    for (int c = b.n() - 2; c >= 0; --c) emit(c, c + 1);
}

// Second circular block of #13/#14/#15: (n-1 -> n-2), (0 -> n-1),
// then (c -> c-1) for c = 1..n-2.
void circular_block_b(CircuitBuilder& b, GateKind kind, bool parametric) {
    auto emit = [&](int c, int t) { parametric ? b.crot(kind, c, t) : b.fixed2(kind, c, t); };
    emit(b.n() - 1, b.n() - 2);
    emit(0, b.n() - 1);
    for (int c = 1; c + 1 < b.n(); ++c) emit(c, c - 1);
}

void build_numbered_layer(CircuitBuilder& b, int id) {
    const int n = b.n();
    switch (id) {
        case 1:
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            break;
        case 2:
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            for (int c = n - 1; c >= 1; --c) b.fixed2(GateKind::CX, c, c - 1);
            break;
        case 3:
        case 4: {
            const GateKind k = (id == 3) ? GateKind::CRZ : GateKind::CRX;
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            for (int c = n - 1; c >= 1; --c) b.crot(k, c, c - 1);
            break;
        }
        case 5:
        case 6: {
            const GateKind k = (id == 5) ? GateKind::CRZ : GateKind::CRX;
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            for (int c = n - 1; c >= 0; --c)
                for (int t = n - 1; t >= 0; --t)
                    if (t != c) b.crot(k, c, t);
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            break;
        }
        case 7:
        case 8: {
            const GateKind k = (id == 7) ? GateKind::CRZ : GateKind::CRX;
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            even_pairs(b, k, true);
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            odd_pairs(b, k, true);
            break;
        }
        case 9:
            b.fixed_column(GateKind::H);
            for (int c = n - 2; c >= 0; --c) b.fixed2(GateKind::CZ, c, c + 1);
            b.rot_column(GateKind::RX);
            break;
        case 10:
            b.rot_column(GateKind::RY);
            for (int c = n - 2; c >= 0; --c) b.fixed2(GateKind::CZ, c, c + 1);
            b.fixed2(GateKind::CZ, 0, n - 1);
            b.rot_column(GateKind::RY);
            break;
        case 11:
        case 12: {
            b.rot_column(GateKind::RY);
            b.rot_column(GateKind::RZ);
            if (id == 11) {
                even_pairs(b, GateKind::CX, false);
            } else {
                for (int q = 0; q + 1 < n; q += 2) b.fixed2(GateKind::CZ, q, q + 1);
            }
            for (int q = 1; q + 1 < n; ++q) {
                b.rot(GateKind::RY, q);
                b.rot(GateKind::RZ, q);
            }
            odd_pairs(b, GateKind::CX, false);
            break;
        }
        case 13:
        case 14: {
            const GateKind k = (id == 13) ? GateKind::CRZ : GateKind::CRX;
            b.rot_column(GateKind::RY);
            circular_block_a(b, k, true);
            b.rot_column(GateKind::RY);
            circular_block_b(b, k, true);
            break;
        }
        case 15:
            b.rot_column(GateKind::RY);
            circular_block_a(b, GateKind::CX, false);
            b.rot_column(GateKind::RY);
            circular_block_b(b, GateKind::CX, false);
            break;
        case 16:
        case 17: {
            const GateKind k = (id == 16) ? GateKind::CRZ : GateKind::CRX;
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            even_pairs(b, k, true);
            odd_pairs(b, k, true);
            break;
        }
        case 18:
        case 19: {
            const GateKind k = (id == 18) ? GateKind::CRZ : GateKind::CRX;
            b.rot_column(GateKind::RX);
            b.rot_column(GateKind::RZ);
            circular_block_a(b, k, true);
            break;
        }
        default:
            throw std::invalid_argument("build_numbered_layer: unknown circuit id");
    }
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;
    auto add = [&](CatalogEntry e) { out.push_back(std::move(e)); };

    const TemplateSpec fig4_template{RotationAxis::X, RotationAxis::Y, EntanglerGate::CX,
                                     EntanglementLayout::Circular};

    add({"A", "H + RZ columns, linear CX chain", "nL", 2, 0, 1, 0, std::nullopt});
    add({"B", "RY column, circular CZ block, RY column", "2nL", 2, 0, 2, 0, std::nullopt});
    add({"C", "RX + RY columns, circular CX block", "2nL", 2, 0, 2, 0, fig4_template});
    add({"fig4", "RX + RY columns, circular CX block (7-qubit experiment circuit)", "2nL", 2, 0,
         2, 0, fig4_template});

    add({"1", "RX + RZ columns, no entanglement", "2nL", 1, 0, 2, 0, std::nullopt});
    add({"2", "RX + RZ columns, descending CX chain", "2nL", 2, 0, 2, 0, std::nullopt});
    add({"3", "RX + RZ columns, descending CRZ chain", "(3n-1)L", 2, 0, 3, -1, std::nullopt});
    add({"4", "RX + RZ columns, descending CRX chain", "(3n-1)L", 2, 0, 3, -1, std::nullopt});
    add({"5", "RX + RZ columns, all-to-all CRZ, RX + RZ columns", "(n^2+3n)L", 2, 1, 3, 0,
         std::nullopt});
    add({"6", "RX + RZ columns, all-to-all CRX, RX + RZ columns", "(n^2+3n)L", 2, 1, 3, 0,
         std::nullopt});
    add({"7", "RX + RZ columns, paired CRZ, RX + RZ columns, offset CRZ", "(5n-1)L", 2, 0, 5, -1,
         std::nullopt});
    add({"8", "RX + RZ columns, paired CRX, RX + RZ columns, offset CRX", "(5n-1)L", 2, 0, 5, -1,
         std::nullopt});
    add({"9", "H column, CZ chain, RX column", "nL", 2, 0, 1, 0, std::nullopt});
    add({"10", "RY column, circular CZ block, RY column", "2nL", 2, 0, 2, 0, std::nullopt});
    add({"11", "RY + RZ columns, paired CX, inner rotations, offset CX", "(4n-4)L", 2, 0, 4, -4,
         std::nullopt});
    add({"12", "RY + RZ columns, paired CZ, inner rotations, offset CX", "(4n-4)L", 2, 0, 4, -4,
         std::nullopt});
    add({"13", "RY column + circular CRZ blocks (two halves)", "4nL", 2, 0, 4, 0, std::nullopt});
    add({"14", "RY column + circular CRX blocks (two halves)", "4nL", 2, 0, 4, 0, std::nullopt});
    add({"15", "RY column + circular CX blocks (two halves)", "2nL", 2, 0, 2, 0, std::nullopt});
    add({"16", "RX + RZ columns, paired CRZ, offset CRZ", "(3n-1)L", 2, 0, 3, -1, std::nullopt});
    add({"17", "RX + RZ columns, paired CRX, offset CRX", "(3n-1)L", 2, 0, 3, -1, std::nullopt});
    add({"18", "RX + RZ columns, circular CRZ block", "3nL", 2, 0, 3, 0, std::nullopt});
    add({"19", "RX + RZ columns, circular CRX block", "3nL", 2, 0, 3, 0, std::nullopt});

    // Template family: R1/R2 rotation columns + entangling block per layer.
    struct Row {
        const char* id;
        RotationAxis r1, r2;
        EntanglerGate ent;
        EntanglementLayout layout;
    };
    const Row rows[] = {
        {"20", RotationAxis::Z, RotationAxis::Y, EntanglerGate::CX, EntanglementLayout::Linear},
        {"21", RotationAxis::Z, RotationAxis::Y, EntanglerGate::CY, EntanglementLayout::Linear},
        {"22", RotationAxis::Z, RotationAxis::Y, EntanglerGate::CZ, EntanglementLayout::Linear},
        {"23", RotationAxis::Z, RotationAxis::X, EntanglerGate::CX, EntanglementLayout::Linear},
        {"24", RotationAxis::Z, RotationAxis::X, EntanglerGate::CY, EntanglementLayout::Linear},
        {"25", RotationAxis::Z, RotationAxis::X, EntanglerGate::CZ, EntanglementLayout::Linear},
        {"26", RotationAxis::X, RotationAxis::Y, EntanglerGate::CX, EntanglementLayout::Linear},
        {"27", RotationAxis::X, RotationAxis::Y, EntanglerGate::CY, EntanglementLayout::Linear},
        {"28", RotationAxis::X, RotationAxis::Y, EntanglerGate::CZ, EntanglementLayout::Linear},
        {"29", RotationAxis::Z, RotationAxis::Y, EntanglerGate::CX, EntanglementLayout::Circular},
        {"30", RotationAxis::Z, RotationAxis::Y, EntanglerGate::CY, EntanglementLayout::Circular},
        {"31", RotationAxis::Z, RotationAxis::Y, EntanglerGate::CZ, EntanglementLayout::Circular},
        {"32", RotationAxis::Z, RotationAxis::X, EntanglerGate::CX, EntanglementLayout::Circular},
        {"33", RotationAxis::Z, RotationAxis::X, EntanglerGate::CY, EntanglementLayout::Circular},
        {"34", RotationAxis::Z, RotationAxis::X, EntanglerGate::CZ, EntanglementLayout::Circular},
        {"35", RotationAxis::X, RotationAxis::Y, EntanglerGate::CX, EntanglementLayout::Circular},
        {"36", RotationAxis::X, RotationAxis::Y, EntanglerGate::CY, EntanglementLayout::Circular},
        {"37", RotationAxis::X, RotationAxis::Y, EntanglerGate::CZ, EntanglementLayout::Circular},
    };
    for (const Row& r : rows) {
        CatalogEntry e;
        e.id = r.id;
        e.family = "template " + rotation_name(r.r1) + "/" + rotation_name(r.r2) + "/" +
                   entangler_name(r.ent) + "/" + layout_name(r.layout);
        e.param_formula = "2nL";
        e.min_qubits = 2;
        e.c1 = 2;
        e.tmpl = TemplateSpec{r.r1, r.r2, r.ent, r.layout};
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

std::optional<CatalogEntry> catalog_lookup(const std::string& id) {
    for (const CatalogEntry& e : catalog())
        if (e.id == id) return e;
    return std::nullopt;
}

AnsatzSpec make_spec(const std::string& id, int n_qubits, int layers) {
    const auto entry = catalog_lookup(id);
    if (!entry) throw std::invalid_argument("make_spec: unknown ansatz id '" + id + "'");
    if (n_qubits < entry->min_qubits)
        throw std::invalid_argument("make_spec: ansatz '" + id + "' needs at least " +
                                    std::to_string(entry->min_qubits) + " qubits");
    if (layers < 1) throw std::invalid_argument("make_spec: layers must be >= 1");
    return AnsatzSpec{id, n_qubits, layers, entry->tmpl};
}

int param_count(const AnsatzSpec& spec) {
    const auto entry = catalog_lookup(spec.id);
    if (!entry) throw std::invalid_argument("param_count: unknown ansatz id '" + spec.id + "'");
    const int n = spec.n_qubits;
    return (entry->c2 * n * n + entry->c1 * n + entry->c0) * spec.layers;
}

CircuitProgram build_ansatz(const AnsatzSpec& spec) {
    const auto entry = catalog_lookup(spec.id);
    if (!entry) throw std::invalid_argument("build_ansatz: unknown ansatz id '" + spec.id + "'");
    if (spec.n_qubits < entry->min_qubits)
        throw std::invalid_argument("build_ansatz: ansatz '" + spec.id + "' needs at least " +
                                    std::to_string(entry->min_qubits) + " qubits");
    if (spec.layers < 1) throw std::invalid_argument("build_ansatz: layers must be >= 1");

    CircuitBuilder b(spec.n_qubits);
    for (int layer = 0; layer < spec.layers; ++layer) {
        if (entry->tmpl) {
            build_template_layer(b, *entry->tmpl);
        } else if (spec.id == "A") {
            build_a_layer(b);
        } else if (spec.id == "B") {
            build_b_layer(b);
        } else {
            build_numbered_layer(b, std::stoi(spec.id));
        }
    }
    return b.finish();
}

std::string rotation_name(RotationAxis axis) {
    switch (axis) {
        case RotationAxis::X: return "Rx";
        case RotationAxis::Y: return "Ry";
        case RotationAxis::Z: return "Rz";
    }
    return "?";
}

std::string entangler_name(EntanglerGate gate) {
    switch (gate) {
        case EntanglerGate::CX: return "Cx";
        case EntanglerGate::CY: return "Cy";
        case EntanglerGate::CZ: return "Cz";
    }
    return "?";
}

std::string layout_name(EntanglementLayout layout) {
    return layout == EntanglementLayout::Linear ? "linear" : "circular";
}

}  // namespace vqasc
