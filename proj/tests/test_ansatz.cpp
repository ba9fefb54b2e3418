#include <set>
#include <tuple>

#include <doctest.h>

#include "test_helpers.hpp"
#include "vqasc/ansatz.hpp"

using namespace vqasc;
using vqasc::testing::random_angles;

namespace {

int count_slots(const CircuitProgram& p) {
    std::set<int> slots;
    for (const GateOp& op : p.ops)
        if (op.param_slot) slots.insert(*op.param_slot);
    return static_cast<int>(slots.size());
}

}  // namespace

TEST_CASE("parameter counts match the closed-form formulas") {
    CHECK(param_count(make_spec("fig4", 7, 7)) == 98);
    CHECK(param_count(make_spec("35", 7, 7)) == 98);
    CHECK(param_count(make_spec("B", 4, 1)) == 8);
    CHECK(param_count(make_spec("20", 2, 1)) == 4);
    CHECK(param_count(make_spec("11", 4, 2)) == 24);  // (4n-4)L
    CHECK(param_count(make_spec("7", 4, 1)) == 19);   // (5n-1)L
    CHECK(param_count(make_spec("5", 4, 1)) == 28);   // (n^2+3n)L
    CHECK(param_count(make_spec("2", 4, 3)) == 24);   // 2nL
    CHECK(param_count(make_spec("9", 4, 2)) == 8);    // nL
}

TEST_CASE("built programs expose exactly the declared parameter slots") {
    for (const CatalogEntry& entry : catalog()) {
        for (int n = entry.min_qubits; n <= 5; ++n) {
            for (int layers = 1; layers <= 3; ++layers) {
                const AnsatzSpec spec = make_spec(entry.id, n, layers);
                const CircuitProgram p = build_ansatz(spec);
                CAPTURE(entry.id);
                CAPTURE(n);
                CAPTURE(layers);
                CHECK(p.n_params == param_count(spec));
                CHECK(count_slots(p) == p.n_params);
                CHECK_NOTHROW(p.validate());
            }
        }
    }
}

TEST_CASE("circuit #B uses only RY and CZ") {
    const CircuitProgram p = build_ansatz(make_spec("B", 4, 1));
    CHECK(p.n_params == 8);
    for (const GateOp& op : p.ops)
        CHECK((op.kind == GateKind::RY || op.kind == GateKind::CZ));
}

TEST_CASE("circuit #B statevectors stay real") {
    std::mt19937_64 eng = seeded_engine(31, 0);
    const CircuitProgram p = build_ansatz(make_spec("B", 4, 2));
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> theta = random_angles(eng, p.n_params);
        const Statevector psi = apply_circuit(p, theta);
        for (const cplx& a : psi.amplitudes) CHECK(std::abs(a.imag()) < 1e-12);
    }
}

TEST_CASE("template entanglement layouts") {
    // Linear: n-1 entanglers chaining i -> i+1.
    const CircuitProgram lin = build_ansatz(make_spec("23", 4, 1));
    std::vector<std::pair<int, int>> lin_pairs;
    for (const GateOp& op : lin.ops)
        if (op.kind == GateKind::CX) lin_pairs.push_back({op.targets[0], op.targets[1]});
    CHECK(lin_pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});

    // Circular: wrap-around entangler (last -> first) appended.
    const CircuitProgram circ = build_ansatz(make_spec("fig4", 4, 1));
    std::vector<std::pair<int, int>> circ_pairs;
    for (const GateOp& op : circ.ops)
        if (op.kind == GateKind::CX) circ_pairs.push_back({op.targets[0], op.targets[1]});
    CHECK(circ_pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});

    // Minimal template: 2 qubits, 4 params, one entangling gate.
    const CircuitProgram tiny = build_ansatz(make_spec("20", 2, 1));
    CHECK(tiny.n_params == 4);
    int entanglers = 0;
    for (const GateOp& op : tiny.ops)
        if (is_controlled(op.kind)) ++entanglers;
    CHECK(entanglers == 1);
}

TEST_CASE("catalog holds the template family and named circuits") {
    const char* required[] = {"A", "B", "C", "fig4"};
    for (const char* id : required) CHECK(catalog_lookup(id).has_value());
    for (int id = 1; id <= 37; ++id) CHECK(catalog_lookup(std::to_string(id)).has_value());
    CHECK_FALSE(catalog_lookup("99").has_value());
    CHECK_FALSE(catalog_lookup("").has_value());

    // Rows #20..#37 cover all 18 rotation/entangler/layout combinations.
    std::set<std::tuple<int, int, int, int>> combos;
    for (int id = 20; id <= 37; ++id) {
        const auto entry = catalog_lookup(std::to_string(id));
        REQUIRE(entry.has_value());
        REQUIRE(entry->tmpl.has_value());
        combos.insert({static_cast<int>(entry->tmpl->r1), static_cast<int>(entry->tmpl->r2),
                       static_cast<int>(entry->tmpl->ent), static_cast<int>(entry->tmpl->layout)});
    }
    CHECK(combos.size() == 18);

    // The experiment circuit is the (Rx, Ry, Cx, circular) template instance.
    const auto fig4 = catalog_lookup("fig4");
    REQUIRE(fig4->tmpl.has_value());
    CHECK(fig4->tmpl->r1 == RotationAxis::X);
    CHECK(fig4->tmpl->r2 == RotationAxis::Y);
    CHECK(fig4->tmpl->ent == EntanglerGate::CX);
    CHECK(fig4->tmpl->layout == EntanglementLayout::Circular);
}

TEST_CASE("build_ansatz is deterministic") {
    const CircuitProgram a = build_ansatz(make_spec("13", 5, 2));
    const CircuitProgram b = build_ansatz(make_spec("13", 5, 2));
    REQUIRE(a.ops.size() == b.ops.size());
    for (std::size_t i = 0; i < a.ops.size(); ++i) {
        CHECK(a.ops[i].kind == b.ops[i].kind);
        CHECK(a.ops[i].targets == b.ops[i].targets);
        CHECK(a.ops[i].param_slot == b.ops[i].param_slot);
    }
}

TEST_CASE("ansatz construction errors") {
    CHECK_THROWS_AS(make_spec("nope", 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_spec("fig4", 1, 1), std::invalid_argument);  // needs 2 qubits
    CHECK_THROWS_AS(make_spec("B", 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(param_count(AnsatzSpec{"nope", 4, 1, std::nullopt}), std::invalid_argument);
}
