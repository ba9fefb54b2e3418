#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vqasc/simcore.hpp"

namespace vqasc {

enum class RotationAxis { X, Y, Z };
enum class EntanglerGate { CX, CY, CZ };
enum class EntanglementLayout { Linear, Circular };

// One layer of the template family: R1 column, R2 column, entangling block.
// Linear chains the entangler (i -> i+1) for i = 0..n-2; Circular appends the
// wrap-around gate (n-1 -> 0).
struct TemplateSpec {
    RotationAxis r1;
    RotationAxis r2;
    EntanglerGate ent;
    EntanglementLayout layout;
};

struct AnsatzSpec {
    std::string id;
    int n_qubits = 0;
    int layers = 1;
    std::optional<TemplateSpec> tmpl;  // set for the template-family ids
};

struct CatalogEntry {
    std::string id;
    std::string family;         // one-line structural description
    std::string param_formula;  // e.g. "2nL", "(4n-4)L"
    int min_qubits = 1;
    // Parameter count = (c2*n^2 + c1*n + c0) * L.
    int c2 = 0, c1 = 0, c0 = 0;
    std::optional<TemplateSpec> tmpl;
};

const std::vector<CatalogEntry>& catalog();
std::optional<CatalogEntry> catalog_lookup(const std::string& id);

// Throws std::invalid_argument for an unknown id or too few qubits.
AnsatzSpec make_spec(const std::string& id, int n_qubits, int layers);

// Closed-form parameter count for the spec's id.
int param_count(const AnsatzSpec& spec);

// Compiles the catalog circuit to a gate list; deterministic in the spec.
CircuitProgram build_ansatz(const AnsatzSpec& spec);

std::string rotation_name(RotationAxis axis);
std::string entangler_name(EntanglerGate gate);
std::string layout_name(EntanglementLayout layout);

}  // namespace vqasc
