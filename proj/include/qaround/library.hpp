// Copyright 2026 The qaround Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file library.hpp
/// Multi-qubit library gates. Each entry is written over local qubits
/// q0..q{k-1}; applications substitute the actual targets.

#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qaround/errors.hpp"
#include "qaround/gate_class.hpp"
#include "qaround/ir.hpp"
#include "qaround/linalg.hpp"

namespace qaround {

struct GateLibraryEntry {
    std::string id;
    std::size_t qubits = 0;
    /// Leading local qubits whose basis value the gate never changes.
    std::size_t control_arity = 0;
    ir::Block exact;
    std::optional<ir::Block> approx;
    GateClass gate_class = GateClass::General;
    /// Matrix the exact expansion must reproduce.
    UnitaryMatrix semantic;
    /// D_p with unitary(approx) == D_p * unitary(exact).
    std::optional<DiagonalSpec> approx_defect;
};

class GateLibrary {
public:
    void add(GateLibraryEntry entry) {
        if (entry.semantic.dim() != (std::size_t{1} << entry.qubits)) {
            throw RegistrationError("library gate " + entry.id + ": semantic matrix has wrong size");
        }
        if (entry.approx.has_value() != entry.approx_defect.has_value()) {
            throw RegistrationError("library gate " + entry.id + ": approx and defect go together");
        }
        auto id = entry.id;
        entries_.insert_or_assign(std::move(id), std::move(entry));
    }

    [[nodiscard]] const GateLibraryEntry* find(const std::string& id) const {
        auto it = entries_.find(id);
        return it == entries_.end() ? nullptr : &it->second;
    }

    [[nodiscard]] const GateLibraryEntry& at(const std::string& id) const {
        if (const auto* e = find(id)) {
            return *e;
        }
        throw UnknownGateError("unknown library gate '" + id + "'");
    }

    [[nodiscard]] const std::map<std::string, GateLibraryEntry>& entries() const { return entries_; }

    /// Matrix denoted by a library application (variant and dagger honored).
    [[nodiscard]] UnitaryMatrix matrix_of(const ir::GateKind& g) const {
        const auto& e = at(g.library_id());
        UnitaryMatrix m = e.semantic;
        if (g.variant() == ir::LibraryVariant::Approx) {
            if (!e.approx_defect) {
                throw DecompositionUnavailableError("library gate " + e.id + " has no approximate variant");
            }
            m = e.approx_defect->to_matrix() * m;
        }
        return g.dagger() ? m.adjoint() : m;
    }

    /// Gate sequence of a library application over its actual targets.
    [[nodiscard]] ir::Block expand(const ir::Apply& app) const {
        const auto& e = at(app.gate.library_id());
        if (app.targets.size() != e.qubits) {
            throw Error("library gate " + e.id + " expects " + std::to_string(e.qubits) + " qubits");
        }
        const ir::Block* body = &e.exact;
        if (app.gate.variant() == ir::LibraryVariant::Approx) {
            if (!e.approx) {
                throw DecompositionUnavailableError("library gate " + e.id + " has no approximate variant");
            }
            body = &*e.approx;
        }
        auto mapped = ir::map_qubits(*body, [&](ir::QubitId q) { return app.targets.at(q.index); });
        return app.gate.dagger() ? ir::adjoint(mapped) : mapped;
    }

private:
    std::map<std::string, GateLibraryEntry> entries_;
};

namespace library {

inline constexpr const char* kToffoli = "toffoli";

/// Standard 6-CX Toffoli: H, T/T^dag ladder, H, and the control-pair fixup.
inline ir::Block toffoli_exact_body() {
    using namespace ir;
    const auto c0 = QubitId::main(0), c1 = QubitId::main(1), t = QubitId::main(2);
    const double q = std::numbers::pi / 4;
    return {h(t),       cx(c1, t),   phase(-q, t), cx(c0, t), phase(q, t),   cx(c1, t),
            phase(-q, t), cx(c0, t), phase(q, c1), phase(q, t), cx(c0, c1), h(t),
            phase(q, c0), phase(-q, c1), cx(c0, c1)};
}

/// Relative-phase Toffoli: RY(+-pi/4) ladder around three CX gates. Equals
/// the Toffoli up to a -1 on |010>.
inline ir::Block toffoli_relative_phase_body() {
    using namespace ir;
    const auto c0 = QubitId::main(0), c1 = QubitId::main(1), t = QubitId::main(2);
    const double q = std::numbers::pi / 4;
    return {ry(-q, t), cx(c0, t), ry(-q, t), cx(c1, t), ry(q, t), cx(c0, t), ry(q, t)};
}

/// CCX as a permutation matrix: identity except |110> <-> |111>.
inline UnitaryMatrix toffoli_matrix() {
    UnitaryMatrix m = UnitaryMatrix::identity(8);
    m(6, 6) = 0;
    m(7, 7) = 0;
    m(6, 7) = 1;
    m(7, 6) = 1;
    return m;
}

inline DiagonalSpec toffoli_defect() {
    DiagonalSpec d{std::vector<double>(8, 0.0)};
    d.phases[2] = std::numbers::pi;
    return d;
}

/// Raw entries, not yet checked against the oracle.
inline GateLibrary build_default() {
    GateLibrary lib;
    lib.add(GateLibraryEntry{
        .id = kToffoli,
        .qubits = 3,
        .control_arity = 2,
        .exact = toffoli_exact_body(),
        .approx = toffoli_relative_phase_body(),
        .gate_class = GateClass::Permutation,
        .semantic = toffoli_matrix(),
        .approx_defect = toffoli_defect(),
    });
    return lib;
}

}  // namespace library

/// Process-wide library data, built once on first use.
inline const GateLibrary& default_library() {
    static const GateLibrary lib = library::build_default();
    return lib;
}

}  // namespace qaround
