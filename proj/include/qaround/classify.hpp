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

/// @file classify.hpp
/// Permutation / diagonal analysis of gates and instruction sequences.
///
/// Classification is sound but incomplete: a reported Permutation or Diagonal
/// always holds for the operator, while General may hide either. Structural
/// rules come first; sequences the rules cannot place are classified from
/// their matrix when they touch at most kMatrixFallbackQubits qubits.

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "qaround/gate_class.hpp"
#include "qaround/ir.hpp"
#include "qaround/library.hpp"
#include "qaround/numerics.hpp"

namespace qaround::classify {

inline constexpr std::size_t kMatrixFallbackQubits = 8;

inline GateClass classify_gate(const ir::GateKind& g, const GateLibrary& lib = default_library()) {
    if (!g.is_builtin()) {
        return lib.at(g.library_id()).gate_class;
    }
    switch (g.builtin_kind()) {
        case ir::Builtin::X:
        case ir::Builtin::Y: return GateClass::Permutation;
        case ir::Builtin::Z:
        case ir::Builtin::RZ:
        case ir::Builtin::P: return GateClass::Diagonal;
        case ir::Builtin::H:
        case ir::Builtin::RX:
        case ir::Builtin::RY: return GateClass::General;
    }
    return GateClass::General;
}

/// Class read off the matrix, or General above the fallback cap.
inline GateClass classify_matrix(const ir::Block& block, const GateLibrary& lib = default_library()) {
    if (ir::qubits_of(block).size() > kMatrixFallbackQubits) {
        return GateClass::General;
    }
    const auto [support, u] = numerics::local_unitary(block, lib);
    if (is_diagonal_matrix(u)) {
        return GateClass::Diagonal;
    }
    if (is_permutation_matrix(u)) {
        return GateClass::Permutation;
    }
    return GateClass::General;
}

inline GateClass classify_instrs(const ir::Block& block, const GateLibrary& lib = default_library());

inline GateClass classify_instr(const ir::Instruction& instr, const GateLibrary& lib = default_library()) {
    return std::visit(
        [&](const auto& n) -> GateClass {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ir::Apply>) {
                return classify_gate(n.gate, lib);
            } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                // C(U) is a permutation (diagonal) iff U is.
                return classify_instrs(n.body, lib);
            } else if constexpr (std::is_same_v<T, ir::Around>) {
                const auto a = classify_instrs(n.outer, lib);
                const auto b = classify_instrs(n.body, lib);
                if (permutes(a) && b == GateClass::Diagonal) {
                    // P^dag D P = sum_k e^{i theta_p(k)} |k><k|.
                    return GateClass::Diagonal;
                }
                if (permutes(a) && permutes(b)) {
                    return GateClass::Permutation;
                }
                return classify_matrix({instr}, lib);
            } else {
                return classify_instrs(n.body, lib);
            }
        },
        instr.node);
}

inline GateClass classify_instrs(const ir::Block& block, const GateLibrary& lib) {
    GateClass cls = GateClass::Diagonal;
    for (const auto& i : block) {
        cls = compose(cls, classify_instr(i, lib));
        if (cls == GateClass::General) {
            break;
        }
    }
    if (cls == GateClass::General) {
        cls = classify_matrix(block, lib);
    }
    return cls;
}

/// Location and cause of a use that breaks basis preservation.
struct Violation {
    std::string path;
    std::string reason;
};

/// Instruction paths read like "2/outer/0/body/1".
inline std::string child_path(const std::string& parent, std::size_t i) {
    return parent.empty() ? std::to_string(i) : parent + "/" + std::to_string(i);
}

/// Checks that `block` never changes the computational-basis value of any
/// qubit in `kept`: each such qubit is only a control, a target of a
/// Diagonal-classified gate, or a control position of a library gate.
/// Returns the first violation found.
inline std::optional<Violation> preserves_basis(const ir::Block& block, const ir::QubitSet& kept,
                                                const std::string& path = "",
                                                const GateLibrary& lib = default_library()) {
    for (std::size_t idx = 0; idx < block.size(); ++idx) {
        const auto& instr = block[idx];
        const std::string here = child_path(path, idx);
        const auto touched = ir::qubits_of(instr);
        const bool relevant =
            std::ranges::any_of(touched, [&](ir::QubitId q) { return kept.contains(q); });
        if (!relevant) {
            continue;
        }
        if (!instr.is<ir::Apply>() && classify_instr(instr, lib) == GateClass::Diagonal) {
            continue;
        }
        std::optional<Violation> v = std::visit(
            [&](const auto& n) -> std::optional<Violation> {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    if (classify_gate(n.gate, lib) == GateClass::Diagonal) {
                        return std::nullopt;
                    }
                    std::size_t fixed = 0;
                    if (!n.gate.is_builtin()) {
                        fixed = lib.at(n.gate.library_id()).control_arity;
                    }
                    for (std::size_t k = fixed; k < n.targets.size(); ++k) {
                        if (kept.contains(n.targets[k])) {
                            return Violation{here, "non-diagonal gate " + n.gate.name() + " acts on " +
                                                       ir::to_string(n.targets[k])};
                        }
                    }
                    return std::nullopt;
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    return preserves_basis(n.body, kept, here + "/body", lib);
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    if (auto w = preserves_basis(n.outer, kept, here + "/outer", lib)) {
                        return w;
                    }
                    return preserves_basis(n.body, kept, here + "/body", lib);
                } else {
                    return preserves_basis(n.body, kept, here + "/body", lib);
                }
            },
            instr.node);
        if (v) {
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace qaround::classify
