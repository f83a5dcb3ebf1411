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

/// @file ir.hpp
/// Circuit intermediate representation.
///
/// A circuit is a tree of instructions. Besides plain gate applications the
/// tree carries three structured nodes that the rewrite passes rely on:
///
///  - Controlled(c, S): S applied iff every qubit in c is |1>.
///  - Around(A, B): the conjugation A; B; adjoint(A). Only A and B are stored.
///  - AuxScope(a, S): S runs with clean scratch qubits a, which must be back
///    in |0...0> when the scope ends.
///
/// Qubit 0 is the most significant bit of basis-state labels everywhere in
/// the library. Values are immutable once built; passes return new circuits.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qaround/errors.hpp"

namespace qaround::ir {

enum class QubitKind : std::uint8_t { Main, Aux };

/// Logical qubit reference. Aux ids are either symbolic (unique per circuit,
/// bound by an AuxScope) or concrete slots once the circuit is resolved.
struct QubitId {
    std::uint32_t index = 0;
    QubitKind kind = QubitKind::Main;

    static constexpr QubitId main(std::uint32_t i) { return {i, QubitKind::Main}; }
    static constexpr QubitId aux(std::uint32_t i) { return {i, QubitKind::Aux}; }

    [[nodiscard]] constexpr bool is_aux() const { return kind == QubitKind::Aux; }

    auto operator<=>(const QubitId&) const = default;
};

inline std::string to_string(QubitId q) {
    return (q.is_aux() ? "a" : "q") + std::to_string(q.index);
}

using QubitSet = std::set<QubitId>;

enum class Builtin : std::uint8_t { X, Y, Z, H, RX, RY, RZ, P };

/// Which expansion of a library gate an application refers to.
enum class LibraryVariant : std::uint8_t { Exact, Approx };

inline constexpr bool takes_angle(Builtin b) {
    return b == Builtin::RX || b == Builtin::RY || b == Builtin::RZ || b == Builtin::P;
}

inline std::string builtin_name(Builtin b) {
    switch (b) {
        case Builtin::X: return "x";
        case Builtin::Y: return "y";
        case Builtin::Z: return "z";
        case Builtin::H: return "h";
        case Builtin::RX: return "rx";
        case Builtin::RY: return "ry";
        case Builtin::RZ: return "rz";
        case Builtin::P: return "p";
    }
    return "?";
}

inline std::optional<Builtin> builtin_from_name(const std::string& name) {
    for (auto b : {Builtin::X, Builtin::Y, Builtin::Z, Builtin::H, Builtin::RX, Builtin::RY,
                   Builtin::RZ, Builtin::P}) {
        if (builtin_name(b) == name) {
            return b;
        }
    }
    return std::nullopt;
}

/// A gate: one of the eight built-in single-qubit gates, or a reference to a
/// library gate (multi-qubit, defined by an instruction sequence).
class GateKind {
public:
    static GateKind builtin(Builtin b, std::optional<double> angle = std::nullopt) {
        if (takes_angle(b) != angle.has_value()) {
            throw Error(builtin_name(b) + (takes_angle(b) ? " requires one angle" : " takes no angle"));
        }
        GateKind g;
        g.builtin_ = b;
        if (angle) {
            g.params_.push_back(*angle);
        }
        return g;
    }

    static GateKind library(std::string id, LibraryVariant variant = LibraryVariant::Exact,
                            bool dagger = false) {
        GateKind g;
        g.library_id_ = std::move(id);
        g.variant_ = variant;
        g.dagger_ = dagger;
        return g;
    }

    [[nodiscard]] bool is_builtin() const { return builtin_.has_value(); }
    [[nodiscard]] Builtin builtin_kind() const { return *builtin_; }
    [[nodiscard]] const std::vector<double>& params() const { return params_; }
    [[nodiscard]] double angle() const { return params_.at(0); }
    [[nodiscard]] const std::string& library_id() const { return library_id_; }
    [[nodiscard]] LibraryVariant variant() const { return variant_; }
    [[nodiscard]] bool dagger() const { return dagger_; }

    /// Lower-case mnemonic used by the DSL and the stats counters.
    [[nodiscard]] std::string name() const {
        return is_builtin() ? builtin_name(*builtin_) : library_id_;
    }

    /// X, Y, Z, H are self-inverse; rotations negate their angle; library
    /// gates toggle the dagger flag.
    [[nodiscard]] GateKind inverse() const {
        GateKind g = *this;
        if (is_builtin()) {
            for (auto& p : g.params_) {
                p = -p;
            }
        } else {
            g.dagger_ = !g.dagger_;
        }
        return g;
    }

    bool operator==(const GateKind&) const = default;

private:
    GateKind() = default;

    std::optional<Builtin> builtin_;
    std::vector<double> params_;
    std::string library_id_;
    LibraryVariant variant_ = LibraryVariant::Exact;
    bool dagger_ = false;
};

struct Instruction;
using Block = std::vector<Instruction>;

struct Apply {
    GateKind gate;
    std::vector<QubitId> targets;
    bool operator==(const Apply&) const = default;
};

struct Controlled {
    std::vector<QubitId> controls;
    Block body;
    bool operator==(const Controlled&) const = default;
};

/// Denotes outer; body; adjoint(outer). The uncompute half is implicit.
struct Around {
    Block outer;
    Block body;
    bool operator==(const Around&) const = default;
};

struct AuxScope {
    std::vector<QubitId> aux;
    Block body;
    bool operator==(const AuxScope&) const = default;
};

struct Instruction {
    std::variant<Apply, Controlled, Around, AuxScope> node;

    template <typename T>
    [[nodiscard]] bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <typename T>
    [[nodiscard]] const T& as() const {
        return std::get<T>(node);
    }

    bool operator==(const Instruction&) const = default;
};

// ---------------------------------------------------------------------------
// Qubit bookkeeping
// ---------------------------------------------------------------------------

inline void collect_qubits(const Block& block, QubitSet& out);

inline void collect_qubits(const Instruction& instr, QubitSet& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Apply>) {
                out.insert(n.targets.begin(), n.targets.end());
            } else if constexpr (std::is_same_v<T, Controlled>) {
                out.insert(n.controls.begin(), n.controls.end());
                collect_qubits(n.body, out);
            } else if constexpr (std::is_same_v<T, Around>) {
                collect_qubits(n.outer, out);
                collect_qubits(n.body, out);
            } else {
                collect_qubits(n.body, out);
            }
        },
        instr.node);
}

inline void collect_qubits(const Block& block, QubitSet& out) {
    for (const auto& i : block) {
        collect_qubits(i, out);
    }
}

/// Every qubit an instruction mentions, as a target or as a control.
inline QubitSet qubits_of(const Instruction& instr) {
    QubitSet s;
    collect_qubits(instr, s);
    return s;
}

inline QubitSet qubits_of(const Block& block) {
    QubitSet s;
    collect_qubits(block, s);
    return s;
}

inline void collect_written(const Block& block, QubitSet& out) {
    for (const auto& instr : block) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Apply>) {
                    out.insert(n.targets.begin(), n.targets.end());
                } else if constexpr (std::is_same_v<T, Around>) {
                    collect_written(n.outer, out);
                    collect_written(n.body, out);
                } else {
                    collect_written(n.body, out);
                }
            },
            instr.node);
    }
}

/// Qubits that appear as gate targets somewhere in the block. Qubits that are
/// only ever controls are excluded.
inline QubitSet written_qubits(const Block& block) {
    QubitSet s;
    collect_written(block, s);
    return s;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

inline Instruction apply(GateKind gate, std::vector<QubitId> targets) {
    if (targets.empty()) {
        throw Error("gate " + gate.name() + " applied to no qubits");
    }
    if (gate.is_builtin() && targets.size() != 1) {
        throw Error("built-in gate " + gate.name() + " acts on exactly one qubit");
    }
    QubitSet distinct(targets.begin(), targets.end());
    if (distinct.size() != targets.size()) {
        throw OverlapError("gate " + gate.name() + " lists a qubit twice");
    }
    return Instruction{Apply{std::move(gate), std::move(targets)}};
}

inline Instruction x(QubitId q) { return apply(GateKind::builtin(Builtin::X), {q}); }
inline Instruction y(QubitId q) { return apply(GateKind::builtin(Builtin::Y), {q}); }
inline Instruction z(QubitId q) { return apply(GateKind::builtin(Builtin::Z), {q}); }
inline Instruction h(QubitId q) { return apply(GateKind::builtin(Builtin::H), {q}); }
inline Instruction rx(double t, QubitId q) { return apply(GateKind::builtin(Builtin::RX, t), {q}); }
inline Instruction ry(double t, QubitId q) { return apply(GateKind::builtin(Builtin::RY, t), {q}); }
inline Instruction rz(double t, QubitId q) { return apply(GateKind::builtin(Builtin::RZ, t), {q}); }
inline Instruction phase(double t, QubitId q) { return apply(GateKind::builtin(Builtin::P, t), {q}); }

/// Controlled(controls, body). Nested Controlled nodes are allowed and merge
/// their control sets semantically.
inline Instruction controlled(std::vector<QubitId> controls, Block body) {
    if (controls.empty()) {
        throw Error("controlled block needs at least one control");
    }
    QubitSet cs(controls.begin(), controls.end());
    if (cs.size() != controls.size()) {
        throw OverlapError("control list repeats a qubit");
    }
    for (const auto& q : written_qubits(body)) {
        if (cs.contains(q)) {
            throw OverlapError("control qubit " + to_string(q) + " is also acted on inside the block");
        }
    }
    return Instruction{Controlled{std::move(controls), std::move(body)}};
}

inline Instruction cx(QubitId c, QubitId t) { return controlled({c}, {x(t)}); }
inline Instruction ccx(QubitId c0, QubitId c1, QubitId t) { return controlled({c0, c1}, {x(t)}); }

inline Instruction around(Block outer, Block body) {
    return Instruction{Around{std::move(outer), std::move(body)}};
}

inline Instruction aux_scope(std::vector<QubitId> aux, Block body) {
    for (const auto& q : aux) {
        if (!q.is_aux()) {
            throw QubitError("aux scope declares non-aux qubit " + to_string(q));
        }
    }
    QubitSet distinct(aux.begin(), aux.end());
    if (distinct.size() != aux.size()) {
        throw OverlapError("aux scope declares a qubit twice");
    }
    return Instruction{AuxScope{std::move(aux), std::move(body)}};
}

inline Block adjoint(const Block& block);

inline Instruction adjoint(const Instruction& instr) {
    return std::visit(
        [](const auto& n) -> Instruction {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Apply>) {
                return Instruction{Apply{n.gate.inverse(), n.targets}};
            } else if constexpr (std::is_same_v<T, Controlled>) {
                return Instruction{Controlled{n.controls, adjoint(n.body)}};
            } else if constexpr (std::is_same_v<T, Around>) {
                // (A^dag B A)^dag = A^dag B^dag A: still a conjugation by A.
                return Instruction{Around{n.outer, adjoint(n.body)}};
            } else {
                return Instruction{AuxScope{n.aux, adjoint(n.body)}};
            }
        },
        instr.node);
}

/// Reversed sequence with every gate inverted.
inline Block adjoint(const Block& block) {
    Block out;
    out.reserve(block.size());
    for (auto it = block.rbegin(); it != block.rend(); ++it) {
        out.push_back(adjoint(*it));
    }
    return out;
}

/// Rewrites every qubit reference (targets, controls, aux declarations).
template <typename F>
Block map_qubits(const Block& block, const F& f);

template <typename F>
Instruction map_qubits(const Instruction& instr, const F& f) {
    auto map_list = [&](const std::vector<QubitId>& qs) {
        std::vector<QubitId> out;
        out.reserve(qs.size());
        for (auto q : qs) {
            out.push_back(f(q));
        }
        return out;
    };
    return std::visit(
        [&](const auto& n) -> Instruction {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Apply>) {
                return Instruction{Apply{n.gate, map_list(n.targets)}};
            } else if constexpr (std::is_same_v<T, Controlled>) {
                return Instruction{Controlled{map_list(n.controls), map_qubits(n.body, f)}};
            } else if constexpr (std::is_same_v<T, Around>) {
                return Instruction{Around{map_qubits(n.outer, f), map_qubits(n.body, f)}};
            } else {
                return Instruction{AuxScope{map_list(n.aux), map_qubits(n.body, f)}};
            }
        },
        instr.node);
}

template <typename F>
Block map_qubits(const Block& block, const F& f) {
    Block out;
    out.reserve(block.size());
    for (const auto& i : block) {
        out.push_back(map_qubits(i, f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Circuit
// ---------------------------------------------------------------------------

/// How aux ids in a circuit are to be read.
///  Symbolic: every aux id is bound by exactly one AuxScope; ids are unique.
///  Resolved: aux ids are slots in an aux register of size num_aux, placed
///            after the main qubits. Slots may be reused by disjoint scopes.
enum class AuxLayout : std::uint8_t { Symbolic, Resolved };

struct Circuit {
    std::string name;
    std::size_t num_main = 0;
    std::size_t num_aux = 0;
    AuxLayout layout = AuxLayout::Symbolic;
    Block instructions;

    [[nodiscard]] std::size_t total_qubits() const { return num_main + num_aux; }

    bool operator==(const Circuit&) const = default;
};

/// Register position of a qubit: main qubits first, then the aux region.
inline std::size_t wire_of(QubitId q, std::size_t num_main) {
    return q.is_aux() ? num_main + q.index : q.index;
}

namespace detail {

inline void validate_block(const Circuit& c, const Block& block, QubitSet& in_scope,
                           QubitSet& declared);

inline void validate_qubit(const Circuit& c, QubitId q, const QubitSet& in_scope) {
    if (!q.is_aux()) {
        if (q.index >= c.num_main) {
            throw QubitError("qubit " + to_string(q) + " is not declared (circuit has " +
                             std::to_string(c.num_main) + " qubits)");
        }
        return;
    }
    if (c.layout == AuxLayout::Resolved) {
        if (q.index >= c.num_aux) {
            throw QubitError("aux slot " + to_string(q) + " exceeds aux register of size " +
                             std::to_string(c.num_aux));
        }
        return;
    }
    if (!in_scope.contains(q)) {
        throw QubitError("aux qubit " + to_string(q) + " referenced outside its scope");
    }
}

inline void validate_block(const Circuit& c, const Block& block, QubitSet& in_scope,
                           QubitSet& declared) {
    for (const auto& instr : block) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Apply>) {
                    for (auto q : n.targets) {
                        validate_qubit(c, q, in_scope);
                    }
                } else if constexpr (std::is_same_v<T, Controlled>) {
                    QubitSet cs(n.controls.begin(), n.controls.end());
                    for (auto q : n.controls) {
                        validate_qubit(c, q, in_scope);
                    }
                    for (auto q : written_qubits(n.body)) {
                        if (cs.contains(q)) {
                            throw OverlapError("control qubit " + to_string(q) +
                                               " is also acted on inside the block");
                        }
                    }
                    validate_block(c, n.body, in_scope, declared);
                } else if constexpr (std::is_same_v<T, Around>) {
                    validate_block(c, n.outer, in_scope, declared);
                    validate_block(c, n.body, in_scope, declared);
                } else {
                    for (auto q : n.aux) {
                        if (!q.is_aux()) {
                            throw QubitError("aux scope declares non-aux qubit " + to_string(q));
                        }
                        if (c.layout == AuxLayout::Symbolic) {
                            if (!declared.insert(q).second) {
                                throw QubitError("aux id " + to_string(q) + " declared twice");
                            }
                            if (q.index >= c.num_aux) {
                                throw QubitError("aux id " + to_string(q) + " exceeds num_aux");
                            }
                        } else if (in_scope.contains(q)) {
                            throw QubitError("aux slot " + to_string(q) + " is already live");
                        }
                    }
                    for (auto q : n.aux) {
                        in_scope.insert(q);
                    }
                    validate_block(c, n.body, in_scope, declared);
                    for (auto q : n.aux) {
                        in_scope.erase(q);
                    }
                }
            },
            instr.node);
    }
}

}  // namespace detail

/// Checks every qubit-reference invariant of the IR; throws QubitError or
/// OverlapError on the first violation.
inline void validate(const Circuit& c) {
    QubitSet in_scope;
    QubitSet declared;
    detail::validate_block(c, c.instructions, in_scope, declared);
}

/// True if the circuit mentions any aux qubit.
inline bool uses_aux(const Block& block) {
    return std::ranges::any_of(qubits_of(block), [](QubitId q) { return q.is_aux(); });
}

}  // namespace qaround::ir
