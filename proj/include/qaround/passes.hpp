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

/// @file passes.hpp
/// Rewrite passes over the IR. Every pass is a pure Circuit -> Circuit
/// function returning a PassReport alongside the result.

#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qaround/ancilla.hpp"
#include "qaround/classify.hpp"
#include "qaround/errors.hpp"
#include "qaround/ir.hpp"
#include "qaround/library.hpp"
#include "qaround/linalg.hpp"
#include "qaround/numerics.hpp"

namespace qaround::passes {

struct PassReport {
    std::string pass_name;
    std::size_t sites_examined = 0;
    std::size_t sites_rewritten = 0;
    std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Single-control expansions and library registration
// ---------------------------------------------------------------------------

/// C(g) on (c, t) as a sequence of single-qubit gates and CX.
inline ir::Block controlled_builtin(const ir::GateKind& g, ir::QubitId c, ir::QubitId t) {
    using namespace ir;
    constexpr double h = std::numbers::pi / 2;
    constexpr double q = std::numbers::pi / 4;
    const double th = g.params().empty() ? 0.0 : g.angle();
    switch (g.builtin_kind()) {
        case Builtin::X: return {cx(c, t)};
        case Builtin::Y: return {phase(-h, t), cx(c, t), phase(h, t)};
        case Builtin::Z: return {ir::h(t), cx(c, t), ir::h(t)};
        case Builtin::H: return {ry(q, t), cx(c, t), ry(-q, t)};
        case Builtin::RZ: return {rz(th / 2, t), cx(c, t), rz(-th / 2, t), cx(c, t)};
        case Builtin::RY: return {ry(th / 2, t), cx(c, t), ry(-th / 2, t), cx(c, t)};
        case Builtin::RX:
            return {ir::h(t), rz(th / 2, t), cx(c, t), rz(-th / 2, t), cx(c, t), ir::h(t)};
        case Builtin::P: return {phase(th / 2, c), phase(th / 2, t), cx(c, t), phase(-th / 2, t), cx(c, t)};
    }
    throw DecompositionUnavailableError("no controlled expansion for " + g.name());
}

namespace detail {

inline ir::Circuit local_circuit(std::size_t n, ir::Block body) {
    return ir::Circuit{.name = "check", .num_main = n, .num_aux = 0, .instructions = std::move(body)};
}

}  // namespace detail

/// Builds the default library and checks every entry against the matrix
/// oracle: exact expansion == semantic matrix, approx == defect * semantic,
/// the registered class holds, and every single-control built-in expansion
/// matches the block-diagonal controlled matrix. Throws RegistrationError on
/// the first mismatch.
inline GateLibrary register_library() {
    GateLibrary lib = library::build_default();
    for (const auto& [id, e] : lib.entries()) {
        const auto exact = numerics::unitary(detail::local_circuit(e.qubits, e.exact), lib);
        if (!equivalent(exact, e.semantic, EquivalenceMode::Exact)) {
            throw RegistrationError("library gate " + id + ": exact expansion does not match its matrix");
        }
        const bool cls_ok = e.gate_class == GateClass::General ||
                            (e.gate_class == GateClass::Diagonal && is_diagonal_matrix(e.semantic)) ||
                            (e.gate_class == GateClass::Permutation && is_permutation_matrix(e.semantic));
        if (!cls_ok) {
            throw RegistrationError("library gate " + id + ": matrix is not " + to_string(e.gate_class));
        }
        if (e.approx) {
            const auto approx = numerics::unitary(detail::local_circuit(e.qubits, *e.approx), lib);
            if (!equivalent(approx, e.approx_defect->to_matrix() * e.semantic, EquivalenceMode::Exact)) {
                throw RegistrationError("library gate " + id + ": approx expansion is not defect * exact");
            }
        }
    }
    const auto c = ir::QubitId::main(0), t = ir::QubitId::main(1);
    for (auto b : {ir::Builtin::X, ir::Builtin::Y, ir::Builtin::Z, ir::Builtin::H, ir::Builtin::RX, ir::Builtin::RY,
                   ir::Builtin::RZ, ir::Builtin::P}) {
        const auto g = ir::takes_angle(b) ? ir::GateKind::builtin(b, 0.8125) : ir::GateKind::builtin(b);
        const auto want = numerics::unitary(detail::local_circuit(2, {ir::controlled({c}, {ir::apply(g, {t})})}), lib);
        const auto got = numerics::unitary(detail::local_circuit(2, controlled_builtin(g, c, t)), lib);
        if (!equivalent(got, want, EquivalenceMode::Exact)) {
            throw RegistrationError("controlled expansion of " + g.name() + " is wrong");
        }
    }
    return lib;
}

inline const GateLibrary& verified_library() {
    static const GateLibrary lib = register_library();
    return lib;
}

// ---------------------------------------------------------------------------
// Control hoisting: C(A; B; A^dag) -> A; C(B); A^dag
// ---------------------------------------------------------------------------

namespace detail {

class Hoister {
public:
    explicit Hoister(PassReport& r) : r_(r) {}

    ir::Block block(const ir::Block& b) {
        ir::Block out;
        for (const auto& i : b) {
            auto part = instr(i);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }

private:
    ir::Block instr(const ir::Instruction& i) {
        return std::visit(
            [&](const auto& n) -> ir::Block {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    return {i};
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    ++r_.sites_examined;
                    bool changed = false;
                    auto out = under(n.controls, block(n.body), changed);
                    if (changed) {
                        ++r_.sites_rewritten;
                    }
                    return out;
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    return {ir::Instruction{ir::Around{block(n.outer), block(n.body)}}};
                } else {
                    return {ir::Instruction{ir::AuxScope{n.aux, block(n.body)}}};
                }
            },
            i.node);
    }

    /// Places `controls` on an already-hoisted body, moving them inside every
    /// conjugation and aux scope found at the top level.
    ir::Block under(const std::vector<ir::QubitId>& controls, const ir::Block& body, bool& changed) {
        ir::Block out;
        ir::Block run;
        auto flush = [&] {
            if (!run.empty()) {
                out.push_back(ir::Instruction{ir::Controlled{controls, std::move(run)}});
                run.clear();
            }
        };
        for (const auto& i : body) {
            if (const auto* a = std::get_if<ir::Around>(&i.node)) {
                flush();
                changed = true;
                out.push_back(ir::Instruction{ir::Around{a->outer, under(controls, a->body, changed)}});
            } else if (const auto* s = std::get_if<ir::AuxScope>(&i.node)) {
                flush();
                changed = true;
                out.push_back(ir::Instruction{ir::AuxScope{s->aux, under(controls, s->body, changed)}});
            } else {
                run.push_back(i);
            }
        }
        flush();
        return out;
    }

    PassReport& r_;
};

}  // namespace detail

/// Moves controls off every conjugator: Controlled(c, [Around(A, B)])
/// becomes Around(A, [Controlled(c, B)]). Controls are likewise pushed into
/// aux scopes, whose bodies run unchanged when the controls are off.
inline std::pair<ir::Circuit, PassReport> hoist_controls_from_around(const ir::Circuit& c) {
    PassReport r;
    r.pass_name = "hoist_controls";
    detail::Hoister h(r);
    ir::Circuit out = c;
    out.instructions = h.block(c.instructions);
    return {std::move(out), std::move(r)};
}

// ---------------------------------------------------------------------------
// Control distribution: C(U_k ... U_0) -> C(U_k) ... C(U_0)
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<ir::QubitId> merge_controls(const std::vector<ir::QubitId>& a, const std::vector<ir::QubitId>& b) {
    std::vector<ir::QubitId> out = a;
    for (auto q : b) {
        if (std::ranges::find(out, q) == out.end()) {
            out.push_back(q);
        }
    }
    return out;
}

class Distributor {
public:
    explicit Distributor(PassReport& r) : r_(r) {}

    ir::Block block(const ir::Block& b) {
        ir::Block out;
        for (const auto& i : b) {
            auto part = instr(i);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }

private:
    ir::Block instr(const ir::Instruction& i) {
        return std::visit(
            [&](const auto& n) -> ir::Block {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    return {i};
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    ++r_.sites_examined;
                    auto out = spread(n.controls, block(n.body));
                    if (!(out.size() == 1 && out[0] == i)) {
                        ++r_.sites_rewritten;
                    }
                    return out;
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    return {ir::Instruction{ir::Around{block(n.outer), block(n.body)}}};
                } else {
                    return {ir::Instruction{ir::AuxScope{n.aux, block(n.body)}}};
                }
            },
            i.node);
    }

    /// `body` is already distributed: each element is an Apply, a Controlled
    /// over a single Apply or Around, an Around, or an AuxScope.
    static ir::Block spread(const std::vector<ir::QubitId>& controls, const ir::Block& body) {
        ir::Block out;
        for (const auto& i : body) {
            if (const auto* c = std::get_if<ir::Controlled>(&i.node)) {
                out.push_back(ir::Instruction{ir::Controlled{merge_controls(controls, c->controls), c->body}});
            } else if (const auto* s = std::get_if<ir::AuxScope>(&i.node)) {
                out.push_back(ir::Instruction{ir::AuxScope{s->aux, spread(controls, s->body)}});
            } else {
                // Apply, or an Around left in place for the hoisting pass.
                out.push_back(ir::Instruction{ir::Controlled{controls, {i}}});
            }
        }
        return out;
    }

    PassReport& r_;
};

}  // namespace detail

/// Rewrites every Controlled node so that its body is a single instruction,
/// merging nested control sets. Controlled conjugations keep their Around
/// shape; hoisting is a separate pass and runs first in the pipeline.
inline std::pair<ir::Circuit, PassReport> distribute_controls(const ir::Circuit& c) {
    PassReport r;
    r.pass_name = "distribute_controls";
    detail::Distributor d(r);
    ir::Circuit out = c;
    out.instructions = d.block(c.instructions);
    return {std::move(out), std::move(r)};
}

// ---------------------------------------------------------------------------
// Approximate substitution inside permutation conjugators
// ---------------------------------------------------------------------------

namespace detail {

/// A library application with an approximate variant, or a doubly
/// controlled X written out as Controlled. Returns the approximate
/// replacement.
inline std::optional<ir::Instruction> approx_candidate(const ir::Instruction& i, const GateLibrary& lib) {
    if (const auto* a = std::get_if<ir::Apply>(&i.node)) {
        if (a->gate.is_builtin() || a->gate.variant() != ir::LibraryVariant::Exact) {
            return std::nullopt;
        }
        const auto* e = lib.find(a->gate.library_id());
        if (e == nullptr || !e->approx) {
            return std::nullopt;
        }
        return ir::Instruction{ir::Apply{
            ir::GateKind::library(e->id, ir::LibraryVariant::Approx, a->gate.dagger()), a->targets}};
    }
    if (const auto* c = std::get_if<ir::Controlled>(&i.node)) {
        if (c->controls.size() != 2 || c->body.size() != 1 || !c->body[0].is<ir::Apply>()) {
            return std::nullopt;
        }
        const auto& body = c->body[0].as<ir::Apply>();
        if (!body.gate.is_builtin() || body.gate.builtin_kind() != ir::Builtin::X) {
            return std::nullopt;
        }
        const auto* e = lib.find(library::kToffoli);
        if (e == nullptr || !e->approx) {
            return std::nullopt;
        }
        return ir::Instruction{
            ir::Apply{ir::GateKind::library(library::kToffoli, ir::LibraryVariant::Approx),
                      {c->controls[0], c->controls[1], body.targets[0]}}};
    }
    return std::nullopt;
}

class Substituter {
public:
    Substituter(PassReport& r, const GateLibrary& lib) : r_(r), lib_(lib) {}

    ir::Block block(const ir::Block& b, const std::string& path) {
        ir::Block out;
        out.reserve(b.size());
        for (std::size_t k = 0; k < b.size(); ++k) {
            out.push_back(instr(b[k], classify::child_path(path, k)));
        }
        return out;
    }

private:
    ir::Instruction instr(const ir::Instruction& i, const std::string& here) {
        if (approx_candidate(i, lib_)) {
            // Outside a conjugator the defect would be observable.
            ++r_.sites_examined;
            return i;
        }
        return std::visit(
            [&](const auto& n) -> ir::Instruction {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    return i;
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    return ir::Instruction{ir::Controlled{n.controls, block(n.body, here + "/body")}};
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    return site(n, here);
                } else {
                    return ir::Instruction{ir::AuxScope{n.aux, block(n.body, here + "/body")}};
                }
            },
            i.node);
    }

    ir::Instruction site(const ir::Around& a, const std::string& here) {
        auto body = block(a.body, here + "/body");
        ir::Block outer;
        std::vector<std::size_t> slots;
        for (std::size_t k = 0; k < a.outer.size(); ++k) {
            if (approx_candidate(a.outer[k], lib_)) {
                slots.push_back(k);
                outer.push_back(a.outer[k]);
            } else {
                outer.push_back(instr(a.outer[k], classify::child_path(here + "/outer", k)));
            }
        }
        if (slots.empty()) {
            return ir::Instruction{ir::Around{std::move(outer), std::move(body)}};
        }
        // Each candidate runs in the compute and in the uncompute half.
        r_.sites_examined += 2 * slots.size();
        const bool all_permute = std::ranges::all_of(
            outer, [&](const ir::Instruction& x) { return permutes(classify::classify_instr(x, lib_)); });
        if (!all_permute) {
            r_.notes.push_back(here + ": kept exact, conjugator is not a sequence of permutations");
            return ir::Instruction{ir::Around{std::move(outer), std::move(body)}};
        }
        if (auto v = classify::preserves_basis(body, ir::qubits_of(outer), here + "/body", lib_)) {
            r_.notes.push_back(here + ": kept exact, " + v->reason + " at " + v->path);
            return ir::Instruction{ir::Around{std::move(outer), std::move(body)}};
        }
        for (auto k : slots) {
            outer[k] = *approx_candidate(outer[k], lib_);
            r_.sites_rewritten += 2;
            r_.notes.push_back(classify::child_path(here + "/outer", k) + ": approximate " +
                               outer[k].as<ir::Apply>().gate.library_id());
        }
        return ir::Instruction{ir::Around{std::move(outer), std::move(body)}};
    }

    PassReport& r_;
    const GateLibrary& lib_;
};

}  // namespace detail

/// Swaps exact library expansions for their relative-phase variants inside
/// Around(A, B) conjugators where every element of A is a permutation and B
/// never changes the basis value of a qubit A acts on. The defect of the
/// compute half then cancels against the uncompute half, so the rewrite is
/// exact. Candidates elsewhere are counted and left alone.
inline std::pair<ir::Circuit, PassReport> substitute_approximate(const ir::Circuit& c,
                                                                 const GateLibrary& lib = verified_library()) {
    PassReport r;
    r.pass_name = "substitute_approximate";
    detail::Substituter s(r, lib);
    ir::Circuit out = c;
    out.instructions = s.block(c.instructions, "");
    return {std::move(out), std::move(r)};
}

// ---------------------------------------------------------------------------
// Flattening to single-qubit gates and CX
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint32_t next_aux_id(const ir::Circuit& c) {
    std::uint32_t next = static_cast<std::uint32_t>(c.num_aux);
    for (auto q : ir::qubits_of(c.instructions)) {
        if (q.is_aux()) {
            next = std::max(next, q.index + 1);
        }
    }
    return next;
}

class Flattener {
public:
    Flattener(const ir::Circuit& c, PassReport& r, const GateLibrary& lib)
        : resolved_(c.layout == ir::AuxLayout::Resolved),
          base_(resolved_ ? c.num_aux : 0),
          fresh_(next_aux_id(c)),
          r_(r),
          lib_(lib) {}

    void block(const ir::Block& b, const std::vector<ir::QubitId>& ctrls) {
        for (const auto& i : b) {
            instr(i, ctrls);
        }
    }

    ir::Block take() { return std::move(out_); }
    [[nodiscard]] std::size_t aux_used() const { return base_ + pool_.capacity(); }

private:
    ir::QubitId map(ir::QubitId q) const {
        if (!q.is_aux()) {
            return q;
        }
        if (auto it = env_.find(q); it != env_.end()) {
            return it->second;
        }
        if (resolved_) {
            return q;
        }
        throw QubitError("aux qubit " + ir::to_string(q) + " referenced outside its scope");
    }

    void emit(ir::Instruction i) {
        out_.push_back(ir::map_qubits(i, [&](ir::QubitId q) { return map(q); }));
    }

    static bool is_flat(const ir::Instruction& i) {
        if (i.is<ir::Apply>()) {
            return i.as<ir::Apply>().gate.is_builtin();
        }
        if (!i.is<ir::Controlled>()) {
            return false;
        }
        const auto& c = i.as<ir::Controlled>();
        if (c.controls.size() != 1 || c.body.size() != 1 || !c.body[0].is<ir::Apply>()) {
            return false;
        }
        const auto& g = c.body[0].as<ir::Apply>().gate;
        return g.is_builtin() && g.builtin_kind() == ir::Builtin::X;
    }

    void instr(const ir::Instruction& i, const std::vector<ir::QubitId>& ctrls) {
        ++r_.sites_examined;
        if (ctrls.empty() && is_flat(i)) {
            emit(i);
            return;
        }
        ++r_.sites_rewritten;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    gate(n, ctrls);
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    block(n.body, merge_controls(ctrls, n.controls));
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    block(n.outer, ctrls);
                    block(n.body, ctrls);
                    block(ir::adjoint(n.outer), ctrls);
                } else {
                    scope(n, ctrls);
                }
            },
            i.node);
    }

    void gate(const ir::Apply& a, const std::vector<ir::QubitId>& ctrls) {
        if (!a.gate.is_builtin()) {
            const auto* e = lib_.find(a.gate.library_id());
            if (e == nullptr) {
                throw DecompositionUnavailableError("no expansion registered for gate '" + a.gate.library_id() + "'");
            }
            if (e->id == library::kToffoli && a.gate.variant() == ir::LibraryVariant::Exact && !ctrls.empty()) {
                // A controlled Toffoli is a wider multi-controlled X.
                gate(ir::Apply{ir::GateKind::builtin(ir::Builtin::X), {a.targets[2]}},
                     merge_controls(ctrls, {a.targets[0], a.targets[1]}));
                return;
            }
            block(lib_.expand(a), ctrls);
            return;
        }
        const auto t = a.targets[0];
        const bool is_x = a.gate.builtin_kind() == ir::Builtin::X;
        if (ctrls.empty()) {
            emit(ir::Instruction{a});
        } else if (ctrls.size() == 1) {
            for (auto& g : controlled_builtin(a.gate, ctrls[0], t)) {
                emit(std::move(g));
            }
        } else if (ctrls.size() == 2 && is_x) {
            for (auto& g : lib_.expand(ir::Apply{ir::GateKind::library(library::kToffoli), {ctrls[0], ctrls[1], t}})) {
                emit(std::move(g));
            }
        } else if (is_x) {
            // V-chain step: fold the first two controls into one aux qubit.
            const auto aux = ir::QubitId::aux(fresh_++);
            std::vector<ir::QubitId> rest{aux};
            rest.insert(rest.end(), ctrls.begin() + 2, ctrls.end());
            instr(ir::aux_scope({aux}, {ir::around({ir::ccx(ctrls[0], ctrls[1], aux)},
                                                   {ir::controlled(rest, {ir::Instruction{a}})})}),
                  {});
        } else {
            // Compute the control conjunction into an aux, then control on it.
            const auto aux = ir::QubitId::aux(fresh_++);
            instr(ir::aux_scope({aux}, {ir::around({ir::controlled(ctrls, {ir::x(aux)})},
                                                   {ir::controlled({aux}, {ir::Instruction{a}})})}),
                  {});
        }
    }

    void scope(const ir::AuxScope& s, const std::vector<ir::QubitId>& ctrls) {
        const auto verdict = ancilla::check_aux_safety(s, lib_);
        if (resolved_ && s.aux.front().index < base_) {
            // Slots of the input register; generated scopes get fresh ones.
            if (!verdict.accepted()) {
                throw UnsafeReleaseError("aux qubits may still be entangled: " + verdict.violations.front().reason);
            }
            block(s.body, ctrls);
            return;
        }
        const auto slots = pool_.allocate_or_grow(s.aux.size());
        for (std::size_t k = 0; k < slots.size(); ++k) {
            env_[s.aux[k]] = ir::QubitId::aux(static_cast<std::uint32_t>(base_ + slots[k].index));
        }
        block(s.body, ctrls);
        for (auto q : s.aux) {
            env_.erase(q);
        }
        pool_.release(slots, verdict);
    }

    bool resolved_;
    std::size_t base_;
    std::uint32_t fresh_;
    PassReport& r_;
    const GateLibrary& lib_;
    ancilla::AuxPool pool_;
    std::map<ir::QubitId, ir::QubitId> env_;
    ir::Block out_;
};

}  // namespace detail

/// True if the circuit holds only built-in single-qubit gates and CX.
inline bool is_flat(const ir::Circuit& c) {
    return std::ranges::all_of(c.instructions, [](const ir::Instruction& i) {
        if (i.is<ir::Apply>()) {
            return i.as<ir::Apply>().gate.is_builtin();
        }
        if (!i.is<ir::Controlled>()) {
            return false;
        }
        const auto& c = i.as<ir::Controlled>();
        return c.controls.size() == 1 && c.body.size() == 1 && c.body[0].is<ir::Apply>() &&
               c.body[0].as<ir::Apply>().gate.is_builtin() &&
               c.body[0].as<ir::Apply>().gate.builtin_kind() == ir::Builtin::X;
    });
}

/// Lowers everything to built-in single-qubit gates and CX. Aux scopes are
/// resolved to concrete slots through the pool and released only with an
/// accepting safety verdict. Multi-controlled X uses the V-chain; other
/// gates with two or more controls compute their control conjunction into
/// an aux qubit first.
inline std::pair<ir::Circuit, PassReport> flatten(const ir::Circuit& c, const GateLibrary& lib = verified_library()) {
    PassReport r;
    r.pass_name = "flatten";
    detail::Flattener f(c, r, lib);
    f.block(c.instructions, {});
    ir::Circuit out = c;
    out.instructions = f.take();
    out.layout = ir::AuxLayout::Resolved;
    out.num_aux = f.aux_used();
    return {std::move(out), std::move(r)};
}

// ---------------------------------------------------------------------------
// Pipeline and verification
// ---------------------------------------------------------------------------

enum class OptLevel { None, Ctrl, Approx, All };

inline std::string to_string(OptLevel l) {
    switch (l) {
        case OptLevel::None: return "none";
        case OptLevel::Ctrl: return "ctrl";
        case OptLevel::Approx: return "approx";
        case OptLevel::All: return "all";
    }
    return "?";
}

inline std::optional<OptLevel> opt_level_from_name(const std::string& s) {
    for (auto l : {OptLevel::None, OptLevel::Ctrl, OptLevel::Approx, OptLevel::All}) {
        if (to_string(l) == s) {
            return l;
        }
    }
    return std::nullopt;
}

inline std::pair<ir::Circuit, std::vector<PassReport>> run_pipeline(const ir::Circuit& c, OptLevel level,
                                                                    const GateLibrary& lib = verified_library()) {
    std::vector<PassReport> reports;
    ir::Circuit cur = c;
    auto step = [&](std::pair<ir::Circuit, PassReport> res) {
        cur = std::move(res.first);
        reports.push_back(std::move(res.second));
    };
    if (level == OptLevel::Ctrl || level == OptLevel::All) {
        step(hoist_controls_from_around(cur));
        step(distribute_controls(cur));
    }
    if (level == OptLevel::Approx || level == OptLevel::All) {
        step(substitute_approximate(cur, lib));
    }
    step(flatten(cur, lib));
    return {std::move(cur), std::move(reports)};
}

struct VerifyResult {
    bool equivalent = false;
    std::string detail;
};

/// Oracle comparison of a circuit before and after rewriting. Without aux
/// qubits the full unitaries must match exactly. With aux qubits, `after`
/// must restore its aux register and induce the same map on the main
/// qubits as `before`, up to global phase. Refuses circuits above the
/// matrix cap.
inline VerifyResult verify_equivalent(const ir::Circuit& before, const ir::Circuit& after,
                                      const GateLibrary& lib = verified_library(), double tol = kTolerance) {
    const auto b = ancilla::resolve_aux(before, ancilla::ReleasePolicy::Trust, lib);
    const auto a = ancilla::resolve_aux(after, ancilla::ReleasePolicy::Trust, lib);
    if (b.num_main != a.num_main) {
        return {false, "main register sizes differ"};
    }
    for (const auto* x : {&b, &a}) {
        if (x->total_qubits() > numerics::kMaxMatrixQubits) {
            throw TooLargeError("verification needs " + std::to_string(x->total_qubits()) +
                                " qubits; the oracle is capped at " + std::to_string(numerics::kMaxMatrixQubits));
        }
    }
    if (b.num_aux == 0 && a.num_aux == 0) {
        const bool eq = equivalent(numerics::unitary(b, lib), numerics::unitary(a, lib), EquivalenceMode::Exact, tol);
        return {eq, eq ? "unitaries are equal" : "unitaries differ"};
    }
    for (const auto* x : {&b, &a}) {
        if (!numerics::aux_restored(*x, x->num_main, x->num_aux, tol, lib)) {
            return {false, std::string(x == &b ? "input" : "output") + " circuit leaves aux qubits dirty"};
        }
    }
    const bool eq = equivalent(numerics::main_block(b, lib), numerics::main_block(a, lib),
                               EquivalenceMode::GlobalPhase, tol);
    return {eq, eq ? "aux restored and main-qubit maps agree" : "main-qubit maps differ"};
}

}  // namespace qaround::passes
