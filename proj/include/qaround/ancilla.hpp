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

/// @file ancilla.hpp
/// Scoped clean-ancilla allocation and the static uncomputation checker.
///
/// The checker accepts a scope when every instruction touching one of its
/// aux qubits provably never changes that qubit's computational-basis value:
///
///  (a) a Diagonal-classified gate targets it;
///  (b) it is only used as a control;
///  (c) it sits inside Around(A, B) where A is a permutation and B leaves
///      every qubit A acts on (aux or not) basis-preserved, with B itself
///      obeying these rules.
///
/// A basis-preserving body started in |0...0> on the aux ends there up to a
/// phase, so accepted scopes are always safe to release. The converse does
/// not hold; the checker is deliberately pessimistic.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qaround/classify.hpp"
#include "qaround/errors.hpp"
#include "qaround/ir.hpp"

namespace qaround::ancilla {

/// Named aux request whose size depends on the calling operation's argument
/// counts, e.g. "1 if there are more than two controls".
struct AuxRequest {
    std::string name;
    std::function<std::size_t(std::span<const std::size_t>)> sizing;

    [[nodiscard]] std::size_t evaluate(std::span<const std::size_t> arg_counts) const {
        return sizing(arg_counts);
    }
};

/// The V-chain request: one aux qubit while more than two controls remain.
inline AuxRequest v_chain_request() {
    return {"a", [](std::span<const std::size_t> counts) -> std::size_t {
                return counts.empty() ? 0 : (counts[0] > 2 ? 1 : 0);
            }};
}

using classify::Violation;

struct SafetyVerdict {
    std::vector<Violation> violations;

    [[nodiscard]] bool accepted() const { return violations.empty(); }
};

/// Free-list allocator over the aux register. Always hands out the lowest
/// free slots.
class AuxPool {
public:
    explicit AuxPool(std::size_t capacity = 0) { grow(capacity); }

    std::vector<ir::QubitId> allocate(std::size_t n) {
        if (n > free_.size()) {
            throw PoolExhaustedError("requested " + std::to_string(n) + " aux qubits, " +
                                     std::to_string(free_.size()) + " free");
        }
        std::vector<ir::QubitId> out;
        for (std::size_t k = 0; k < n; ++k) {
            const auto slot = *free_.begin();
            free_.erase(free_.begin());
            in_use_.insert(slot);
            out.push_back(ir::QubitId::aux(slot));
        }
        peak_ = std::max(peak_, in_use_.size());
        return out;
    }

    /// Grows the register first when fewer than n slots are free.
    std::vector<ir::QubitId> allocate_or_grow(std::size_t n) {
        if (n > free_.size()) {
            grow(n - free_.size());
        }
        return allocate(n);
    }

    void release(std::span<const ir::QubitId> qs, const SafetyVerdict& verdict) {
        if (!verdict.accepted()) {
            std::string msg = "aux qubits may still be entangled: ";
            msg += verdict.violations.front().reason;
            throw UnsafeReleaseError(msg);
        }
        release_unchecked(qs);
    }

    /// Returns slots without a verdict. Meant for oracle-side layout of
    /// circuits whose safety is judged by simulation instead.
    void release_unchecked(std::span<const ir::QubitId> qs) {
        for (auto q : qs) {
            if (!q.is_aux() || !in_use_.contains(q.index)) {
                throw DoubleFreeError("aux qubit " + ir::to_string(q) + " is not allocated");
            }
        }
        for (auto q : qs) {
            in_use_.erase(q.index);
            free_.insert(q.index);
        }
    }

    void grow(std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            free_.insert(static_cast<std::uint32_t>(capacity_ + i));
        }
        capacity_ += k;
    }

    [[nodiscard]] std::size_t capacity() const { return capacity_; }
    [[nodiscard]] std::vector<std::uint32_t> free_slots() const { return {free_.begin(), free_.end()}; }
    [[nodiscard]] std::size_t in_use() const { return in_use_.size(); }
    [[nodiscard]] std::size_t peak_in_use() const { return peak_; }

private:
    std::size_t capacity_ = 0;
    std::size_t peak_ = 0;
    std::set<std::uint32_t> free_;
    std::set<std::uint32_t> in_use_;
};

namespace detail {

inline void walk_scope(const ir::Block& block, const ir::QubitSet& aux, const std::string& path,
                       std::vector<Violation>& out, const GateLibrary& lib);

inline void walk_instr(const ir::Instruction& instr, const ir::QubitSet& aux, const std::string& here,
                       std::vector<Violation>& out, const GateLibrary& lib) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ir::Apply>) {
                if (classify::classify_gate(n.gate, lib) == GateClass::Diagonal) {
                    return;
                }
                std::size_t fixed = n.gate.is_builtin() ? 0 : lib.at(n.gate.library_id()).control_arity;
                for (std::size_t k = fixed; k < n.targets.size(); ++k) {
                    if (aux.contains(n.targets[k])) {
                        out.push_back({here, "non-diagonal gate targets aux outside Around (" + n.gate.name() +
                                                 " on " + ir::to_string(n.targets[k]) + ")"});
                        return;
                    }
                }
            } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                walk_scope(n.body, aux, here + "/body", out, lib);
            } else if constexpr (std::is_same_v<T, ir::Around>) {
                std::vector<Violation> outer_v;
                walk_scope(n.outer, aux, here + "/outer", outer_v, lib);
                walk_scope(n.body, aux, here + "/body", out, lib);
                if (outer_v.empty()) {
                    return;
                }
                // The conjugator changes an aux qubit: it has to be a
                // permutation whose qubits the body leaves alone.
                const auto cls = classify::classify_instrs(n.outer, lib);
                if (!permutes(cls)) {
                    out.push_back({here + "/outer", "conjugator acting on aux is not a permutation (class " +
                                                        to_string(cls) + ")"});
                    return;
                }
                if (auto v = classify::preserves_basis(n.body, ir::qubits_of(n.outer), here + "/body", lib)) {
                    out.push_back({v->path, "body modifies a qubit of the permutation conjugator: " + v->reason});
                }
            } else {
                walk_scope(n.body, aux, here + "/body", out, lib);
            }
        },
        instr.node);
}

inline void walk_scope(const ir::Block& block, const ir::QubitSet& aux, const std::string& path,
                       std::vector<Violation>& out, const GateLibrary& lib) {
    for (std::size_t i = 0; i < block.size(); ++i) {
        const auto& instr = block[i];
        const auto touched = ir::qubits_of(instr);
        if (std::ranges::none_of(touched, [&](ir::QubitId q) { return aux.contains(q); })) {
            continue;
        }
        if (!instr.is<ir::Apply>() && classify::classify_instr(instr, lib) == GateClass::Diagonal) {
            continue;
        }
        walk_instr(instr, aux, classify::child_path(path, i), out, lib);
    }
}

}  // namespace detail

/// Structural uncomputation check of one scope. Paths are relative to the
/// scope body. Nested scopes are walked for this scope's qubits only.
inline SafetyVerdict check_aux_safety(const ir::AuxScope& scope, const GateLibrary& lib = default_library()) {
    SafetyVerdict v;
    const ir::QubitSet aux(scope.aux.begin(), scope.aux.end());
    detail::walk_scope(scope.body, aux, "", v.violations, lib);
    return v;
}

struct ScopeVerdict {
    std::string path;
    std::vector<ir::QubitId> aux;
    SafetyVerdict verdict;
};

namespace detail {

inline void collect_scopes(const ir::Block& block, const std::string& path, std::vector<ScopeVerdict>& out,
                           const GateLibrary& lib) {
    for (std::size_t i = 0; i < block.size(); ++i) {
        const std::string here = classify::child_path(path, i);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Controlled>) {
                    collect_scopes(n.body, here + "/body", out, lib);
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    collect_scopes(n.outer, here + "/outer", out, lib);
                    collect_scopes(n.body, here + "/body", out, lib);
                } else if constexpr (std::is_same_v<T, ir::AuxScope>) {
                    auto verdict = check_aux_safety(n, lib);
                    for (auto& v : verdict.violations) {
                        v.path = here + "/body" + (v.path.empty() ? "" : "/" + v.path);
                    }
                    out.push_back({here, n.aux, std::move(verdict)});
                    collect_scopes(n.body, here + "/body", out, lib);
                }
            },
            block[i].node);
    }
}

}  // namespace detail

/// Verdicts for every aux scope in the circuit, outermost first. Paths are
/// absolute.
inline std::vector<ScopeVerdict> check_circuit(const ir::Circuit& c, const GateLibrary& lib = default_library()) {
    std::vector<ScopeVerdict> out;
    detail::collect_scopes(c.instructions, "", out, lib);
    return out;
}

enum class ReleasePolicy { Enforce, Trust };

namespace detail {

class Resolver {
public:
    Resolver(AuxPool& pool, ReleasePolicy policy, const GateLibrary& lib)
        : pool_(pool), policy_(policy), lib_(lib) {}

    ir::Block block(const ir::Block& b) {
        ir::Block out;
        out.reserve(b.size());
        for (const auto& i : b) {
            out.push_back(instr(i));
        }
        return out;
    }

private:
    ir::QubitId map(ir::QubitId q) const {
        if (!q.is_aux()) {
            return q;
        }
        auto it = env_.find(q);
        if (it == env_.end()) {
            throw QubitError("aux qubit " + ir::to_string(q) + " referenced outside its scope");
        }
        return it->second;
    }

    ir::Instruction instr(const ir::Instruction& i) {
        if (!i.is<ir::AuxScope>()) {
            auto mapped = std::visit(
                [&](const auto& n) -> ir::Instruction {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, ir::Apply>) {
                        std::vector<ir::QubitId> ts;
                        for (auto q : n.targets) {
                            ts.push_back(map(q));
                        }
                        return ir::Instruction{ir::Apply{n.gate, std::move(ts)}};
                    } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                        std::vector<ir::QubitId> cs;
                        for (auto q : n.controls) {
                            cs.push_back(map(q));
                        }
                        return ir::Instruction{ir::Controlled{std::move(cs), block(n.body)}};
                    } else if constexpr (std::is_same_v<T, ir::Around>) {
                        auto outer = block(n.outer);
                        return ir::Instruction{ir::Around{std::move(outer), block(n.body)}};
                    } else {
                        return ir::Instruction{n};
                    }
                },
                i.node);
            return mapped;
        }
        const auto& scope = i.as<ir::AuxScope>();
        const auto slots = pool_.allocate_or_grow(scope.aux.size());
        for (std::size_t k = 0; k < slots.size(); ++k) {
            env_[scope.aux[k]] = slots[k];
        }
        auto body = block(scope.body);
        for (const auto& q : scope.aux) {
            env_.erase(q);
        }
        if (policy_ == ReleasePolicy::Enforce) {
            pool_.release(slots, check_aux_safety(scope, lib_));
        } else {
            pool_.release_unchecked(slots);
        }
        return ir::Instruction{ir::AuxScope{slots, std::move(body)}};
    }

    AuxPool& pool_;
    ReleasePolicy policy_;
    const GateLibrary& lib_;
    std::map<ir::QubitId, ir::QubitId> env_;
};

}  // namespace detail

/// Assigns every symbolic aux id a concrete slot, reusing slots of scopes
/// that have ended. AuxScope nodes are kept; the result is Resolved and its
/// num_aux is the peak number of live aux qubits.
inline ir::Circuit resolve_aux(const ir::Circuit& c, ReleasePolicy policy = ReleasePolicy::Enforce,
                               const GateLibrary& lib = default_library()) {
    if (c.layout == ir::AuxLayout::Resolved) {
        return c;
    }
    AuxPool pool;
    detail::Resolver r(pool, policy, lib);
    ir::Circuit out = c;
    out.instructions = r.block(c.instructions);
    out.layout = ir::AuxLayout::Resolved;
    out.num_aux = pool.capacity();
    return out;
}

}  // namespace qaround::ancilla
