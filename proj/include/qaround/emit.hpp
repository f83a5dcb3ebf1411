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

/// @file emit.hpp
/// Text and JSON output of circuits.

#pragma once

#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qaround/errors.hpp"
#include "qaround/ir.hpp"

namespace qaround::frontend {

/// Shortest form that reads back to the same double.
inline std::string format_angle(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

class TextEmitter {
public:
    explicit TextEmitter(const ir::Circuit& c) : resolved_(c.layout == ir::AuxLayout::Resolved) {}

    void block(const ir::Block& b, int depth) {
        for (const auto& i : b) {
            instr(i, depth);
        }
    }

    std::string take() { return out_.str(); }
    std::ostringstream& out() { return out_; }

private:
    std::string name(ir::QubitId q) const {
        if (!q.is_aux()) {
            return ir::to_string(q);
        }
        if (resolved_) {
            return "anc[" + std::to_string(q.index) + "]";
        }
        return names_.at(q);
    }

    std::string list(const std::vector<ir::QubitId>& qs) const {
        std::string s;
        for (std::size_t k = 0; k < qs.size(); ++k) {
            s += (k ? ", " : "") + name(qs[k]);
        }
        return s;
    }

    void indent(int depth) {
        for (int k = 0; k < depth; ++k) {
            out_ << "  ";
        }
    }

    void instr(const ir::Instruction& i, int depth) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    indent(depth);
                    if (n.gate.is_builtin()) {
                        out_ << n.gate.name();
                        if (!n.gate.params().empty()) {
                            out_ << ' ' << format_angle(n.gate.angle());
                        }
                    } else {
                        out_ << "lib" << (n.gate.dagger() ? " adj" : "")
                             << (n.gate.variant() == ir::LibraryVariant::Approx ? " approx" : "") << ' '
                             << n.gate.library_id();
                    }
                    out_ << ' ' << list(n.targets) << '\n';
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    indent(depth);
                    out_ << "ctrl " << list(n.controls) << " {\n";
                    block(n.body, depth + 1);
                    indent(depth);
                    out_ << "}\n";
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    indent(depth);
                    out_ << "around {\n";
                    block(n.outer, depth + 1);
                    indent(depth);
                    out_ << "} {\n";
                    block(n.body, depth + 1);
                    indent(depth);
                    out_ << "}\n";
                } else if (resolved_) {
                    // Slots live in the flat register; the scope is implicit.
                    block(n.body, depth);
                } else {
                    const std::string reg = "t" + std::to_string(scope_counter_++);
                    for (std::size_t k = 0; k < n.aux.size(); ++k) {
                        names_[n.aux[k]] = reg + "[" + std::to_string(k) + "]";
                    }
                    indent(depth);
                    out_ << "aux " << reg << '[' << n.aux.size() << "] {\n";
                    block(n.body, depth + 1);
                    indent(depth);
                    out_ << "}\n";
                }
            },
            i.node);
    }

    bool resolved_;
    std::size_t scope_counter_ = 0;
    std::map<ir::QubitId, std::string> names_;
    std::ostringstream out_;
};

inline bool is_cx(const ir::Instruction& i) {
    if (!i.is<ir::Controlled>()) {
        return false;
    }
    const auto& c = i.as<ir::Controlled>();
    return c.controls.size() == 1 && c.body.size() == 1 && c.body[0].is<ir::Apply>() &&
           c.body[0].as<ir::Apply>().gate.is_builtin() &&
           c.body[0].as<ir::Apply>().gate.builtin_kind() == ir::Builtin::X;
}

}  // namespace detail

/// Source text that parses back to an equivalent circuit. Resolved aux
/// slots are written as a flat `ancillas` register named anc.
inline std::string emit_text(const ir::Circuit& c) {
    detail::TextEmitter e(c);
    e.out() << "# " << c.name << '\n' << "qubits " << c.num_main << '\n';
    if (c.layout == ir::AuxLayout::Resolved && c.num_aux > 0) {
        e.out() << "ancillas " << c.num_aux << '\n';
    }
    e.block(c.instructions, 0);
    return e.take();
}

/// Gate list of a flattened circuit. Qubits are register wires: main
/// qubits first, then aux slots.
inline nlohmann::json emit_json(const ir::Circuit& c) {
    if (c.layout != ir::AuxLayout::Resolved && ir::uses_aux(c.instructions)) {
        throw NotFlattenedError("circuit has unresolved aux scopes");
    }
    nlohmann::json gates = nlohmann::json::array();
    auto wire = [&](ir::QubitId q) { return ir::wire_of(q, c.num_main); };
    for (const auto& i : c.instructions) {
        if (detail::is_cx(i)) {
            const auto& cc = i.as<ir::Controlled>();
            gates.push_back({{"gate", "cx"},
                             {"qubits", {wire(cc.controls[0]), wire(cc.body[0].as<ir::Apply>().targets[0])}}});
        } else if (i.is<ir::Apply>() && i.as<ir::Apply>().gate.is_builtin()) {
            const auto& a = i.as<ir::Apply>();
            nlohmann::json g{{"gate", a.gate.name()}, {"qubits", {wire(a.targets[0])}}};
            if (!a.gate.params().empty()) {
                g["angle"] = a.gate.angle();
            }
            gates.push_back(std::move(g));
        } else {
            throw NotFlattenedError("circuit contains composite instructions; flatten it first");
        }
    }
    return {{"name", c.name}, {"qubits_main", c.num_main}, {"qubits_aux", c.num_aux}, {"gates", std::move(gates)}};
}

}  // namespace qaround::frontend
