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

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qaround/emit.hpp"
#include "qaround/errors.hpp"
#include "qaround/ir.hpp"
#include "qaround/passes.hpp"

namespace qaround::frontend {

/// Gate counts of a flattened circuit. cx is the headline cost.
struct GateStats {
    std::string name;
    std::map<std::string, std::size_t> counts{{"cx", 0}, {"h", 0}, {"x", 0}, {"y", 0}, {"z", 0},
                                              {"rx", 0}, {"ry", 0}, {"rz", 0}, {"p", 0}};
    std::size_t total_gates = 0;
    std::size_t depth = 0;
    std::size_t qubits_main = 0;
    std::size_t qubits_aux_peak = 0;

    [[nodiscard]] std::size_t cx() const { return counts.at("cx"); }
};

inline GateStats stats(const ir::Circuit& c) {
    GateStats s;
    s.name = c.name;
    s.qubits_main = c.num_main;
    s.qubits_aux_peak = c.num_aux;
    if (c.layout != ir::AuxLayout::Resolved && ir::uses_aux(c.instructions)) {
        throw NotFlattenedError("circuit has unresolved aux scopes");
    }
    std::vector<std::size_t> level(c.total_qubits(), 0);
    auto touch = [&](std::initializer_list<ir::QubitId> qs) {
        std::size_t l = 0;
        for (auto q : qs) {
            l = std::max(l, level.at(ir::wire_of(q, c.num_main)));
        }
        for (auto q : qs) {
            level[ir::wire_of(q, c.num_main)] = l + 1;
        }
        s.depth = std::max(s.depth, l + 1);
    };
    for (const auto& i : c.instructions) {
        if (detail::is_cx(i)) {
            const auto& cc = i.as<ir::Controlled>();
            ++s.counts["cx"];
            touch({cc.controls[0], cc.body[0].as<ir::Apply>().targets[0]});
        } else if (i.is<ir::Apply>() && i.as<ir::Apply>().gate.is_builtin()) {
            const auto& a = i.as<ir::Apply>();
            ++s.counts[a.gate.name()];
            touch({a.targets[0]});
        } else {
            throw NotFlattenedError("stats need a flattened circuit; composite instructions remain");
        }
        ++s.total_gates;
    }
    return s;
}

/// Stats JSON with sorted keys. Pass reports are included when given.
inline nlohmann::json stats_json(const GateStats& s, const std::vector<passes::PassReport>& reports = {}) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [k, v] : s.counts) {
        counts[k] = v;
    }
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& r : reports) {
        ps.push_back({{"pass", r.pass_name}, {"examined", r.sites_examined}, {"rewritten", r.sites_rewritten}});
    }
    return {{"name", s.name},
            {"qubits_main", s.qubits_main},
            {"qubits_aux_peak", s.qubits_aux_peak},
            {"depth", s.depth},
            {"counts", std::move(counts)},
            {"total_gates", s.total_gates},
            {"passes", std::move(ps)}};
}

}  // namespace qaround::frontend
