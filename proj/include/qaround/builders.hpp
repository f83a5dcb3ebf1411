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

/// @file builders.hpp
/// Ready-made example circuits.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qaround/ancilla.hpp"
#include "qaround/errors.hpp"
#include "qaround/ir.hpp"

namespace qaround::builders {

namespace detail {

inline ir::Block v_chain(std::vector<ir::QubitId> c, ir::QubitId t, std::uint32_t& next_aux) {
    const std::array<std::size_t, 1> counts{c.size()};
    if (ancilla::v_chain_request().evaluate(counts) == 0) {
        return {ir::controlled(c, {ir::x(t)})};
    }
    const auto a = ir::QubitId::aux(next_aux++);
    std::vector<ir::QubitId> rest{a};
    rest.insert(rest.end(), c.begin() + 2, c.end());
    return {ir::aux_scope({a}, {ir::around({ir::ccx(c[0], c[1], a)}, v_chain(std::move(rest), t, next_aux))})};
}

}  // namespace detail

/// n-controlled X on q0..q{n-1} -> qn. Each recursion level with more than
/// two controls takes one aux qubit, conjugates a Toffoli onto it with
/// Around, and recurses with the aux in front of the remaining controls.
inline ir::Circuit build_v_chain(std::size_t n_controls) {
    if (n_controls == 0) {
        throw Error("v_chain needs at least one control");
    }
    std::vector<ir::QubitId> c;
    for (std::size_t i = 0; i < n_controls; ++i) {
        c.push_back(ir::QubitId::main(static_cast<std::uint32_t>(i)));
    }
    std::uint32_t next_aux = 0;
    ir::Circuit out{.name = "v_chain_" + std::to_string(n_controls), .num_main = n_controls + 1, .instructions = {}};
    out.instructions = detail::v_chain(c, ir::QubitId::main(static_cast<std::uint32_t>(n_controls)), next_aux);
    out.num_aux = next_aux;
    return out;
}

namespace detail {

inline void v_chain_x(std::vector<ir::QubitId> c, ir::QubitId t, std::span<const ir::QubitId> a, ir::Block& out) {
    if (c.size() <= 2) {
        out.push_back(ir::controlled(c, {ir::x(t)}));
        return;
    }
    out.push_back(ir::ccx(c[0], c[1], a[0]));
    std::vector<ir::QubitId> rest{a[0]};
    rest.insert(rest.end(), c.begin() + 2, c.end());
    v_chain_x(std::move(rest), t, a.subspan(1), out);
    out.push_back(ir::ccx(c[0], c[1], a[0]));
}

}  // namespace detail

/// The same V-chain with the uncompute Toffolis written out by hand and all
/// aux qubits taken up front. No Around nodes, so no pass can exploit the
/// conjugation structure.
inline ir::Circuit build_v_chain_explicit(std::size_t n_controls) {
    if (n_controls == 0) {
        throw Error("v_chain needs at least one control");
    }
    std::vector<ir::QubitId> c;
    for (std::size_t i = 0; i < n_controls; ++i) {
        c.push_back(ir::QubitId::main(static_cast<std::uint32_t>(i)));
    }
    const std::size_t k = n_controls > 2 ? n_controls - 2 : 0;
    std::vector<ir::QubitId> a;
    for (std::size_t i = 0; i < k; ++i) {
        a.push_back(ir::QubitId::aux(static_cast<std::uint32_t>(i)));
    }
    ir::Block body;
    detail::v_chain_x(c, ir::QubitId::main(static_cast<std::uint32_t>(n_controls)), a, body);
    ir::Circuit out{.name = "v_chain_x_" + std::to_string(n_controls), .num_main = n_controls + 1, .num_aux = k, .instructions = {}};
    if (k == 0) {
        out.instructions = std::move(body);
    } else {
        out.instructions = {ir::aux_scope(a, std::move(body))};
    }
    return out;
}

inline ir::Block rxx_conjugator(ir::QubitId q0, ir::QubitId q1) {
    return {ir::h(q0), ir::h(q1), ir::cx(q0, q1)};
}

/// R_XX(angle) on (q0, q1) as an Around node.
inline ir::Circuit build_rxx(double angle) {
    const auto q0 = ir::QubitId::main(0), q1 = ir::QubitId::main(1);
    return {.name = "rxx", .num_main = 2,
            .instructions = {ir::around(rxx_conjugator(q0, q1), {ir::rz(angle, q1)})}};
}

/// R_XX(angle) with the inverse of the conjugator written via adjoint().
inline ir::Circuit build_rxx_explicit(double angle) {
    const auto q0 = ir::QubitId::main(0), q1 = ir::QubitId::main(1);
    ir::Block body = rxx_conjugator(q0, q1);
    body.push_back(ir::rz(angle, q1));
    for (auto& i : ir::adjoint(rxx_conjugator(q0, q1))) {
        body.push_back(std::move(i));
    }
    return {.name = "rxx_explicit", .num_main = 2, .instructions = std::move(body)};
}

}  // namespace qaround::builders
