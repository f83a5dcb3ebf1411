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

#include <gtest/gtest.h>

#include "support.hpp"

namespace {

using namespace qtest;
using qaround::EquivalenceMode;
using qaround::equivalent;
namespace numerics = qaround::numerics;

const auto q0 = ir::QubitId::main(0);
const auto q1 = ir::QubitId::main(1);
const auto q2 = ir::QubitId::main(2);

TEST(Adjoint, NegatesRotationAngle) {
    const ir::Block got = ir::adjoint(ir::Block{ir::rz(0.7, q0)});
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0], ir::rz(-0.7, q0));
}

TEST(Adjoint, ReversesSelfInverseGates) {
    const ir::Block got = ir::adjoint(ir::Block{ir::h(q0), ir::x(q0)});
    EXPECT_EQ(got, (ir::Block{ir::x(q0), ir::h(q0)}));
}

TEST(Adjoint, LibraryGateTogglesDagger) {
    const auto g = ir::GateKind::library("toffoli");
    EXPECT_TRUE(g.inverse().dagger());
    EXPECT_EQ(g.inverse().inverse(), g);
}

TEST(Adjoint, AroundKeepsConjugator) {
    const auto a = ir::around({ir::h(q0)}, {ir::rz(0.3, q0), ir::x(q1)});
    const auto adj = ir::adjoint(a);
    ASSERT_TRUE(adj.is<ir::Around>());
    EXPECT_EQ(adj.as<ir::Around>().outer, ir::Block{ir::h(q0)});
    EXPECT_EQ(adj.as<ir::Around>().body, (ir::Block{ir::x(q1), ir::rz(-0.3, q0)}));
}

TEST(Adjoint, DoubleAdjointIsIdentityOnRandomBlocks) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto b = random_block(rng, mains(4), 6, 6);
        EXPECT_EQ(ir::adjoint(ir::adjoint(b)), b);
    }
}

TEST(Adjoint, UndoesRandomBlocks) {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        auto b = random_block(rng, mains(4), 5, 3);
        const auto u = numerics::unitary(circuit(4, b));
        const auto inv = numerics::unitary(circuit(4, ir::adjoint(b)));
        EXPECT_TRUE(equivalent(inv * u, ident(16), EquivalenceMode::Exact));
    }
}

TEST(Controlled, RejectsSelfControl) { EXPECT_THROW(ir::controlled({q0}, {ir::x(q0)}), qaround::OverlapError); }

TEST(Controlled, RejectsControlWrittenDeepInside) {
    EXPECT_THROW(ir::controlled({q0}, {ir::around({ir::h(q1)}, {ir::z(q0)})}), qaround::OverlapError);
}

TEST(Controlled, AllowsControlReadInside) {
    EXPECT_NO_THROW(ir::controlled({q0}, {ir::controlled({q0, q1}, {ir::x(q2)})}));
}

TEST(Controlled, CnotMatrix) {
    const auto u = numerics::unitary(circuit(2, {ir::cx(q0, q1)}));
    EXPECT_TRUE(equivalent(u, controlled_block(1, pauli_x()), EquivalenceMode::Exact));
}

TEST(Controlled, NestedControlsMerge) {
    const auto nested = numerics::unitary(circuit(3, {ir::controlled({q0}, {ir::controlled({q1}, {ir::x(q2)})})}));
    EXPECT_TRUE(equivalent(nested, mcx_matrix(2), EquivalenceMode::Exact));
}

TEST(Controlled, NestedMergeMatchesUnionOnRandomBodies) {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto body = random_block(rng, mains(2, 2), 3, 2);
        const auto a = numerics::unitary(circuit(4, {ir::controlled({q0}, {ir::controlled({q1}, body)})}));
        const auto b = numerics::unitary(circuit(4, {ir::controlled({q0, q1}, body)}));
        EXPECT_TRUE(equivalent(a, b, EquivalenceMode::Exact));
    }
}

TEST(Controlled, BlockDiagonalShape) {
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const auto body = random_block(rng, mains(2, 2), 3, 1);
        const auto inner = numerics::unitary(circuit(2, ir::map_qubits(body, [](ir::QubitId q) {
                                                         return ir::QubitId::main(q.index - 2);
                                                     })));
        const auto u = numerics::unitary(circuit(4, {ir::controlled({q0, q1}, body)}));
        EXPECT_TRUE(equivalent(u, controlled_block(2, inner), EquivalenceMode::Exact));
    }
}

TEST(Around, EmptyConjugatorIsBody) {
    const ir::Block body{ir::h(q0), ir::cx(q0, q1)};
    EXPECT_TRUE(equivalent(numerics::unitary(circuit(2, {ir::around({}, body)})),
                           numerics::unitary(circuit(2, body)), EquivalenceMode::Exact));
}

TEST(Around, EmptyBodyIsIdentity) {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_block(rng, mains(3), 5, 2);
        EXPECT_TRUE(equivalent(numerics::unitary(circuit(3, {ir::around(a, {})})), ident(8), EquivalenceMode::Exact));
    }
}

TEST(Around, DenotesConjugation) {
    Rng rng(16);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_block(rng, mains(3), 4, 2);
        const auto b = random_block(rng, mains(3), 4, 2);
        const auto ua = numerics::unitary(circuit(3, a));
        const auto ub = numerics::unitary(circuit(3, b));
        const auto got = numerics::unitary(circuit(3, {ir::around(a, b)}));
        EXPECT_TRUE(equivalent(got, ua.adjoint() * ub * ua, EquivalenceMode::Exact));
    }
}

TEST(Builders, ApplyChecksArity) {
    EXPECT_THROW(ir::apply(ir::GateKind::builtin(ir::Builtin::X), {q0, q1}), qaround::Error);
    EXPECT_THROW(ir::apply(ir::GateKind::library("toffoli"), {q0, q0, q1}), qaround::OverlapError);
    EXPECT_THROW(ir::GateKind::builtin(ir::Builtin::RX), qaround::Error);
    EXPECT_THROW(ir::GateKind::builtin(ir::Builtin::H, 1.0), qaround::Error);
}

TEST(Builders, AuxScopeNeedsAuxQubits) {
    EXPECT_THROW(ir::aux_scope({q0}, {}), qaround::QubitError);
    EXPECT_THROW(ir::aux_scope({ir::QubitId::aux(0), ir::QubitId::aux(0)}, {}), qaround::OverlapError);
}

TEST(Validate, RejectsUndeclaredMainQubit) {
    EXPECT_THROW(ir::validate(circuit(2, {ir::x(q2)})), qaround::QubitError);
}

TEST(Validate, RejectsAuxOutsideScope) {
    auto c = circuit(1, {ir::aux_scope({ir::QubitId::aux(0)}, {}), ir::x(ir::QubitId::aux(0))});
    c.num_aux = 1;
    EXPECT_THROW(ir::validate(c), qaround::QubitError);
}

TEST(Validate, AcceptsVChain) { EXPECT_NO_THROW(ir::validate(qaround::builders::build_v_chain(6))); }

TEST(Qubits, WrittenExcludesPureControls) {
    const ir::Block b{ir::ccx(q0, q1, q2)};
    EXPECT_EQ(ir::written_qubits(b), ir::QubitSet{q2});
    EXPECT_EQ(ir::qubits_of(b), (ir::QubitSet{q0, q1, q2}));
}

}  // namespace
