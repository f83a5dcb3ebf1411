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
using qaround::StateVector;
namespace numerics = qaround::numerics;
namespace library = qaround::library;

const auto q0 = ir::QubitId::main(0);
const auto q1 = ir::QubitId::main(1);
const auto q2 = ir::QubitId::main(2);

/// The 8x8 Toffoli matrix written out entry by entry.
UnitaryMatrix written_toffoli(bool relative_phase) {
    std::vector<Complex> e(64, 0.0);
    for (int k = 0; k < 6; ++k) {
        e[k * 8 + k] = 1.0;
    }
    e[6 * 8 + 7] = 1.0;
    e[7 * 8 + 6] = 1.0;
    if (relative_phase) {
        e[2 * 8 + 2] = -1.0;
    }
    return UnitaryMatrix(8, e);
}

TEST(Builtins, MatchPauliRotationFormulas) {
    Rng rng(21);
    for (int b = 0; b < 8; ++b) {
        const auto kind = static_cast<ir::Builtin>(b);
        const double t = random_angle(rng);
        EXPECT_TRUE(equivalent(qaround::builtin_matrix(kind, t), reference_gate(kind, t), EquivalenceMode::Exact))
            << ir::builtin_name(kind);
    }
}

TEST(Unitary, CnotSwapsTenAndEleven) {
    const auto u = numerics::unitary(circuit(2, {ir::cx(q0, q1)}), 2);
    std::vector<Complex> e(16, 0.0);
    e[0] = e[5] = 1.0;
    e[2 * 4 + 3] = e[3 * 4 + 2] = 1.0;
    EXPECT_TRUE(equivalent(u, UnitaryMatrix(4, e), EquivalenceMode::Exact));
}

TEST(Unitary, QubitZeroIsMostSignificant) {
    const auto u = numerics::unitary(circuit(2, {ir::x(q0)}));
    // X on q0 maps |00> (index 0) to |10> (index 2).
    EXPECT_NEAR(std::abs(u(2, 0)), 1.0, 1e-12);
}

TEST(Unitary, ExactToffoliExpansion) {
    const auto u = numerics::unitary(circuit(3, library::toffoli_exact_body()));
    EXPECT_TRUE(equivalent(u, written_toffoli(false), EquivalenceMode::Exact));
}

TEST(Unitary, RelativePhaseToffoliExpansion) {
    const auto u = numerics::unitary(circuit(3, library::toffoli_relative_phase_body()));
    EXPECT_TRUE(equivalent(u, written_toffoli(true), EquivalenceMode::Exact));
}

TEST(Unitary, LibraryApplicationUsesPlacedTargets) {
    // Toffoli with controls q2, q0 and target q1.
    const auto lib_u = numerics::unitary(
        circuit(3, {ir::apply(ir::GateKind::library(library::kToffoli), {q2, q0, q1})}));
    const auto ref = numerics::unitary(circuit(3, {ir::ccx(q2, q0, q1)}));
    EXPECT_TRUE(equivalent(lib_u, ref, EquivalenceMode::Exact));
}

TEST(Unitary, FlatCircuitMatchesKroneckerReference) {
    Rng rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        ir::Block b;
        for (int k = 0; k < 12; ++k) {
            auto qs = mains(4);
            std::shuffle(qs.begin(), qs.end(), rng);
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
                b.push_back(ir::cx(qs[0], qs[1]));
            } else {
                b.push_back(random_builtin_gate(rng, qs[0]));
            }
        }
        const auto c = circuit(4, b);
        EXPECT_TRUE(equivalent(numerics::unitary(c), reference_flat_unitary(c), EquivalenceMode::Exact));
    }
}

TEST(Unitary, IsUnitaryOnRandomCircuits) {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        EXPECT_TRUE(numerics::unitary(circuit(4, random_block(rng, mains(4), 6, 3))).is_unitary());
    }
}

TEST(Unitary, RefusesAboveCap) {
    EXPECT_THROW(numerics::unitary(circuit(13, {ir::x(q0)})), qaround::TooLargeError);
}

TEST(Unitary, RefusesSymbolicAux) {
    auto c = circuit(1, {ir::aux_scope({ir::QubitId::aux(0)}, {ir::z(ir::QubitId::aux(0))})});
    c.num_aux = 1;
    EXPECT_THROW(numerics::unitary(c), qaround::UnresolvedAuxError);
}

TEST(Unitary, PadsIdleWires) {
    const auto u = numerics::unitary(circuit(1, {ir::h(q0)}), 2);
    EXPECT_TRUE(equivalent(u, kron(hadamard(), ident(2)), EquivalenceMode::Exact));
}

TEST(Apply, XOnZero) {
    const auto out = numerics::apply(circuit(1, {ir::x(q0)}), StateVector(1));
    EXPECT_NEAR(std::abs(out[1] - Complex(1.0)), 0.0, 1e-12);
}

TEST(Apply, DimensionMismatch) {
    EXPECT_THROW(numerics::apply(circuit(2, {ir::x(q0)}), StateVector(3)), qaround::DimensionMismatchError);
}

TEST(Apply, AgreesWithUnitaryIncludingLibraryGates) {
    Rng rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        auto b = random_block(rng, mains(4), 5, 3);
        auto qs = mains(4);
        std::shuffle(qs.begin(), qs.end(), rng);
        b.push_back(ir::apply(ir::GateKind::library(library::kToffoli, ir::LibraryVariant::Approx, trial % 2 == 0),
                              {qs[0], qs[1], qs[2]}));
        const auto c = circuit(4, b);
        const auto u = numerics::unitary(c);
        std::vector<Complex> amps(16);
        std::normal_distribution<double> nd;
        double norm = 0;
        for (auto& a : amps) {
            a = {nd(rng), nd(rng)};
            norm += std::norm(a);
        }
        for (auto& a : amps) {
            a /= std::sqrt(norm);
        }
        const StateVector s(4, amps);
        EXPECT_LT(numerics::apply(c, s).max_abs_diff(u * s), 1e-9);
    }
}

TEST(Equivalence, GlobalPhaseMode) {
    const auto u = numerics::unitary(circuit(1, {ir::h(q0)}));
    const auto v = Complex(std::polar(1.0, 0.4)) * u;
    EXPECT_FALSE(equivalent(u, v, EquivalenceMode::Exact));
    EXPECT_TRUE(equivalent(u, v, EquivalenceMode::GlobalPhase));
}

TEST(Equivalence, RzDiffersFromPhaseOnlyGlobally) {
    const double t = 0.9;
    const auto rz = numerics::unitary(circuit(1, {ir::rz(t, q0)}));
    const auto p = numerics::unitary(circuit(1, {ir::phase(t, q0)}));
    EXPECT_FALSE(equivalent(rz, p, EquivalenceMode::Exact));
    EXPECT_TRUE(equivalent(rz, p, EquivalenceMode::GlobalPhase));
}

TEST(AuxRestored, DetectsDirtyAux) {
    const auto a = ir::QubitId::aux(0);
    ir::Circuit clean{.name = "clean", .num_main = 1, .num_aux = 1, .layout = ir::AuxLayout::Resolved,
                      .instructions = {ir::cx(q0, a), ir::z(a), ir::cx(q0, a)}};
    ir::Circuit dirty{.name = "dirty", .num_main = 1, .num_aux = 1, .layout = ir::AuxLayout::Resolved,
                      .instructions = {ir::cx(q0, a)}};
    EXPECT_TRUE(numerics::aux_restored(clean));
    EXPECT_FALSE(numerics::aux_restored(dirty));
}

TEST(MainBlock, ProjectsAuxToZero) {
    const auto a = ir::QubitId::aux(0);
    // Phase kickback: Z on q0 computed through the aux.
    ir::Circuit c{.name = "kick", .num_main = 1, .num_aux = 1, .layout = ir::AuxLayout::Resolved,
                  .instructions = {ir::cx(q0, a), ir::z(a), ir::cx(q0, a)}};
    EXPECT_TRUE(equivalent(numerics::main_block(c), pauli_z(), EquivalenceMode::Exact));
}

TEST(Linalg, PermutationAndDiagonalPredicates) {
    EXPECT_TRUE(qaround::is_permutation_matrix(written_toffoli(true)));
    EXPECT_FALSE(qaround::is_diagonal_matrix(written_toffoli(true)));
    EXPECT_TRUE(qaround::is_diagonal_matrix(phase_gate(0.3)));
    EXPECT_FALSE(qaround::is_permutation_matrix(hadamard()));
}

TEST(Linalg, ExtractPermutationRoundTrip) {
    const auto spec = qaround::extract_permutation(written_toffoli(true));
    EXPECT_EQ(spec.perm[6], 7u);
    EXPECT_EQ(spec.perm[7], 6u);
    EXPECT_NEAR(spec.phases[2], kPi, 1e-12);
    EXPECT_TRUE(equivalent(spec.to_matrix(), written_toffoli(true), EquivalenceMode::Exact));
    EXPECT_THROW(qaround::extract_permutation(hadamard()), qaround::NotPermutationError);
}

}  // namespace
