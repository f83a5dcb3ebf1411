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

/// @file numerics.hpp
/// The two circuit evaluators used as correctness oracle.
///
/// unitary() builds the full matrix. Controlled nodes are embedded directly as
/// block-diagonal operators (identity unless every control is |1>), library
/// gates use their registered matrices, and the uncompute half of an Around is
/// the conjugate transpose of the outer gates.
///
/// apply() evolves a single state vector. It expands library gates into their
/// gate sequences and builds the uncompute half with ir::adjoint. Because the
/// two paths share no gate-level code beyond the 2x2 built-in matrices, they
/// cross-check each other.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qaround/errors.hpp"
#include "qaround/ir.hpp"
#include "qaround/library.hpp"
#include "qaround/linalg.hpp"

namespace qaround::numerics {

/// Largest register unitary() will build (matrix side 4096).
inline constexpr std::size_t kMaxMatrixQubits = 12;
/// Largest register apply() will simulate.
inline constexpr std::size_t kMaxStateQubits = 20;

namespace detail {

using WireMap = std::function<std::size_t(ir::QubitId)>;

class MatrixBuilder {
public:
    MatrixBuilder(UnitaryMatrix& u, std::size_t n, WireMap wire, const GateLibrary& lib)
        : u_(u), n_(n), wire_(std::move(wire)), lib_(lib) {}

    void block(const ir::Block& b, std::uint64_t mask, bool inverse) {
        if (!inverse) {
            for (const auto& i : b) {
                instr(i, mask, false);
            }
        } else {
            for (auto it = b.rbegin(); it != b.rend(); ++it) {
                instr(*it, mask, true);
            }
        }
    }

private:
    std::size_t bit(ir::QubitId q) const {
        const std::size_t w = wire_(q);
        if (w >= n_) {
            throw DimensionMismatchError("qubit " + ir::to_string(q) + " lies outside the register");
        }
        return n_ - 1 - w;
    }

    void instr(const ir::Instruction& i, std::uint64_t mask, bool inverse) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    UnitaryMatrix g = n.gate.is_builtin()
                                          ? builtin_matrix(n.gate.builtin_kind(),
                                                           n.gate.params().empty() ? 0.0 : n.gate.angle())
                                          : lib_.matrix_of(n.gate);
                    if (inverse) {
                        g = g.adjoint();
                    }
                    std::vector<std::size_t> bits;
                    for (auto q : n.targets) {
                        bits.push_back(bit(q));
                    }
                    left_apply(u_, g, bits, mask);
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    std::uint64_t m = mask;
                    for (auto q : n.controls) {
                        m |= std::uint64_t{1} << bit(q);
                    }
                    block(n.body, m, inverse);
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    // A^dag B A, and its inverse A^dag B^dag A.
                    block(n.outer, mask, false);
                    block(n.body, mask, inverse);
                    block(n.outer, mask, true);
                } else {
                    block(n.body, mask, inverse);
                }
            },
            i.node);
    }

    UnitaryMatrix& u_;
    std::size_t n_;
    WireMap wire_;
    const GateLibrary& lib_;
};

class StateEvolver {
public:
    StateEvolver(StateVector& s, std::size_t num_main, const GateLibrary& lib)
        : s_(s), num_main_(num_main), lib_(lib) {}

    void block(const ir::Block& b, std::uint64_t mask) {
        for (const auto& i : b) {
            instr(i, mask);
        }
    }

private:
    void instr(const ir::Instruction& i, std::uint64_t mask) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ir::Apply>) {
                    if (n.gate.is_builtin()) {
                        const auto g = builtin_matrix(n.gate.builtin_kind(),
                                                      n.gate.params().empty() ? 0.0 : n.gate.angle());
                        single(g, bit(n.targets[0]), mask);
                    } else {
                        block(lib_.expand(n), mask);
                    }
                } else if constexpr (std::is_same_v<T, ir::Controlled>) {
                    std::uint64_t m = mask;
                    for (auto q : n.controls) {
                        m |= std::uint64_t{1} << bit(q);
                    }
                    block(n.body, m);
                } else if constexpr (std::is_same_v<T, ir::Around>) {
                    block(n.outer, mask);
                    block(n.body, mask);
                    block(ir::adjoint(n.outer), mask);
                } else {
                    block(n.body, mask);
                }
            },
            i.node);
    }

    std::size_t bit(ir::QubitId q) const {
        const std::size_t w = ir::wire_of(q, num_main_);
        if (w >= s_.num_qubits()) {
            throw DimensionMismatchError("qubit " + ir::to_string(q) + " lies outside the register");
        }
        return s_.num_qubits() - 1 - w;
    }

    void single(const UnitaryMatrix& g, std::size_t b, std::uint64_t mask) {
        const std::uint64_t tb = std::uint64_t{1} << b;
        const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
        for (std::uint64_t i = 0; i < s_.size(); ++i) {
            if ((i & tb) != 0 || (i & mask) != mask) {
                continue;
            }
            const Complex a = s_[i];
            const Complex c = s_[i | tb];
            s_[i] = g00 * a + g01 * c;
            s_[i | tb] = g10 * a + g11 * c;
        }
    }

    StateVector& s_;
    std::size_t num_main_;
    const GateLibrary& lib_;
};

inline void require_resolved(const ir::Circuit& c) {
    if (c.layout == ir::AuxLayout::Symbolic && ir::uses_aux(c.instructions)) {
        throw UnresolvedAuxError("circuit '" + c.name +
                                 "' has unresolved aux qubits; resolve aux scopes first");
    }
}

}  // namespace detail

/// Full unitary of a circuit on `total_qubits` wires (main qubits first,
/// then the aux region; extra trailing wires are idle).
inline UnitaryMatrix unitary(const ir::Circuit& c, std::size_t total_qubits,
                             const GateLibrary& lib = default_library()) {
    if (total_qubits > kMaxMatrixQubits) {
        throw TooLargeError("unitary of " + std::to_string(total_qubits) + " qubits exceeds the cap of " +
                            std::to_string(kMaxMatrixQubits));
    }
    detail::require_resolved(c);
    if (total_qubits < c.total_qubits()) {
        throw DimensionMismatchError("register of " + std::to_string(total_qubits) +
                                     " qubits is smaller than the circuit's " +
                                     std::to_string(c.total_qubits()));
    }
    UnitaryMatrix u = UnitaryMatrix::identity(std::size_t{1} << total_qubits);
    const std::size_t num_main = c.num_main;
    detail::MatrixBuilder b(u, total_qubits, [num_main](ir::QubitId q) { return ir::wire_of(q, num_main); },
                            lib);
    b.block(c.instructions, 0, false);
    return u;
}

inline UnitaryMatrix unitary(const ir::Circuit& c, const GateLibrary& lib = default_library()) {
    return unitary(c, c.total_qubits(), lib);
}

/// Unitary of a free-standing block over the qubits it touches, in QubitId
/// order. Works on symbolic aux ids since wires are assigned locally.
inline std::pair<std::vector<ir::QubitId>, UnitaryMatrix> local_unitary(
    const ir::Block& block, const GateLibrary& lib = default_library()) {
    const auto qs = ir::qubits_of(block);
    if (qs.size() > kMaxMatrixQubits) {
        throw TooLargeError("block touches " + std::to_string(qs.size()) + " qubits");
    }
    std::vector<ir::QubitId> support(qs.begin(), qs.end());
    std::map<ir::QubitId, std::size_t> pos;
    for (std::size_t i = 0; i < support.size(); ++i) {
        pos[support[i]] = i;
    }
    UnitaryMatrix u = UnitaryMatrix::identity(std::size_t{1} << support.size());
    detail::MatrixBuilder b(u, support.size(), [&pos](ir::QubitId q) { return pos.at(q); }, lib);
    b.block(block, 0, false);
    return {std::move(support), std::move(u)};
}

/// Gate-by-gate evolution of `state`, which must span the circuit's register.
inline StateVector apply(const ir::Circuit& c, StateVector state, const GateLibrary& lib = default_library()) {
    detail::require_resolved(c);
    if (state.num_qubits() != c.total_qubits()) {
        throw DimensionMismatchError("state has " + std::to_string(state.num_qubits()) +
                                     " qubits, circuit register has " + std::to_string(c.total_qubits()));
    }
    if (state.num_qubits() > kMaxStateQubits) {
        throw TooLargeError("statevector of " + std::to_string(state.num_qubits()) + " qubits exceeds the cap");
    }
    detail::StateEvolver ev(state, c.num_main, lib);
    ev.block(c.instructions, 0);
    return state;
}

namespace detail {

inline void check_projection_size(std::size_t main, std::size_t aux) {
    const std::size_t total = main + aux;
    if (total > kMaxStateQubits || (main > 10 && total > kMaxMatrixQubits)) {
        throw TooLargeError("aux check over " + std::to_string(main) + " main + " + std::to_string(aux) +
                            " aux qubits exceeds the simulation cap");
    }
}

}  // namespace detail

/// True iff every main basis input with aux = |0...0> leaves the aux region
/// in |0...0> (all amplitudes with a nonzero aux part are <= tol).
inline bool aux_restored(const ir::Circuit& c, std::size_t main, std::size_t aux, double tol = kTolerance,
                         const GateLibrary& lib = default_library()) {
    detail::check_projection_size(main, aux);
    if (main != c.num_main || aux < c.num_aux) {
        throw DimensionMismatchError("register split does not match the circuit");
    }
    ir::Circuit padded = c;
    padded.num_aux = aux;
    const std::uint64_t aux_mask = (std::uint64_t{1} << aux) - 1;
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << main); ++j) {
        const auto out = apply(padded, StateVector::basis(main + aux, j << aux), lib);
        for (std::uint64_t i = 0; i < out.size(); ++i) {
            if ((i & aux_mask) != 0 && std::abs(out[i]) > tol) {
                return false;
            }
        }
    }
    return true;
}

inline bool aux_restored(const ir::Circuit& c, double tol = kTolerance) {
    return aux_restored(c, c.num_main, c.num_aux, tol);
}

/// The 2^main x 2^main block of the unitary with aux projected onto |0...0>
/// at both input and output.
inline UnitaryMatrix main_block(const ir::Circuit& c, const GateLibrary& lib = default_library()) {
    detail::check_projection_size(c.num_main, c.num_aux);
    const std::size_t aux = c.num_aux;
    const std::size_t dim = std::size_t{1} << c.num_main;
    UnitaryMatrix m(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const auto out = apply(c, StateVector::basis(c.total_qubits(), j << aux), lib);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, j) = out[i << aux];
        }
    }
    return m;
}

}  // namespace qaround::numerics
