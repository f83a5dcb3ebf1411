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

// Shared test helpers: seeded random circuits and reference matrices built
// from first principles (Kronecker products and projectors) rather than the
// library's own embedding code.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qaround.hpp"

namespace qtest {

using qaround::Complex;
using qaround::UnitaryMatrix;
namespace ir = qaround::ir;

inline constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Reference matrices
// ---------------------------------------------------------------------------

inline UnitaryMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    UnitaryMatrix m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

inline UnitaryMatrix ident(std::size_t dim) { return UnitaryMatrix::identity(dim); }

inline UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    UnitaryMatrix m(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) {
                    m(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return m;
}

inline UnitaryMatrix add(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    UnitaryMatrix m(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            m(i, j) = a(i, j) + b(i, j);
        }
    }
    return m;
}

inline const Complex I{0.0, 1.0};

inline UnitaryMatrix pauli_x() { return mat2(0, 1, 1, 0); }
inline UnitaryMatrix pauli_y() { return mat2(0, -I, I, 0); }
inline UnitaryMatrix pauli_z() { return mat2(1, 0, 0, -1); }
inline UnitaryMatrix hadamard() {
    const double r = 1 / std::sqrt(2.0);
    return mat2(r, r, r, -r);
}
/// exp(-i t/2 G) = cos(t/2) I - i sin(t/2) G for a Pauli G.
inline UnitaryMatrix pauli_rotation(const UnitaryMatrix& g, double t) {
    return add(std::cos(t / 2) * ident(2), (-I * std::sin(t / 2)) * g);
}
inline UnitaryMatrix phase_gate(double t) { return mat2(1, 0, 0, std::exp(I * t)); }

inline UnitaryMatrix reference_gate(ir::Builtin b, double t) {
    switch (b) {
        case ir::Builtin::X: return pauli_x();
        case ir::Builtin::Y: return pauli_y();
        case ir::Builtin::Z: return pauli_z();
        case ir::Builtin::H: return hadamard();
        case ir::Builtin::RX: return pauli_rotation(pauli_x(), t);
        case ir::Builtin::RY: return pauli_rotation(pauli_y(), t);
        case ir::Builtin::RZ: return pauli_rotation(pauli_z(), t);
        case ir::Builtin::P: return phase_gate(t);
    }
    return ident(2);
}

/// g on qubit q of an n-qubit register, qubit 0 leftmost in the product.
inline UnitaryMatrix embed1(const UnitaryMatrix& g, std::size_t q, std::size_t n) {
    UnitaryMatrix m = ident(1);
    for (std::size_t k = 0; k < n; ++k) {
        m = kron(m, k == q ? g : ident(2));
    }
    return m;
}

/// n-controlled U as sum_{k < 2^n - 1} |k><k| (x) I + |1..1><1..1| (x) U,
/// controls leading.
inline UnitaryMatrix controlled_block(std::size_t n_controls, const UnitaryMatrix& u) {
    const std::size_t cdim = std::size_t{1} << n_controls;
    UnitaryMatrix m(cdim * u.dim());
    for (std::size_t k = 0; k < cdim; ++k) {
        for (std::size_t i = 0; i < u.dim(); ++i) {
            for (std::size_t j = 0; j < u.dim(); ++j) {
                m(k * u.dim() + i, k * u.dim() + j) = k + 1 == cdim ? u(i, j) : (i == j ? 1.0 : 0.0);
            }
        }
    }
    return m;
}

/// C^n X on n+1 qubits: identity except the last two basis states swap.
inline UnitaryMatrix mcx_matrix(std::size_t n_controls) { return controlled_block(n_controls, pauli_x()); }

/// Reference unitary of a flat list of built-in gates and CX, computed
/// gate-by-gate with Kronecker embeddings and projector sums.
inline UnitaryMatrix reference_flat_unitary(const ir::Circuit& c) {
    const std::size_t n = c.total_qubits();
    UnitaryMatrix u = ident(std::size_t{1} << n);
    const UnitaryMatrix p0 = mat2(1, 0, 0, 0), p1 = mat2(0, 0, 0, 1);
    for (const auto& instr : c.instructions) {
        UnitaryMatrix g(1);
        if (instr.is<ir::Apply>()) {
            const auto& a = instr.as<ir::Apply>();
            g = embed1(reference_gate(a.gate.builtin_kind(), a.gate.params().empty() ? 0.0 : a.gate.angle()),
                       ir::wire_of(a.targets[0], c.num_main), n);
        } else {
            const auto& cc = instr.as<ir::Controlled>();
            const auto ctl = ir::wire_of(cc.controls[0], c.num_main);
            const auto tgt = ir::wire_of(cc.body[0].as<ir::Apply>().targets[0], c.num_main);
            UnitaryMatrix off = ident(1), on = ident(1);
            for (std::size_t k = 0; k < n; ++k) {
                off = kron(off, k == ctl ? p0 : ident(2));
                on = kron(on, k == ctl ? p1 : (k == tgt ? pauli_x() : ident(2)));
            }
            g = add(off, on);
        }
        u = g * u;
    }
    return u;
}

// ---------------------------------------------------------------------------
// Random circuits
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline double random_angle(Rng& rng) { return std::uniform_real_distribution<double>(-2 * kPi, 2 * kPi)(rng); }

inline ir::Builtin random_builtin(Rng& rng) {
    return static_cast<ir::Builtin>(std::uniform_int_distribution<int>(0, 7)(rng));
}

inline ir::Instruction random_builtin_gate(Rng& rng, ir::QubitId q) {
    const auto b = random_builtin(rng);
    return ir::apply(ir::takes_angle(b) ? ir::GateKind::builtin(b, random_angle(rng)) : ir::GateKind::builtin(b),
                     {q});
}

template <typename T>
T pick(Rng& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

/// A random block over `qs` of at most `len` instructions. With `nested`
/// the block may contain Controlled and Around nodes down to `depth`.
inline ir::Block random_block(Rng& rng, const std::vector<ir::QubitId>& qs, std::size_t len, int depth,
                              bool nested = true) {
    ir::Block out;
    std::uniform_int_distribution<int> kind(0, nested && depth > 0 ? 3 : 0);
    const std::size_t count = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, len))(rng);
    for (std::size_t i = 0; i < count; ++i) {
        const int k = qs.size() < 2 ? 0 : kind(rng);
        if (k <= 1) {
            out.push_back(random_builtin_gate(rng, pick(rng, qs)));
        } else if (k == 2) {
            auto shuffled = qs;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const std::size_t nc =
                std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(2, shuffled.size() - 1))(rng);
            std::vector<ir::QubitId> cs(shuffled.begin(), shuffled.begin() + nc);
            std::vector<ir::QubitId> rest(shuffled.begin() + nc, shuffled.end());
            out.push_back(ir::controlled(cs, random_block(rng, rest, 2, depth - 1)));
        } else {
            out.push_back(ir::around(random_block(rng, qs, 2, depth - 1), random_block(rng, qs, 2, depth - 1)));
        }
    }
    return out;
}

inline std::vector<ir::QubitId> mains(std::size_t n, std::size_t first = 0) {
    std::vector<ir::QubitId> v;
    for (std::size_t i = first; i < first + n; ++i) {
        v.push_back(ir::QubitId::main(static_cast<std::uint32_t>(i)));
    }
    return v;
}

inline ir::Circuit circuit(std::size_t n, ir::Block b, std::string name = "t") {
    return ir::Circuit{.name = std::move(name), .num_main = n, .num_aux = 0, .instructions = std::move(b)};
}

/// Random signed permutation on the given qubits, built from X, CX, CCX
/// and Z / P phases. Every element is permutation-class.
inline ir::Block random_permutation_block(Rng& rng, const std::vector<ir::QubitId>& qs, std::size_t len) {
    ir::Block out;
    for (std::size_t i = 0; i < len; ++i) {
        auto s = qs;
        std::shuffle(s.begin(), s.end(), rng);
        const int k = std::uniform_int_distribution<int>(0, s.size() >= 3 ? 4 : (s.size() == 2 ? 3 : 1))(rng);
        switch (k) {
            case 0: out.push_back(ir::x(s[0])); break;
            case 1: out.push_back(ir::phase(random_angle(rng), s[0])); break;
            case 2: out.push_back(ir::cx(s[0], s[1])); break;
            case 3: out.push_back(ir::y(s[0])); break;
            default: out.push_back(ir::ccx(s[0], s[1], s[2])); break;
        }
    }
    return out;
}

/// Random diagonal: Z, RZ, P, and controlled phases.
inline ir::Block random_diagonal_block(Rng& rng, const std::vector<ir::QubitId>& qs, std::size_t len) {
    ir::Block out;
    for (std::size_t i = 0; i < len; ++i) {
        auto s = qs;
        std::shuffle(s.begin(), s.end(), rng);
        const int k = std::uniform_int_distribution<int>(0, s.size() >= 2 ? 3 : 2)(rng);
        switch (k) {
            case 0: out.push_back(ir::z(s[0])); break;
            case 1: out.push_back(ir::rz(random_angle(rng), s[0])); break;
            case 2: out.push_back(ir::phase(random_angle(rng), s[0])); break;
            default: out.push_back(ir::controlled({s[1]}, {ir::phase(random_angle(rng), s[0])})); break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Aux shapes
// ---------------------------------------------------------------------------

// Permute / phase / controlled-U / unpermute on the aux register, with the
// permutation controlled by the main qubits psi.
struct Shape {
    ir::Circuit circuit;
    UnitaryMatrix d;     // diagonal on the aux register
    UnitaryMatrix p;     // permutation on the aux register
    UnitaryMatrix u;     // target unitary
    std::size_t n, m, a;
};

inline Shape make_shape(Rng& rng, std::size_t n, std::size_t m, std::size_t a, const ir::Block* forced_p = nullptr) {
    std::vector<ir::QubitId> psi = mains(n), phi = mains(m, n), alpha;
    for (std::size_t k = 0; k < a; ++k) {
        alpha.push_back(ir::QubitId::aux(static_cast<std::uint32_t>(k)));
    }
    const ir::Block p = forced_p ? *forced_p : random_permutation_block(rng, alpha, 4);
    const ir::Block d = random_diagonal_block(rng, alpha, 3);
    ir::Block u = m > 0 ? random_block(rng, phi, 3, 1) : ir::Block{};
    ir::Block body = d;
    if (!u.empty()) {
        body.push_back(ir::controlled(alpha, u));
    }
    Shape s{.circuit = ir::Circuit{.name = "shape", .num_main = n + m, .num_aux = a, .instructions = {ir::aux_scope(alpha, {ir::around({ir::controlled(psi, p)}, body)})}},
            .d = ident(1), .p = ident(1), .u = ident(1), .n = n, .m = m, .a = a};
    auto to_local = [&](const ir::Block& b, std::size_t first, bool aux) {
        return ir::map_qubits(b, [&](ir::QubitId q) {
            return ir::QubitId::main(static_cast<std::uint32_t>(aux ? q.index : q.index - first));
        });
    };
    s.d = qaround::numerics::unitary(circuit(a, to_local(d, 0, true)));
    s.p = qaround::numerics::unitary(circuit(a, to_local(p, 0, true)));
    s.u = qaround::numerics::unitary(circuit(m, to_local(u, n, false)));
    return s;
}

/// Expected main-register map. With psi all ones the aux goes to p(0): D
/// adds d(p(0)) and U fires iff p(0) is all ones. Otherwise the aux stays
/// at 0 and only d(0) applies. P's own phase on |0> cancels against P^dag.
inline UnitaryMatrix expected_main_map(const Shape& s) {
    const std::size_t last = (std::size_t{1} << s.a) - 1;
    const auto spec = qaround::extract_permutation(s.p);
    const std::size_t k = spec.perm[0];
    const Complex idle = s.d(0, 0);
    const Complex fired = s.d(k, k);
    const UnitaryMatrix inner = k == last ? s.u : ident(s.u.dim());
    UnitaryMatrix m = controlled_block(s.n, inner);
    const std::size_t split = m.dim() - s.u.dim();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            m(r, c) *= r < split ? idle : fired;
        }
    }
    return m;
}

}  // namespace qtest
