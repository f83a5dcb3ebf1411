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

/// @file linalg.hpp
/// Dense complex matrices and state vectors backing the equivalence oracle.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "qaround/errors.hpp"
#include "qaround/ir.hpp"

namespace qaround {

using Complex = std::complex<double>;

/// Shared "is zero" / "is equal" threshold of the oracle and the classifier.
inline constexpr double kTolerance = 1e-9;

inline constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t log2_exact(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) {
        ++k;
    }
    return k;
}

/// Square complex matrix of power-of-two side, row-major.
class UnitaryMatrix {
public:
    UnitaryMatrix() = default;

    explicit UnitaryMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
        if (!is_power_of_two(dim)) {
            throw DimensionMismatchError("matrix side must be a power of two, got " +
                                         std::to_string(dim));
        }
    }

    UnitaryMatrix(std::size_t dim, std::vector<Complex> entries) : UnitaryMatrix(dim) {
        if (entries.size() != dim * dim) {
            throw DimensionMismatchError("entry count does not match matrix side");
        }
        data_ = std::move(entries);
    }

    static UnitaryMatrix identity(std::size_t dim) {
        UnitaryMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t num_qubits() const { return log2_exact(dim_); }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    [[nodiscard]] std::span<Complex> row(std::size_t r) { return {data_.data() + r * dim_, dim_}; }
    [[nodiscard]] std::span<const Complex> entries() const { return data_; }

    [[nodiscard]] UnitaryMatrix adjoint() const {
        UnitaryMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
        if (a.dim_ != b.dim_) {
            throw DimensionMismatchError("matrix product of different sizes");
        }
        const std::size_t n = a.dim_;
        UnitaryMatrix out(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend UnitaryMatrix operator*(Complex s, UnitaryMatrix m) {
        for (auto& e : m.data_) {
            e *= s;
        }
        return m;
    }

    /// Largest entrywise modulus of (this - other).
    [[nodiscard]] double max_abs_diff(const UnitaryMatrix& other) const {
        if (dim_ != other.dim_) {
            throw DimensionMismatchError("comparing matrices of different sizes");
        }
        double d = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            d = std::max(d, std::abs(data_[i] - other.data_[i]));
        }
        return d;
    }

    [[nodiscard]] double frobenius_distance(const UnitaryMatrix& other) const {
        double s = 0.0;
        for (std::size_t i = 0; i < data_.size(); ++i) {
            s += std::norm(data_[i] - other.data_[i]);
        }
        return std::sqrt(s);
    }

    /// U U^dag == I, measured in Frobenius norm.
    [[nodiscard]] bool is_unitary(double tol = kTolerance) const {
        return ((*this) * adjoint()).frobenius_distance(identity(dim_)) <= tol;
    }

    bool operator==(const UnitaryMatrix&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

class StateVector {
public:
    explicit StateVector(std::size_t num_qubits)
        : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
        amps_[0] = 1.0;
    }

    StateVector(std::size_t num_qubits, std::vector<Complex> amps)
        : num_qubits_(num_qubits), amps_(std::move(amps)) {
        if (amps_.size() != (std::size_t{1} << num_qubits)) {
            throw DimensionMismatchError("amplitude count does not match qubit count");
        }
    }

    static StateVector basis(std::size_t num_qubits, std::size_t index) {
        StateVector s(num_qubits);
        s.amps_[0] = 0.0;
        s.amps_.at(index) = 1.0;
        return s;
    }

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }
    Complex& operator[](std::size_t i) { return amps_[i]; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    [[nodiscard]] double max_abs_diff(const StateVector& other) const {
        if (size() != other.size()) {
            throw DimensionMismatchError("comparing states of different sizes");
        }
        double d = 0.0;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            d = std::max(d, std::abs(amps_[i] - other.amps_[i]));
        }
        return d;
    }

private:
    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

inline StateVector operator*(const UnitaryMatrix& u, const StateVector& s) {
    if (u.dim() != s.size()) {
        throw DimensionMismatchError("matrix and state sizes differ");
    }
    std::vector<Complex> out(s.size());
    for (std::size_t r = 0; r < u.dim(); ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < u.dim(); ++c) {
            acc += u(r, c) * s[c];
        }
        out[r] = acc;
    }
    return StateVector(s.num_qubits(), std::move(out));
}

/// 2x2 matrix of a built-in gate.
inline UnitaryMatrix builtin_matrix(ir::Builtin b, double angle = 0.0) {
    using ir::Builtin;
    const Complex i{0.0, 1.0};
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const double r = 1.0 / std::numbers::sqrt2;
    switch (b) {
        case Builtin::X: return UnitaryMatrix(2, {0, 1, 1, 0});
        case Builtin::Y: return UnitaryMatrix(2, {0, -i, i, 0});
        case Builtin::Z: return UnitaryMatrix(2, {1, 0, 0, -1});
        case Builtin::H: return UnitaryMatrix(2, {r, r, r, -r});
        case Builtin::RX: return UnitaryMatrix(2, {c, -i * s, -i * s, c});
        case Builtin::RY: return UnitaryMatrix(2, {c, -s, s, c});
        case Builtin::RZ: return UnitaryMatrix(2, {std::exp(-i * (angle / 2)), 0, 0, std::exp(i * (angle / 2))});
        case Builtin::P: return UnitaryMatrix(2, {1, 0, 0, std::exp(i * angle)});
    }
    throw UnknownGateError("unknown built-in gate");
}

/// Left-multiplies `u` by gate `g` embedded on `target_bits`, restricted to
/// rows whose `ctrl_mask` bits are all set (identity elsewhere).
///
/// `target_bits[0]` is the bit position of g's most significant qubit. Bit
/// positions count from the least significant end of the row index.
inline void left_apply(UnitaryMatrix& u, const UnitaryMatrix& g, std::span<const std::size_t> target_bits,
                       std::uint64_t ctrl_mask) {
    const std::size_t t = target_bits.size();
    const std::size_t k = std::size_t{1} << t;
    if (g.dim() != k) {
        throw DimensionMismatchError("gate size does not match its target count");
    }
    std::uint64_t target_mask = 0;
    for (auto b : target_bits) {
        target_mask |= std::uint64_t{1} << b;
    }
    // offsets[j]: row offset selecting local basis state j of the gate.
    std::vector<std::uint64_t> offsets(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t q = 0; q < t; ++q) {
            if ((j >> (t - 1 - q)) & 1U) {
                offsets[j] |= std::uint64_t{1} << target_bits[q];
            }
        }
    }
    const std::size_t n = u.dim();
    std::vector<Complex> scratch(k);
    for (std::uint64_t base = 0; base < n; ++base) {
        if ((base & target_mask) != 0 || (base & ctrl_mask) != ctrl_mask) {
            continue;
        }
        if (k == 2) {
            auto r0 = u.row(base);
            auto r1 = u.row(base | offsets[1]);
            const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
            for (std::size_t col = 0; col < n; ++col) {
                const Complex a = r0[col];
                const Complex b = r1[col];
                r0[col] = g00 * a + g01 * b;
                r1[col] = g10 * a + g11 * b;
            }
            continue;
        }
        for (std::size_t col = 0; col < n; ++col) {
            for (std::size_t j = 0; j < k; ++j) {
                scratch[j] = u(base | offsets[j], col);
            }
            for (std::size_t r = 0; r < k; ++r) {
                Complex acc{};
                for (std::size_t j = 0; j < k; ++j) {
                    acc += g(r, j) * scratch[j];
                }
                u(base | offsets[r], col) = acc;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Equivalence
// ---------------------------------------------------------------------------

enum class EquivalenceMode { Exact, GlobalPhase };

/// Divides by the first entry (row-major) of magnitude > tol.
inline UnitaryMatrix canonicalize_phase(const UnitaryMatrix& u, double tol = kTolerance) {
    for (const auto& e : u.entries()) {
        if (std::abs(e) > tol) {
            return (1.0 / e) * u;
        }
    }
    return u;
}

inline bool equivalent(const UnitaryMatrix& u, const UnitaryMatrix& v, EquivalenceMode mode,
                       double tol = kTolerance) {
    if (u.dim() != v.dim()) {
        throw DimensionMismatchError("equivalence check of different sizes");
    }
    if (mode == EquivalenceMode::Exact) {
        return u.max_abs_diff(v) <= tol;
    }
    return canonicalize_phase(u, tol).max_abs_diff(canonicalize_phase(v, tol)) <= tol;
}

/// Exactly one entry of magnitude > tol in every row and every column.
inline bool is_permutation_matrix(const UnitaryMatrix& u, double tol = kTolerance) {
    const std::size_t n = u.dim();
    std::vector<int> col_hits(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        int row_hits = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (std::abs(u(r, c)) > tol) {
                ++row_hits;
                ++col_hits[c];
            }
        }
        if (row_hits != 1) {
            return false;
        }
    }
    for (int h : col_hits) {
        if (h != 1) {
            return false;
        }
    }
    return true;
}

inline bool is_diagonal_matrix(const UnitaryMatrix& u, double tol = kTolerance) {
    for (std::size_t r = 0; r < u.dim(); ++r) {
        for (std::size_t c = 0; c < u.dim(); ++c) {
            if (r != c && std::abs(u(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qaround
