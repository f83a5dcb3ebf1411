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

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qaround/errors.hpp"
#include "qaround/linalg.hpp"

namespace qaround {

/// Algebraic class of a unitary. Diagonal refines Permutation (a diagonal is
/// a permutation with p(k) = k); General is always a safe answer.
enum class GateClass { Diagonal, Permutation, General };

inline std::string to_string(GateClass c) {
    switch (c) {
        case GateClass::Diagonal: return "Diagonal";
        case GateClass::Permutation: return "Permutation";
        case GateClass::General: return "General";
    }
    return "?";
}

/// True for Permutation and for its refinement Diagonal.
inline constexpr bool permutes(GateClass c) { return c != GateClass::General; }

/// Class of a product of two operators of the given classes.
inline constexpr GateClass compose(GateClass a, GateClass b) {
    if (a == GateClass::Diagonal && b == GateClass::Diagonal) {
        return GateClass::Diagonal;
    }
    if (permutes(a) && permutes(b)) {
        return GateClass::Permutation;
    }
    return GateClass::General;
}

/// sum_k e^{i theta_k} |k><k|
struct DiagonalSpec {
    std::vector<double> phases;

    [[nodiscard]] UnitaryMatrix to_matrix() const {
        UnitaryMatrix m(phases.size());
        for (std::size_t k = 0; k < phases.size(); ++k) {
            m(k, k) = std::polar(1.0, phases[k]);
        }
        return m;
    }
};

/// sum_k e^{i phi_k} |p(k)><k|
struct PermutationSpec {
    std::vector<std::size_t> perm;
    std::vector<double> phases;

    [[nodiscard]] UnitaryMatrix to_matrix() const {
        if (perm.size() != phases.size()) {
            throw DimensionMismatchError("permutation and phase lists differ in length");
        }
        std::vector<bool> hit(perm.size(), false);
        UnitaryMatrix m(perm.size());
        for (std::size_t k = 0; k < perm.size(); ++k) {
            if (perm[k] >= perm.size() || hit[perm[k]]) {
                throw NotPermutationError("index map is not a bijection");
            }
            hit[perm[k]] = true;
            m(perm[k], k) = std::polar(1.0, phases[k]);
        }
        return m;
    }
};

/// Reads p and phi back out of a permutation matrix. Phases lie in (-pi, pi].
inline PermutationSpec extract_permutation(const UnitaryMatrix& u, double tol = kTolerance) {
    const std::size_t n = u.dim();
    PermutationSpec spec{std::vector<std::size_t>(n), std::vector<double>(n)};
    std::vector<int> row_hits(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        int hits = 0;
        for (std::size_t r = 0; r < n; ++r) {
            if (std::abs(u(r, k)) > tol) {
                ++hits;
                ++row_hits[r];
                spec.perm[k] = r;
                double phi = std::arg(u(r, k));
                if (phi <= -std::numbers::pi + tol) {
                    phi += 2 * std::numbers::pi;
                }
                spec.phases[k] = phi;
            }
        }
        if (hits != 1) {
            throw NotPermutationError("column " + std::to_string(k) + " has " + std::to_string(hits) +
                                      " significant entries");
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        if (row_hits[r] != 1) {
            throw NotPermutationError("row " + std::to_string(r) + " has " +
                                      std::to_string(row_hits[r]) + " significant entries");
        }
    }
    return spec;
}

}  // namespace qaround
