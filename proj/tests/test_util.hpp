// Copyright 2026 The slocc4 Authors
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
#include <random>
#include <vector>

#include "slocc/exact.hpp"
#include "slocc/state.hpp"

namespace slocc::testing {

inline GaussianRational random_gaussian(std::mt19937_64 &rng, long bound, bool complex_entries = true) {
    std::uniform_int_distribution<long> d(-bound, bound);
    return complex_entries ? GaussianRational(d(rng), d(rng)) : GaussianRational(d(rng));
}

inline Matrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c, long bound = 3,
                            bool complex_entries = true) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = random_gaussian(rng, bound, complex_entries);
        }
    }
    return m;
}

inline Matrix random_invertible(std::mt19937_64 &rng, std::size_t n, long bound = 2, bool complex_entries = true) {
    while (true) {
        Matrix m = random_matrix(rng, n, n, bound, complex_entries);
        if (is_invertible(m)) {
            return m;
        }
    }
}

inline LocalOperatorQuad random_quad(std::mt19937_64 &rng, const Index4 &dims, long bound = 2,
                                     bool complex_entries = true) {
    LocalOperatorQuad q;
    for (int k = 0; k < 4; ++k) {
        q.ops[k] = random_invertible(rng, dims[k], bound, complex_entries);
    }
    return q;
}

// 2x2x2x4 state whose 4x4 pencil is P (Gamma1, Gamma2) Q = (I, diag(d)) with distinct
// integer d, so every eigenvalue is rational. Small integer amplitudes.
inline StateTensor rational_pencil_2224(std::mt19937_64 &rng) {
    std::vector<long> pool{-2, -1, 0, 1, 2, 3};
    std::shuffle(pool.begin(), pool.end(), rng);
    Matrix d(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        d(k, k) = pool[k];
    }
    Matrix p = random_invertible(rng, 4, 1, false);
    Matrix q = random_invertible(rng, 4, 1, false);
    MatrixPair pair{p * q, p * d * q, CompositeSide::Rows, 4, 2, 2};
    Arrangement arrangement;
    arrangement.order = {0, 3, 1, 2};
    return restore_axes(from_matrix_pair(pair), arrangement);
}

// Cofactor expansion; independent of the elimination code under test.
inline GaussianRational leibniz_det(const Matrix &m) {
    std::size_t n = m.rows();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return m(0, 0);
    }
    GaussianRational acc;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c).is_zero()) {
            continue;
        }
        Matrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            for (std::size_t k = 0, kk = 0; k < n; ++k) {
                if (k != c) {
                    minor(r - 1, kk++) = m(r, k);
                }
            }
        }
        GaussianRational term = m(0, c) * leibniz_det(minor);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace slocc::testing
