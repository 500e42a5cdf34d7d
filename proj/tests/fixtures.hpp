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


// Worked examples used across the test suites.

#pragma once

#include <string>

#include "slocc/exact.hpp"
#include "slocc/state.hpp"

namespace slocc::fixtures {

// Random 2x4x3x2 state with its printed matrix pair and reduction to (Lambda, B).
inline const char *kRandom2432Ket =
    "|1111> + |1112> + |1122> + |1131> + |1212> + |1312> + |1332> + |1422> + |1432> + |2121> + |2122> + "
    "|2131> + |2211> + |2221> + |2222> + |2232> + |2311> + |2321> + |2322> + |2332> + |2411> + |2422>";

inline Matrix gamma1_2432() {
    return {{1, 1, 0, 1, 1, 0}, {0, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 1}, {0, 0, 0, 1, 0, 1}};
}
inline Matrix gamma2_2432() {
    return {{0, 0, 1, 1, 1, 0}, {1, 0, 1, 1, 0, 1}, {1, 0, 1, 1, 0, 1}, {1, 0, 0, 1, 0, 0}};
}
inline Matrix p0_2432() {
    return {{0, 1, -1, 0}, {1, 2, -3, 2}, {0, -1, 2, -1}, {1, 1, -2, 1}};
}
inline Matrix q0_2432() {
    return {{0, -1, 0, 2, 0, -1}, {1, 1, 1, -1, 0, 0}, {1, 0, 0, 0, 1, 0},
            {0, 1, 0, -1, 0, 0},  {-1, -1, 0, 1, 0, 1}, {-1, 0, 0, 0, 0, 0}};
}
inline Matrix lambda_2432() {
    return {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}};
}
inline Matrix b_2432() {
    return {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}};
}

// Unipotent stabilizer family of (Lambda, B); T acts as (G1 + alpha G2, G2).
inline Matrix s1_2432(const GaussianRational &a) {
    return {{1, a}, {0, 1}};
}
inline Matrix s2_2432(const GaussianRational &a) {
    return {{1, 0, 0, 0}, {0, 1, 0, a}, {0, 0, 1, 0}, {0, 0, 0, 1}};
}
inline Matrix s3_2432(const GaussianRational &a) {
    return {{1, 0, 0, 0, 0, 0}, {0, 1, 0, -2 * a, 0, a * a}, {0, 0, 1, 0, -a, 0},
            {0, 0, 0, 1, 0, -a},  {0, 0, 0, 0, 1, 0},           {0, 0, 0, 0, 0, 1}};
}

struct LowerParams {
    GaussianRational a11, a21, a22, a31, a32, a33, a34;
};

// Row/column family (S, S'). The (3,2) entry of S carries a minus sign; with the
// plus sign the pair is not fixed.
inline Matrix s_2432(const LowerParams &p) {
    GaussianRational z;
    return {{p.a11.reciprocal(), z, z, z},
            {-p.a21 / (p.a11 * p.a22), p.a22.reciprocal(), z, z},
            {(p.a21 * p.a32 - p.a22 * p.a31) / (p.a11 * p.a22 * p.a33), -p.a32 / (p.a22 * p.a33),
             p.a33.reciprocal(), -p.a34 / (p.a22 * p.a33)},
            {z, z, z, p.a22.reciprocal()}};
}
inline Matrix s_prime_2432(const LowerParams &p) {
    GaussianRational z;
    return {{p.a11, z, z, z, z, z},         {p.a21, p.a22, z, z, z, z},     {p.a31, p.a32, p.a33, p.a34, z, z},
            {z, z, z, p.a22, z, z},         {z, z, z, p.a32, p.a33, p.a34}, {z, z, z, z, z, p.a22}};
}

// The 2x4x4 state |111> + |122> + |133> + |144> + l1|211> + l2|222> + l3|233>,
// embedded as 2x4x4x1.
inline StateTensor three_lambda(const GaussianRational &l1, const GaussianRational &l2,
                                const GaussianRational &l3) {
    StateTensor t({2, 4, 4, 1});
    for (std::size_t k = 0; k < 4; ++k) {
        t.set({0, k, k, 0}, 1);
    }
    t.set({1, 0, 0, 0}, l1);
    t.set({1, 1, 1, 0}, l2);
    t.set({1, 2, 2, 0}, l3);
    return t;
}

// psi(lambda): Gamma1 = diag(0,1,lambda,1), Gamma2 = diag(1,1,1,0) on the composite
// rows of a 2x2x2x4 state, stored as gamma_{i m n l} (single particle last).
inline StateTensor psi_lambda_2224(const GaussianRational &lambda) {
    StateTensor t({2, 2, 2, 4});
    t.set({0, 0, 1, 1}, 1);
    t.set({0, 1, 0, 2}, lambda);
    t.set({0, 1, 1, 3}, 1);
    t.set({1, 0, 0, 0}, 1);
    t.set({1, 0, 1, 1}, 1);
    t.set({1, 1, 0, 2}, 1);
    return t;
}

// Same pair read as a tripartite 2x4x4 state embedded as 2x4x4x1.
inline StateTensor psi_lambda_244(const GaussianRational &lambda) {
    StateTensor t({2, 4, 4, 1});
    t.set({0, 1, 1, 0}, 1);
    t.set({0, 2, 2, 0}, lambda);
    t.set({0, 3, 3, 0}, 1);
    t.set({1, 0, 0, 0}, 1);
    t.set({1, 1, 1, 0}, 1);
    t.set({1, 2, 2, 0}, 1);
    return t;
}

// Residual symmetry generators of psi(lambda). T_F is diag(1/lambda, 1): with the
// printed upper-right 1 the map does not reach psi(1/lambda).
inline Matrix t_g() {
    return {{-1, 1}, {0, 1}};
}
inline Matrix p_g() {
    return {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
}
inline Matrix q_g() {
    return {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
}
inline Matrix t_f(const GaussianRational &lambda) {
    return {{lambda.reciprocal(), 0}, {0, 1}};
}
inline Matrix p_f(const GaussianRational &lambda) {
    return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, lambda}};
}
inline Matrix q_f() {
    return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
}

// Five 2x2x2x2 family representatives.
inline const char *kFamilies2222[5] = {
    "|1111> + |1222> + |2111>",
    "|1111> + |1222> + |2122>",
    "|1111> + |1212> + |2221>",
    "|1111> + |1212> + |2112> + |2221>",
    "|1111> + |1212> + |2121> + |2222>",
};

}  // namespace slocc::fixtures
