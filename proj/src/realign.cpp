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


#include "slocc/realign.hpp"

namespace slocc {

Matrix vec(const Matrix &m) {
    Matrix out(m.rows() * m.cols(), 1);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out(j * m.rows() + i, 0) = m(i, j);
        }
    }
    return out;
}

Matrix realign(const Matrix &m, const RealignmentShape &s) {
    if (m.rows() != s.m1 * s.m2 || m.cols() != s.n1 * s.n2) {
        throw Error(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()) + ", shape expects " +
                                                      std::to_string(s.m1 * s.m2) + "x" + std::to_string(s.n1 * s.n2));
    }
    Matrix out(s.m1 * s.n1, s.m2 * s.n2);
    for (std::size_t bi = 0; bi < s.m1; ++bi) {
        for (std::size_t bj = 0; bj < s.n1; ++bj) {
            std::size_t r = bi * s.n1 + bj;
            for (std::size_t j = 0; j < s.n2; ++j) {
                for (std::size_t i = 0; i < s.m2; ++i) {
                    const auto &v = m(bi * s.m2 + i, bj * s.n2 + j);
                    if (!v.is_zero()) {
                        out(r, j * s.m2 + i) = v;
                    }
                }
            }
        }
    }
    return out;
}

std::optional<KroneckerFactors> rank_one_factor(const Matrix &m, const RealignmentShape &s) {
    Matrix r = realign(m, s);
    if (rank(r) != 1) {
        return std::nullopt;
    }
    std::size_t r0 = 0, c0 = 0;
    bool found = false;
    for (std::size_t i = 0; i < r.rows() && !found; ++i) {
        for (std::size_t j = 0; j < r.cols() && !found; ++j) {
            if (!r(i, j).is_zero()) {
                r0 = i;
                c0 = j;
                found = true;
            }
        }
    }
    // r0 is the first nonzero row, so left's first nonzero entry sits there.
    GaussianRational pivot = r(r0, c0);
    KroneckerFactors f{Matrix(s.m1, s.n1), Matrix(s.m2, s.n2)};
    for (std::size_t k = 0; k < r.rows(); ++k) {
        f.left(k / s.n1, k % s.n1) = r(k, c0) / pivot;
    }
    for (std::size_t k = 0; k < r.cols(); ++k) {
        f.right(k % s.m2, k / s.m2) = r(r0, k);
    }
    if (kron(f.left, f.right) != m) {
        throw Error(ErrorCode::Internal, "Kronecker factors failed to reconstruct the source");
    }
    if (m.rows() == m.cols() && s.m1 == s.n1 && is_invertible(m) &&
        !(is_invertible(f.left) && is_invertible(f.right))) {
        throw Error(ErrorCode::Internal, "invertible source produced a singular Kronecker factor");
    }
    return f;
}

std::optional<KroneckerFactors> rank_one_factor(const Matrix &m, std::size_t M, std::size_t N) {
    return rank_one_factor(m, RealignmentShape{M, N, M, N});
}

}  // namespace slocc
