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

#include <string>
#include <vector>

#include "slocc/exact.hpp"

namespace slocc {

struct JordanBlock {
    GaussianRational eigenvalue;
    std::size_t size = 1;
    friend bool operator==(const JordanBlock &a, const JordanBlock &b) {
        return a.eigenvalue == b.eigenvalue && a.size == b.size;
    }
};

struct JordanForm {
    std::vector<JordanBlock> blocks;
    /// similarity^-1 * m * similarity is the Jordan matrix of `blocks`.
    Matrix similarity;
};

/// Upper bidiagonal J_n(lambda) blocks, in the given order.
Matrix jordan_matrix(const std::vector<JordanBlock> &blocks);

/// Blocks sorted by eigenvalue (field order), then size descending.
JordanForm jordan_form(const Matrix &m);

enum class BlockKind { LeftSingular, RightSingular, Infinite, Finite };

/// One Kronecker block of the pencil (G1, G2), eigenvalue x meaning G2 - x G1 singular.
///   RightSingular eps: eps x (eps+1), G1 = [I | 0], G2 = [0 | I]
///   LeftSingular eta:  (eta+1) x eta, G1 = [I ; 0], G2 = [0 ; I]
///   Infinite n:        G1 = J_n(0), G2 = I
///   Finite (lambda,n): G1 = I, G2 = J_n(lambda)
struct PencilBlock {
    BlockKind kind = BlockKind::Finite;
    std::size_t size = 1;
    GaussianRational eigenvalue;

    static PencilBlock left(std::size_t eta) {
        return {BlockKind::LeftSingular, eta, {}};
    }
    static PencilBlock right(std::size_t eps) {
        return {BlockKind::RightSingular, eps, {}};
    }
    static PencilBlock infinite(std::size_t n) {
        return {BlockKind::Infinite, n, {}};
    }
    static PencilBlock finite(const GaussianRational &lambda, std::size_t n) {
        return {BlockKind::Finite, n, lambda};
    }

    std::size_t rows() const;
    std::size_t cols() const;
    std::string to_string() const;

    friend bool operator==(const PencilBlock &a, const PencilBlock &b) {
        return a.kind == b.kind && a.size == b.size && a.eigenvalue == b.eigenvalue;
    }
};

/// Canonical order: left by eta ascending, right by eps ascending, infinite by size
/// descending, finite by eigenvalue then size descending.
bool block_less(const PencilBlock &a, const PencilBlock &b);
void sort_blocks(std::vector<PencilBlock> &blocks);

/// Block-diagonal layout of `blocks` in the given order.
std::pair<Matrix, Matrix> block_layout(const std::vector<PencilBlock> &blocks);

struct PencilCanon {
    std::vector<PencilBlock> blocks;
    Matrix p;
    Matrix q;
    Matrix canon1;
    Matrix canon2;
};

/// Kronecker canonical form with exact witnesses: p * g1 * q = canon1, p * g2 * q = canon2.
/// Throws ZeroPencil when both matrices vanish and IrreducibleFactor when an
/// eigenvalue leaves Q(i).
PencilCanon kcf(const Matrix &g1, const Matrix &g2);

/// max over s of rank(g1 + s g2).
std::size_t normal_rank(const Matrix &g1, const Matrix &g2);

std::string blocks_to_string(const std::vector<PencilBlock> &blocks);

inline std::ostream &operator<<(std::ostream &os, const PencilBlock &b) {
    return os << b.to_string();
}
inline std::ostream &operator<<(std::ostream &os, const JordanBlock &b) {
    return os << "J" << b.size << "(" << b.eigenvalue.to_string() << ")";
}

}  // namespace slocc
