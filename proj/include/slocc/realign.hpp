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

#include <optional>

#include "slocc/exact.hpp"

namespace slocc {

/// Target matrix is (m1 m2) x (n1 n2), read as an m1 x n1 grid of m2 x n2 blocks.
struct RealignmentShape {
    std::size_t m1 = 0, m2 = 0, n1 = 0, n2 = 0;
};

/// Column-stacking vectorization.
Matrix vec(const Matrix &m);

/// Row r holds vec(A_ij)^T for the r-th block, blocks taken row by row
/// (A11, A12, ..., A21, ...). Result is (m1 n1) x (m2 n2).
Matrix realign(const Matrix &m, const RealignmentShape &shape);

/// left (x) right == source; the first nonzero entry of left (row-major) is 1.
struct KroneckerFactors {
    Matrix left;
    Matrix right;
};

std::optional<KroneckerFactors> rank_one_factor(const Matrix &m, const RealignmentShape &shape);

/// Square case: m is (M N) x (M N), factors are M x M and N x N.
std::optional<KroneckerFactors> rank_one_factor(const Matrix &m, std::size_t M, std::size_t N);

}  // namespace slocc
