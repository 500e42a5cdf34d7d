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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "slocc/exact.hpp"

namespace slocc {

using Index4 = std::array<std::size_t, 4>;

/// Amplitude tensor gamma_{ilmn}; indices are 0-based, absent entries are zero.
class StateTensor {
   public:
    StateTensor() = default;
    explicit StateTensor(Index4 dims);

    const Index4 &dims() const {
        return dims_;
    }
    std::size_t size() const {
        return dims_[0] * dims_[1] * dims_[2] * dims_[3];
    }
    GaussianRational amplitude(const Index4 &idx) const;
    void set(const Index4 &idx, const GaussianRational &value);
    void add(const Index4 &idx, const GaussianRational &value);
    const std::map<Index4, GaussianRational> &terms() const {
        return terms_;
    }
    bool is_zero() const {
        return terms_.empty();
    }
    /// Throws InvalidState for the zero tensor.
    void require_valid() const;

    StateTensor scaled(const GaussianRational &c) const;
    /// Ket text such as "|1111> + 2|1212>" with 1-based indices.
    std::string to_ket() const;

    friend bool operator==(const StateTensor &a, const StateTensor &b) {
        return a.dims_ == b.dims_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const StateTensor &a, const StateTensor &b) {
        return !(a == b);
    }

   private:
    void check_index(const Index4 &idx) const;
    Index4 dims_{1, 1, 1, 1};
    std::map<Index4, GaussianRational> terms_;
};

/// Signed terms `coeff? '|' idx (',' idx)* '>'`, 1-based indices.
StateTensor parse_ket(std::string_view text, const Index4 &dims);

/// order[k] is the original axis placed at arranged position k, so the arranged
/// tensor is (qubit, single, factor1, factor2).
struct Arrangement {
    std::array<int, 4> order{0, 1, 2, 3};
    bool is_identity() const {
        return order == std::array<int, 4>{0, 1, 2, 3};
    }
};

StateTensor permute_axes(const StateTensor &t, const std::array<int, 4> &order);
/// Axes are 0-based. Throws NoQubitAxis if the qubit axis does not have dimension 2.
std::pair<StateTensor, Arrangement> arrange_axes(const StateTensor &t, int qubit_axis, int single_axis);
/// Undo arrange_axes.
StateTensor restore_axes(const StateTensor &arranged, const Arrangement &arrangement);

enum class CompositeSide { Columns, Rows };

const char *side_name(CompositeSide side);

/// Columns iff L < M N; from L = M N on, the single particle indexes the columns
/// and the composite side moves to the rows.
CompositeSide composite_side_for(std::size_t l, std::size_t m, std::size_t n);

struct MatrixPair {
    Matrix gamma1;
    Matrix gamma2;
    CompositeSide side = CompositeSide::Columns;
    std::size_t single_dim = 0;
    std::size_t factor1 = 0;
    std::size_t factor2 = 0;
};

/// Composite index c = m * N + n (0-based), second factor fastest.
MatrixPair to_matrix_pair(const StateTensor &arranged);
StateTensor from_matrix_pair(const MatrixPair &pair);

struct LocalOperatorQuad {
    std::array<Matrix, 4> ops;

    static LocalOperatorQuad identity(const Index4 &dims);
    LocalOperatorQuad inverse() const;
    /// (this after other): applying `other` first, then this.
    LocalOperatorQuad compose(const LocalOperatorQuad &other) const;
};

StateTensor apply_slocc(const StateTensor &t, const LocalOperatorQuad &ops);

/// The pair action (t, p, q) . (G1, G2) = (sum_j t_1j p G_j q, sum_j t_2j p G_j q).
std::pair<Matrix, Matrix> apply_route(const Matrix &t, const Matrix &p, const Matrix &q, const Matrix &g1,
                                      const Matrix &g2);

/// Ranks of the four single-axis flattenings.
std::array<std::size_t, 4> local_ranks(const StateTensor &t);

/// Integer amplitudes in [0, bound], or Gaussian integers with parts in [-bound, bound].
StateTensor random_state(const Index4 &dims, long bound, std::uint64_t seed, bool gaussian = false);

/// Invertible operators with Gaussian-integer entries, parts in [-bound, bound].
LocalOperatorQuad random_invertible_quad(const Index4 &dims, long bound, std::uint64_t seed);

}  // namespace slocc
