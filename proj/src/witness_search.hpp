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

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "slocc/exact.hpp"
#include "slocc/state.hpp"

namespace slocc::detail {

/// Best rational approximation with denominator <= max_den, if within tol.
std::optional<mpq_class> rationalize(double x, long max_den = 1000000, double tol = 1e-8);
std::optional<GaussianRational> rationalize(std::complex<double> z, long max_den = 1000000, double tol = 1e-8);

/// Exact d-th root in Q(i), if one exists.
std::optional<GaussianRational> exact_root(const GaussianRational &s, long d);

struct NumericSearchOptions {
    std::uint64_t seed = 1;
    int restarts = 24;
    int max_iterations = 400;
    int als_sweeps = 30;
    std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
    /// When nonempty, restarts cycle through these qubit operators and keep them fixed.
    std::vector<Matrix> fixed_t;
};

struct NumericSearchResult {
    std::optional<LocalOperatorQuad> witness;
    int restarts = 0;
    int converged = 0;
    int rationalization_failures = 0;
};

/// Levenberg-Marquardt on (A1 x A2 x A3 x A4) a = b over C, then rational
/// reconstruction of A1, A3, A4, an exact solve for A2 and exact verification.
NumericSearchResult numeric_witness_search(const StateTensor &a, const StateTensor &b,
                                           const NumericSearchOptions &options);

/// Same goal through a flattening of the state: a pair of local operators must map
/// the row space of one flattening onto the other's; that bilinear system is solved
/// numerically, rationalized, and the complementary Kronecker factor is recovered exactly.
NumericSearchResult subspace_witness_search(const StateTensor &a, const StateTensor &b,
                                            const NumericSearchOptions &options);

/// Kempf-Ness route: both states are scaled to critical form (all one-party marginals
/// proportional to the identity), the residual unitary freedom is read off the
/// eigenvectors of two-party marginals, and the result is rationalized and completed.
NumericSearchResult balanced_witness_search(const StateTensor &a, const StateTensor &b,
                                            const NumericSearchOptions &options);

/// Exact solve for the axis-1 operator with the other three fixed.
std::optional<Matrix> solve_single_factor(const StateTensor &a, const StateTensor &b, const LocalOperatorQuad &quad);

/// A linear family of coefficient vectors (exact basis, pivot entries 1).
struct RankOneFamily {
    std::vector<std::vector<GaussianRational>> basis;
};

/// Families of coefficient vectors c for which sum_i c_i basis[i] is numerically rank
/// one: eigenspaces of a random projection of the pencil a^T M(c) = mu b^T M(c),
/// rationalized after pivoted reduction. Callers verify members exactly.
std::vector<RankOneFamily> rank_one_families(const std::vector<Matrix> &basis, std::uint64_t seed);

}  // namespace slocc::detail
