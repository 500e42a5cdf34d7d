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
#include <set>
#include <string>
#include <vector>

#include "slocc/exact.hpp"
#include "slocc/pencil.hpp"
#include "slocc/state.hpp"

namespace slocc {

/// A point of the projective line over Q(i).
struct EigenPoint {
    bool infinite = false;
    GaussianRational value;

    static EigenPoint at_infinity() {
        return {true, {}};
    }
    std::string to_string() const {
        return infinite ? "inf" : value.to_string();
    }
    friend bool operator==(const EigenPoint &a, const EigenPoint &b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
};

/// x -> (c + d x) / (a + b x), the eigenvalue action of T = [[a, b], [c, d]] on the
/// pencil (a G1 + b G2, c G1 + d G2).
struct MobiusMap {
    GaussianRational a = 1, b = 0, c = 0, d = 1;

    static MobiusMap from_matrix(const Matrix &t);
    Matrix matrix() const;
    EigenPoint operator()(const EigenPoint &x) const;
    /// (this after other)
    MobiusMap compose(const MobiusMap &other) const;
    MobiusMap inverse() const;
    bool is_identity() const;
    /// Same map up to a nonzero scalar.
    bool same_map(const MobiusMap &o) const;
};

/// Images of the pencil blocks under T: finite and infinite blocks move, singular ones stay.
std::vector<PencilBlock> transform_blocks(const std::vector<PencilBlock> &blocks, const MobiusMap &m);

struct MobiusNormalization {
    std::vector<PencilBlock> blocks;  // canonical order, anchors at inf, 0, 1
    MobiusMap map;
    std::size_t anchors = 0;  // distinct eigenpoints pinned (at most 3)
    std::vector<GaussianRational> free_values;  // eigenvalues left free, ascending
    bool continuous_freedom() const {
        return anchors < 3;
    }
};

/// Sends the highest-priority eigenpoints (largest Jordan block, then block count,
/// then multiplicity) to inf, 0, 1. Ties are settled by taking the smallest
/// resulting block list, so the outcome depends only on the orbit.
MobiusNormalization mobius_normalize(const std::vector<PencilBlock> &blocks);

/// {x, 1/x, 1-x, x/(x-1), 1/(1-x), 1-1/x}; throws DegenerateLambda for 0 and 1.
std::set<GaussianRational, FieldLess> residual_orbit(const GaussianRational &x);
GaussianRational orbit_minimum(const GaussianRational &x);

/// l2 (l1 - l3) / (l3 (l1 - l2)), the cross ratio of (0, l1, l2, l3).
GaussianRational cross_ratio(const GaussianRational &l1, const GaussianRational &l2, const GaussianRational &l3);

struct RouteTriple {
    Matrix t;
    Matrix p;
    Matrix q;
    CompositeSide side = CompositeSide::Columns;
};

struct StandardForm {
    std::vector<PencilBlock> blocks;
    Matrix e_part;
    Matrix j_part;
    MobiusNormalization normalization;
};

struct FamilySignature {
    std::string shape;      // e.g. "2x4x3x2:columns"
    std::string skeleton;   // blocks with anchors literal and free eigenvalues as f1, f2, ...
    std::vector<GaussianRational> invariants;
    std::string serialize() const;
    friend bool operator==(const FamilySignature &a, const FamilySignature &b) {
        return a.serialize() == b.serialize();
    }
};

/// Standard form of a matrix pair and the route (t, p, q) reaching it.
std::pair<StandardForm, RouteTriple> standard_form(const MatrixPair &pair);
/// Arranges with qubit axis 0 and single axis 1.
std::pair<StandardForm, RouteTriple> standard_form(const StateTensor &arranged);

FamilySignature signature(const StandardForm &sf, const MatrixPair &pair);

/// Linear space of (P, Q) with (t, P, Q) . source = target, i.e. P Delta_k Q = target_k
/// where Delta = t . source. Solved as Delta_k Q = X target_k with X = P^-1.
struct RouteSpace {
    std::size_t rows = 0;  // size of X
    std::size_t cols = 0;  // size of Q
    Matrix basis;          // columns: vec(X) (row-major) followed by vec(Q)
    std::size_t dimension() const {
        return basis.cols();
    }
    /// (X, Q) for the coefficient vector.
    std::pair<Matrix, Matrix> instantiate(const std::vector<GaussianRational> &coeffs) const;
};

RouteSpace route_space(const Matrix &t, const Matrix &src1, const Matrix &src2, const Matrix &dst1,
                       const Matrix &dst2);

/// Some invertible (P, Q) in the space, or nothing if only singular members were met.
std::optional<std::pair<Matrix, Matrix>> invertible_member(const RouteSpace &space, std::uint64_t seed = 1,
                                                           int attempts = 64);

struct MobiusElement {
    MobiusMap map;
    Matrix s1;
    Matrix s2;
    Matrix s3;
};

/// Transformations (S1, S2, S3) with S1 . (S2 E S3, S2 J S3) = (E, J).
struct StabilizerDescription {
    Matrix e;
    Matrix j;
    /// Pairs with T = I: the commutant {(X, Y) : X E = E Y, X J = J Y}; S2 = X^-1, S3 = Y.
    RouteSpace commutant;
    /// Every Moebius map permuting the eigenpoints with their block structure, when
    /// that group is finite; the identity is always first.
    std::vector<MobiusElement> mobius;
    bool continuous_mobius = false;
    /// Moebius maps fixing the anchors, up to scale, when the group is continuous:
    /// 0 anchors: all of GL2; 1 anchor (inf): b = 0; 2 anchors (inf, 0): b = c = 0.
    std::size_t anchors = 0;

    /// Compensating (S2, S3) for an arbitrary T, if T preserves the pencil.
    std::optional<MobiusElement> instantiate(const Matrix &t) const;
    /// Parameter names of the commutant, p1..pk.
    std::vector<std::string> parameter_names() const;
};

StabilizerDescription stabilizer(const Matrix &e, const Matrix &j);

/// Moebius maps (up to scale) carrying the eigenpoint configuration of `from` onto `to`
/// with matching block structure. Finite when there are at least three eigenpoints;
/// otherwise only the identity is reported (when the lists agree).
std::vector<MobiusMap> mobius_between(const std::vector<PencilBlock> &from, const std::vector<PencilBlock> &to);

}  // namespace slocc
