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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "slocc/decide.hpp"
#include "test_util.hpp"

namespace slocc {
namespace {

using GR = GaussianRational;
using testing::random_quad;

DecideOptions axes(int qubit, int single) {
    DecideOptions o;
    o.qubit_axis = qubit;
    o.single_axis = single;
    return o;
}

TEST(Decide, PsiTwoAndMinusOneAreInequivalentAsFourPartite) {
    StateTensor a = fixtures::psi_lambda_2224(2);
    StateTensor b = fixtures::psi_lambda_2224(-1);
    EXPECT_TRUE(same_family(a, b, 0, 3));
    Verdict v = decide_equivalence(a, b, axes(0, 3));
    ASSERT_EQ(v.kind, VerdictKind::Inequivalent) << to_json(v).dump(1);
    EXPECT_TRUE(v.reason == InequivalenceReason::MinorInfeasible || v.reason == InequivalenceReason::OrbitExhausted);
    if (v.reason == InequivalenceReason::MinorInfeasible) {
        bool certified = false;
        for (const auto &e : v.diagnostics["elements"]) {
            certified = certified || e.contains("certificate");
        }
        EXPECT_TRUE(certified);
    }
    // Same verdict kind in the other direction.
    EXPECT_EQ(decide_equivalence(b, a, axes(0, 3)).kind, VerdictKind::Inequivalent);
}

TEST(Decide, TripartiteEmbeddingIsEquivalent) {
    StateTensor a = fixtures::psi_lambda_244(2);
    StateTensor b = fixtures::psi_lambda_244(GR(1) / GR(2));
    EXPECT_TRUE(same_family(a, b));
    Verdict v = decide_equivalence(a, b);
    ASSERT_EQ(v.kind, VerdictKind::Equivalent) << to_json(v).dump(1);
    EXPECT_TRUE(verify_witness(a, b, *v.witness));
    // The F/G generators give a route of their own.
    auto r = route(a, b);
    ASSERT_TRUE(r.has_value());
}

TEST(Decide, RandomOrbitPairs) {
    std::mt19937_64 rng(11);
    for (const Index4 &dims : {Index4{2, 4, 3, 2}, Index4{2, 4, 4, 2}, Index4{2, 4, 3, 3}}) {
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            StateTensor a = random_state(dims, 2, seed * 31 + dims[3]);
            StateTensor b = apply_slocc(a, random_quad(rng, dims));
            Verdict v = decide_equivalence(a, b);
            ASSERT_EQ(v.kind, VerdictKind::Equivalent) << to_json(v).dump(1);
            EXPECT_TRUE(verify_witness(a, b, *v.witness));
        }
    }
}

TEST(Decide, RationalPencilOrbitPairs) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 3; ++k) {
        StateTensor a = testing::rational_pencil_2224(rng);
        StateTensor b = apply_slocc(a, random_quad(rng, a.dims()));
        Verdict v = decide_equivalence(a, b, axes(0, 3));
        ASSERT_EQ(v.kind, VerdictKind::Equivalent) << to_json(v).dump(1);
        EXPECT_TRUE(verify_witness(a, b, *v.witness));
        // Finitely many Moebius elements and a small route space: settled exactly.
        EXPECT_EQ(v.diagnostics["stage"], "exact");
        EXPECT_EQ(v.diagnostics["continuous_mobius"], false);
    }
}

TEST(Decide, WitnessUsesOriginalParticleOrder) {
    std::mt19937_64 rng(3);
    // Qubit is particle 3, single particle is particle 1.
    StateTensor a = random_state({4, 3, 2, 2}, 2, 9);
    StateTensor b = apply_slocc(a, random_quad(rng, a.dims()));
    Verdict v = decide_equivalence(a, b, axes(2, 0));
    ASSERT_EQ(v.kind, VerdictKind::Equivalent) << to_json(v).dump(1);
    EXPECT_EQ(v.witness->ops[0].rows(), 4u);
    EXPECT_EQ(v.witness->ops[2].rows(), 2u);
    EXPECT_TRUE(verify_witness(a, b, *v.witness));
}

TEST(Decide, ReflexiveAndScalar) {
    StateTensor a = random_state({2, 4, 3, 2}, 2, 4);
    Verdict v = decide_equivalence(a, a);
    ASSERT_EQ(v.kind, VerdictKind::Equivalent);
    EXPECT_TRUE(verify_witness(a, a, LocalOperatorQuad::identity(a.dims())));
    StateTensor twice = a.scaled(2);
    EXPECT_FALSE(verify_witness(a, twice, LocalOperatorQuad::identity(a.dims())));
    Verdict s = decide_equivalence(a, twice);
    ASSERT_EQ(s.kind, VerdictKind::Equivalent);
    EXPECT_EQ(s.witness->ops[0], Matrix::identity(2) * GR(2));
}

TEST(Decide, FamiliesOf2222AreSeparatedBySignature) {
    std::vector<StateTensor> reps;
    for (const char *ket : fixtures::kFamilies2222) {
        reps.push_back(parse_ket(ket, {2, 2, 2, 2}));
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = 0; j < reps.size(); ++j) {
            if (i == j) continue;
            Verdict v = decide_equivalence(reps[i], reps[j]);
            EXPECT_EQ(v.kind, VerdictKind::Inequivalent);
            EXPECT_EQ(v.reason, InequivalenceReason::SignatureMismatch);
        }
    }
}

TEST(Decide, RouteAbsentAcrossFamilies) {
    StateTensor ghz = parse_ket("|1111> + |2221>", {2, 2, 2, 1});
    StateTensor w = parse_ket("|2111> + |1211> + |1121>", {2, 2, 2, 1});
    EXPECT_FALSE(route(ghz, w).has_value());
    auto self = route(ghz, ghz);
    ASSERT_TRUE(self.has_value());
    auto [g1, g2] = apply_route(self->t, self->p, self->q, to_matrix_pair(ghz).gamma1, to_matrix_pair(ghz).gamma2);
    EXPECT_EQ(g1, to_matrix_pair(ghz).gamma1);
    EXPECT_EQ(g2, to_matrix_pair(ghz).gamma2);
}

TEST(Decide, RouteOnOrbitPair) {
    std::mt19937_64 rng(8);
    StateTensor a = random_state({2, 4, 3, 2}, 2, 17);
    StateTensor b = apply_slocc(a, random_quad(rng, a.dims()));
    auto r = route(a, b);
    ASSERT_TRUE(r.has_value());
    auto [g1, g2] = apply_route(r->t, r->p, r->q, to_matrix_pair(a).gamma1, to_matrix_pair(a).gamma2);
    EXPECT_EQ(g1, to_matrix_pair(b).gamma1);
    EXPECT_EQ(g2, to_matrix_pair(b).gamma2);
}

TEST(Decide, VerdictJsonFields) {
    StateTensor a = fixtures::psi_lambda_2224(2);
    nlohmann::json j = to_json(decide_equivalence(a, a, axes(0, 3)));
    for (const char *key : {"verdict", "witness", "reason", "diagnostics"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["verdict"], "Equivalent");
    EXPECT_EQ(matrix_from_json(j["witness"]["A1"]), Matrix::identity(2));
}

TEST(Decide, ShapeMismatchThrows) {
    EXPECT_THROW(decide_equivalence(random_state({2, 4, 3, 2}, 2, 1), random_state({2, 4, 2, 3}, 2, 1)), Error);
    StateTensor a = random_state({2, 2, 2, 2}, 2, 1);
    EXPECT_THROW(verify_witness(a, a, LocalOperatorQuad::identity({2, 2, 2, 1})), Error);
}

}  // namespace
}  // namespace slocc
