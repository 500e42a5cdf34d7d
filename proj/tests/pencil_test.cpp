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
#include "slocc/pencil.hpp"
#include "test_util.hpp"

namespace slocc {
namespace {

using testing::random_invertible;

std::vector<PencilBlock> sorted(std::vector<PencilBlock> b) {
    sort_blocks(b);
    return b;
}

void expect_witnesses(const PencilCanon &c, const Matrix &g1, const Matrix &g2) {
    EXPECT_EQ(c.p * g1 * c.q, c.canon1);
    EXPECT_EQ(c.p * g2 * c.q, c.canon2);
    EXPECT_TRUE(is_invertible(c.p));
    EXPECT_TRUE(is_invertible(c.q));
    auto layout = block_layout(c.blocks);
    EXPECT_EQ(layout.first, c.canon1);
    EXPECT_EQ(layout.second, c.canon2);
    EXPECT_EQ(sorted(c.blocks), c.blocks);
}

TEST(JordanFormTest, Fixtures) {
    JordanForm d = jordan_form(Matrix::diagonal({3, 2, 4, 0}));
    ASSERT_EQ(d.blocks.size(), 4u);
    EXPECT_EQ(d.blocks[0], (JordanBlock{0, 1}));
    EXPECT_EQ(d.blocks[3], (JordanBlock{4, 1}));
    Matrix nil{{0, 1}, {0, 0}};
    JordanForm n = jordan_form(nil);
    ASSERT_EQ(n.blocks.size(), 1u);
    EXPECT_EQ(n.blocks[0], (JordanBlock{0, 2}));
    EXPECT_EQ(invert(n.similarity) * nil * n.similarity, jordan_matrix(n.blocks));
    EXPECT_THROW(jordan_form(Matrix{{0, 2}, {1, 0}}), Error);
}

TEST(JordanFormTest, RecoversConjugatedBlocks) {
    std::mt19937_64 rng(51);
    std::vector<std::vector<JordanBlock>> cases = {
        {{2, 3}, {2, 1}, {GaussianRational(0, 1), 2}},
        {{1, 2}, {1, 2}, {1, 1}},
        {{-1, 1}, {GaussianRational(mpq_class(1, 2)), 2}, {5, 1}},
        {{0, 4}, {0, 1}},
    };
    for (const auto &blocks : cases) {
        Matrix j = jordan_matrix(blocks);
        Matrix s = random_invertible(rng, j.rows());
        Matrix m = s * j * invert(s);
        JordanForm jf = jordan_form(m);
        std::vector<JordanBlock> expected = blocks;
        std::sort(expected.begin(), expected.end(), [](const auto &a, const auto &b) {
            return a.eigenvalue != b.eigenvalue ? field_less(a.eigenvalue, b.eigenvalue) : a.size > b.size;
        });
        EXPECT_EQ(jf.blocks, expected);
        EXPECT_EQ(invert(jf.similarity) * m * jf.similarity, jordan_matrix(jf.blocks));
    }
}

TEST(KcfTest, Random2432Pair) {
    Matrix g1 = fixtures::gamma1_2432();
    Matrix g2 = fixtures::gamma2_2432();
    PencilCanon c = kcf(g1, g2);
    expect_witnesses(c, g1, g2);
    std::vector<PencilBlock> expected{PencilBlock::right(1), PencilBlock::right(2), PencilBlock::finite(0, 1)};
    EXPECT_EQ(c.blocks, expected);
    // The printed (Lambda, B) lies in the same orbit and has the same blocks.
    Matrix p0 = fixtures::p0_2432();
    Matrix q0 = fixtures::q0_2432();
    EXPECT_EQ(p0 * g1 * q0, fixtures::lambda_2432());
    EXPECT_EQ(p0 * g2 * q0, fixtures::b_2432());
    PencilCanon lb = kcf(fixtures::lambda_2432(), fixtures::b_2432());
    expect_witnesses(lb, fixtures::lambda_2432(), fixtures::b_2432());
    EXPECT_EQ(lb.blocks, c.blocks);
    // On its own canonical layout the reduction is the identity.
    PencilCanon fixed = kcf(c.canon1, c.canon2);
    EXPECT_EQ(fixed.blocks, c.blocks);
    EXPECT_TRUE(fixed.p.is_identity());
    EXPECT_TRUE(fixed.q.is_identity());
}

TEST(KcfTest, RegularFixtures) {
    PencilCanon d = kcf(Matrix::identity(4), Matrix::diagonal({3, 2, 4, 0}));
    std::vector<PencilBlock> expected{PencilBlock::finite(0, 1), PencilBlock::finite(2, 1),
                                      PencilBlock::finite(3, 1), PencilBlock::finite(4, 1)};
    EXPECT_EQ(d.blocks, expected);
    PencilCanon e = kcf(Matrix::identity(2), Matrix::identity(2));
    EXPECT_EQ(e.blocks, (std::vector<PencilBlock>{PencilBlock::finite(1, 1), PencilBlock::finite(1, 1)}));
    // psi(lambda) pair: points infinity, 1, 1/lambda, 0.
    Matrix g1 = Matrix::diagonal({0, 1, 2, 1});
    Matrix g2 = Matrix::diagonal({1, 1, 1, 0});
    PencilCanon psi = kcf(g1, g2);
    expect_witnesses(psi, g1, g2);
    expected = {PencilBlock::infinite(1), PencilBlock::finite(0, 1),
                PencilBlock::finite(GaussianRational(mpq_class(1, 2)), 1), PencilBlock::finite(1, 1)};
    EXPECT_EQ(psi.blocks, expected);
    EXPECT_THROW(kcf(Matrix(2, 3), Matrix(2, 3)), Error);
}

TEST(KcfTest, ProductStateIsDegenerate) {
    Matrix g1(2, 4);
    g1(0, 0) = 1;
    PencilCanon c = kcf(g1, Matrix(2, 4));
    expect_witnesses(c, g1, Matrix(2, 4));
    std::vector<PencilBlock> expected{PencilBlock::left(0), PencilBlock::right(0), PencilBlock::right(0),
                                      PencilBlock::right(0), PencilBlock::finite(0, 1)};
    EXPECT_EQ(c.blocks, expected);
}

// Construct-then-recover: a random block list, hidden by random P and Q.
TEST(KcfTest, RecoversHiddenBlockStructure) {
    std::mt19937_64 rng(53);
    std::vector<std::vector<PencilBlock>> cases = {
        {PencilBlock::right(1), PencilBlock::left(1), PencilBlock::finite(2, 2)},
        {PencilBlock::right(0), PencilBlock::right(2), PencilBlock::infinite(2), PencilBlock::finite(-1, 1)},
        {PencilBlock::left(0), PencilBlock::left(2), PencilBlock::right(1), PencilBlock::infinite(1)},
        {PencilBlock::finite(GaussianRational(1, 1), 2), PencilBlock::finite(GaussianRational(1, 1), 1),
         PencilBlock::infinite(3)},
        {PencilBlock::right(3), PencilBlock::right(1), PencilBlock::right(1)},
        {PencilBlock::left(1), PencilBlock::right(0), PencilBlock::finite(0, 2), PencilBlock::finite(0, 1)},
    };
    for (const auto &blocks : cases) {
        auto [c1, c2] = block_layout(blocks);
        Matrix p = random_invertible(rng, c1.rows());
        Matrix q = random_invertible(rng, c1.cols());
        Matrix g1 = p * c1 * q;
        Matrix g2 = p * c2 * q;
        PencilCanon c = kcf(g1, g2);
        expect_witnesses(c, g1, g2);
        EXPECT_EQ(c.blocks, sorted(blocks)) << blocks_to_string(c.blocks);
    }
}

TEST(KcfTest, InvariantUnderRandomEquivalence) {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t rows = 2 + trial % 3;
        std::size_t cols = 2 + (trial * 7) % 5;
        Matrix g1 = testing::random_matrix(rng, rows, cols, 1, false);
        Matrix g2 = testing::random_matrix(rng, rows, cols, 1, false);
        if (g1.is_zero() && g2.is_zero()) {
            continue;
        }
        PencilCanon c;
        try {
            c = kcf(g1, g2);
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::IrreducibleFactor);
            continue;
        }
        expect_witnesses(c, g1, g2);
        Matrix p = random_invertible(rng, rows);
        Matrix q = random_invertible(rng, cols);
        PencilCanon moved = kcf(p * g1 * q, p * g2 * q);
        EXPECT_EQ(moved.blocks, c.blocks);
        std::size_t r = 0;
        std::size_t k = 0;
        for (const auto &b : c.blocks) {
            r += b.rows();
            k += b.cols();
        }
        EXPECT_EQ(r, rows);
        EXPECT_EQ(k, cols);
    }
}

}  // namespace
}  // namespace slocc
