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

#include "slocc/exact.hpp"
#include "test_util.hpp"

namespace slocc {
namespace {

using testing::leibniz_det;
using testing::random_invertible;
using testing::random_matrix;

GaussianRational q(std::string_view s) {
    return GaussianRational::parse(s);
}

TEST(GaussianRationalTest, ParsesLiteralGrammar) {
    EXPECT_EQ(q("3"), GaussianRational(3));
    EXPECT_EQ(q("-1/2"), GaussianRational(mpq_class(-1, 2)));
    EXPECT_EQ(q("2+1/3i"), GaussianRational(2, mpq_class(1, 3)));
    EXPECT_EQ(q("i"), GaussianRational(0, 1));
    EXPECT_EQ(q("-i"), GaussianRational(0, -1));
    EXPECT_EQ(q("0"), GaussianRational());
    EXPECT_EQ(q("3-2i"), GaussianRational(3, -2));
    EXPECT_EQ(q("-1/2-i"), GaussianRational(mpq_class(-1, 2), -1));
    EXPECT_EQ(q("4/6"), GaussianRational(mpq_class(2, 3)));
}

TEST(GaussianRationalTest, RejectsMalformedLiterals) {
    for (const char *bad : {"", "1/0", "abc", "1+", "2i3", "1//2", "--1", "1+-2i", "+i"}) {
        EXPECT_THROW(q(bad), Error) << bad;
    }
}

TEST(GaussianRationalTest, PrintRoundTrips) {
    for (const char *s : {"3", "-1/2", "2+1/3i", "i", "-i", "0", "-5/7+2i", "1/2-3/4i"}) {
        EXPECT_EQ(q(s).to_string(), s);
        EXPECT_EQ(q(q(s).to_string()), q(s));
    }
}

TEST(GaussianRationalTest, FieldArithmetic) {
    GaussianRational a(1, 2);
    GaussianRational b(3, -1);
    EXPECT_EQ(a * b, GaussianRational(5, 5));
    EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(a * a.reciprocal(), GaussianRational(1));
    EXPECT_THROW(GaussianRational().reciprocal(), Error);
    EXPECT_EQ(pow(GaussianRational::i(), 4), GaussianRational(1));
    EXPECT_EQ(pow(GaussianRational(2), -2), GaussianRational(mpq_class(1, 4)));
}

TEST(RankTest, Fixtures) {
    EXPECT_EQ(rank(Matrix(3, 5)), 0u);
    EXPECT_EQ(rank(Matrix::identity(6)), 6u);
    Matrix gamma1{{1, 1, 0, 1, 1, 0}, {0, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 1}, {0, 0, 0, 1, 0, 1}};
    EXPECT_EQ(rank(gamma1), 4u);
}

TEST(RankTest, ConstructedRankAndProducts) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t r = 1 + trial % 4;
        // A product of full-rank n x r and r x m factors has rank r.
        Matrix a = random_invertible(rng, 5).block(0, 0, 5, r);
        Matrix b = random_invertible(rng, 6).block(0, 0, r, 6);
        Matrix p = a * b;
        EXPECT_EQ(rank(p), r);
        Matrix u = random_invertible(rng, 5);
        Matrix v = random_invertible(rng, 6);
        EXPECT_EQ(rank(u * p * v), r);
        Matrix c = random_matrix(rng, 6, 3);
        EXPECT_LE(rank(p * c), std::min(rank(p), rank(c)));
    }
}

TEST(DeterminantTest, MatchesCofactorExpansion) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 5;
        Matrix m = random_matrix(rng, n, n, 2);
        if (trial % 3 == 0) {
            m *= GaussianRational(mpq_class(1, 3), mpq_class(1, 2));
        }
        EXPECT_EQ(determinant(m), leibniz_det(m));
    }
}

TEST(InvertTest, Fixtures) {
    EXPECT_EQ(invert(Matrix::identity(3)), Matrix::identity(3));
    Matrix d = Matrix::diagonal({2, GaussianRational(mpq_class(1, 3))});
    EXPECT_EQ(invert(d), Matrix::diagonal({GaussianRational(mpq_class(1, 2)), 3}));
    EXPECT_THROW(invert(Matrix{{1, 2}, {2, 4}}), Error);
    Matrix p0{{0, 1, -1, 0}, {1, 2, -3, 2}, {0, -1, 2, -1}, {1, 1, -2, 1}};
    EXPECT_TRUE((p0 * invert(p0)).is_identity());
}

TEST(InvertTest, DoubleInverseIsIdentity) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix m = random_invertible(rng, 1 + trial % 6);
        Matrix inv = invert(m);
        EXPECT_TRUE((m * inv).is_identity());
        EXPECT_EQ(invert(inv), m);
    }
}

TEST(NullspaceTest, Fixtures) {
    EXPECT_EQ(nullspace(Matrix::identity(4)).cols(), 0u);
    Matrix n = nullspace(Matrix{{0, 1}, {0, 0}});
    ASSERT_EQ(n.cols(), 1u);
    EXPECT_EQ(n, Matrix({{1}, {0}}));
    Matrix lambda{{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 1, 0}};
    Matrix k = nullspace(lambda);
    EXPECT_EQ(k.cols(), 6u - rank(lambda));
    EXPECT_EQ(k.cols(), 2u);
    EXPECT_TRUE((lambda * k).is_zero());
}

TEST(NullspaceTest, RandomKernels) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t r = 1 + trial % 4;
        Matrix m = random_matrix(rng, 5, r) * random_matrix(rng, r, 7);
        Matrix k = nullspace(m);
        EXPECT_EQ(k.cols(), 7u - rank(m));
        EXPECT_TRUE((m * k).is_zero());
        EXPECT_EQ(rank(k), k.cols());
    }
}

TEST(SolveTest, ConsistentAndInconsistent) {
    std::mt19937_64 rng(13);
    Matrix a = random_matrix(rng, 4, 6);
    Matrix x0 = random_matrix(rng, 6, 2);
    Matrix x;
    ASSERT_TRUE(solve(a, a * x0, &x));
    EXPECT_EQ(a * x, a * x0);
    EXPECT_FALSE(solve(Matrix{{1, 0}, {1, 0}}, Matrix{{1}, {2}}, &x));
}

TEST(CompleteBasisTest, ExtendsToInvertible) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix b = random_invertible(rng, 6).block(0, 0, 6, 1 + trial % 5);
        Matrix full = complete_basis(b);
        EXPECT_TRUE(is_invertible(full));
        EXPECT_EQ(full.block(0, 0, 6, b.cols()), b);
    }
}

Poly from_roots(const std::vector<GaussianRational> &roots) {
    Poly p({1});
    for (const auto &r : roots) {
        p = p * Poly::linear(r);
    }
    return p;
}

TEST(CharPolyTest, Fixtures) {
    EXPECT_EQ(char_poly(Matrix{{0, 1}, {0, 0}}), Poly::monomial(1, 2));
    EXPECT_EQ(char_poly(Matrix::diagonal({3, 2, 4, 0})), from_roots({0, 3, 2, 4}));
    EXPECT_EQ(char_poly(Matrix::identity(2)), from_roots({1, 1}));
}

TEST(CharPolyTest, AgreesWithDeterminantAndBlocks) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 15; ++trial) {
        Matrix a = random_matrix(rng, 3, 3, 2);
        Matrix b = random_matrix(rng, 2, 2, 2);
        Poly pa = char_poly(a);
        EXPECT_EQ(char_poly(direct_sum(a, b)), pa * char_poly(b));
        // det(xI - A) at a sample point.
        GaussianRational x(trial - 4, 1);
        EXPECT_EQ(pa(x), leibniz_det(x * Matrix::identity(3) - a));
    }
}

TEST(FactorLinearTest, Fixtures) {
    auto units = factor_linear(Poly({1, 0, 1}));
    ASSERT_EQ(units.size(), 2u);
    EXPECT_EQ(units[0].root, GaussianRational(0, -1));
    EXPECT_EQ(units[1].root, GaussianRational(0, 1));
    auto four = factor_linear(from_roots({0, 3, 2, 4}));
    ASSERT_EQ(four.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(four[k].root, GaussianRational(static_cast<long>(k == 0 ? 0 : k + 1)));
        EXPECT_EQ(four[k].multiplicity, 1);
    }
    try {
        factor_linear(Poly({-2, 0, 1}));
        FAIL() << "x^2 - 2 must not split";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::IrreducibleFactor);
    }
}

TEST(FactorLinearTest, ConstructedProductsReexpand) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<GaussianRational> roots;
        std::size_t n = 1 + trial % 6;
        for (std::size_t k = 0; k < n; ++k) {
            roots.emplace_back(mpq_class(d(rng), 1 + trial % 3), mpq_class(d(rng), 1 + trial % 2));
        }
        roots.push_back(roots.front());
        Poly p = from_roots(roots);
        auto f = factor_linear(p);
        int total = 0;
        Poly back({1});
        for (const auto &rm : f) {
            total += rm.multiplicity;
            for (int k = 0; k < rm.multiplicity; ++k) {
                back = back * Poly::linear(rm.root);
            }
        }
        EXPECT_EQ(total, static_cast<int>(p.degree()));
        EXPECT_EQ(back, p);
    }
}

TEST(FactorLinearTest, MixedIrreducibleFactorIsReported) {
    Poly p = from_roots({1, GaussianRational(0, 2)}) * Poly({-3, 0, 1});
    EXPECT_THROW(factor_linear(p), Error);
}

}  // namespace
}  // namespace slocc
