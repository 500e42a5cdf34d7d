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


// Acceptance checks. One [PASS]/[FAIL] line per criterion; exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "slocc/census.hpp"
#include "slocc/decide.hpp"
#include "slocc/realign.hpp"
#include "test_util.hpp"

namespace slocc {
namespace {

using GR = GaussianRational;
using testing::random_gaussian;
using testing::random_invertible;
using testing::random_quad;

// Collects failed sub-checks; the first few are printed under the criterion line.
struct Check {
    std::vector<std::string> failures;
    int checks = 0;
    void expect(bool ok, const std::string &what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

int report(int number, const std::string &title, const std::function<std::string(Check &)> &body) {
    Check c;
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    try {
        detail = body(c);
    } catch (const std::exception &e) {
        c.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = c.failures.empty();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << number << ". " << title << " (" << c.checks << " checks, "
              << timing << (detail.empty() ? "" : ", " + detail) << ")\n";
    for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) {
        std::cout << "       " << c.failures[k] << "\n";
    }
    return pass ? 0 : 1;
}

std::string census(Check &c) {
    const std::vector<std::pair<Index4, long long>> cases = {
        {{2, 2, 2, 2}, 5},  {{2, 2, 2, 4}, 22}, {{2, 4, 3, 2}, 39}, {{2, 4, 4, 2}, 37},
        {{2, 4, 3, 3}, 42}, {{2, 4, 4, 3}, 37}, {{2, 4, 4, 4}, 37},
    };
    std::ostringstream got;
    for (const auto &[shape, expected] : cases) {
        long long n = count_families(shape).count;
        got << (got.tellp() ? " " : "") << n;
        c.expect(n == expected, "count_families " + std::to_string(shape[1]) + std::to_string(shape[2]) +
                                    std::to_string(shape[3]) + " = " + std::to_string(n));
    }
    return "counts " + got.str();
}

std::string worked_example(Check &c) {
    StateTensor psi = parse_ket(fixtures::kRandom2432Ket, {2, 4, 3, 2});
    c.expect(psi.terms().size() == 22, "ket has 22 terms");
    MatrixPair pair = to_matrix_pair(arrange_axes(psi, 0, 1).first);
    c.expect(pair.gamma1 == fixtures::gamma1_2432(), "Gamma1 matches the printed matrix");
    c.expect(pair.gamma2 == fixtures::gamma2_2432(), "Gamma2 matches the printed matrix");
    c.expect(rank(pair.gamma1) == 4, "rank(Gamma1) = 4");
    Matrix p0 = fixtures::p0_2432(), q0 = fixtures::q0_2432();
    Matrix lam = fixtures::lambda_2432(), b = fixtures::b_2432();
    c.expect(p0 * pair.gamma1 * q0 == lam, "P0 Gamma1 Q0 = Lambda");
    c.expect(p0 * pair.gamma2 * q0 == b, "P0 Gamma2 Q0 = B");
    MatrixPair lb{lam, b, CompositeSide::Columns, 4, 3, 2};
    c.expect(same_family(psi, from_matrix_pair(lb)), "same_family(psi, state of (Lambda, B))");

    std::mt19937_64 rng(2024);
    int points = 0;
    for (int k = 0; k < 24; ++k) {
        GR alpha = random_gaussian(rng, 9);
        auto out = apply_route(fixtures::s1_2432(alpha), fixtures::s2_2432(alpha), fixtures::s3_2432(alpha), lam, b);
        c.expect(out.first == lam && out.second == b, "(S1, S2, S3) fixes (Lambda, B) at alpha = " + alpha.to_string());
        fixtures::LowerParams prm;
        for (GR *v : {&prm.a11, &prm.a21, &prm.a22, &prm.a31, &prm.a32, &prm.a33, &prm.a34}) {
            bool diagonal = v == &prm.a11 || v == &prm.a22 || v == &prm.a33;
            do {
                *v = random_gaussian(rng, 4);
            } while (diagonal && v->is_zero());
        }
        auto moved = apply_route(Matrix::identity(2), fixtures::s_2432(prm), fixtures::s_prime_2432(prm), lam, b);
        c.expect(moved.first == lam && moved.second == b, "(S, S') fixes (Lambda, B)");
        ++points;
    }
    return std::to_string(points) + " parameter points per family";
}

std::string realignment(Check &c) {
    Matrix printed_g{{0, 1, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, -1}};
    RealignmentShape s2222{2, 2, 2, 2};
    c.expect(realign(fixtures::p_g(), s2222) == printed_g, "realign(P_G) equals the printed matrix");
    c.expect(!rank_one_factor(fixtures::p_g(), 2, 2), "P_G is not a Kronecker product");
    for (GR lambda : {GR(2), GR(1) / GR(2), GR(-1)}) {
        c.expect(realign(fixtures::p_f(lambda), s2222) == Matrix::diagonal({1, 1, 1, lambda}),
                 "realign(P_F) = diag(1,1,1,lambda) at " + lambda.to_string());
        c.expect(!rank_one_factor(fixtures::p_f(lambda), 2, 2), "P_F is not a Kronecker product");
    }
    return "lambda in {2, 1/2, -1}";
}

std::string psi_verdicts(Check &c) {
    StateTensor a = fixtures::psi_lambda_2224(2), b = fixtures::psi_lambda_2224(-1);
    DecideOptions four;
    four.single_axis = 3;
    Verdict v = decide_equivalence(a, b, four);
    c.expect(v.kind == VerdictKind::Inequivalent, std::string("psi(2) vs psi(-1) as 2x2x2x4: ") + verdict_name(v.kind));
    c.expect(v.reason == InequivalenceReason::MinorInfeasible || v.reason == InequivalenceReason::OrbitExhausted,
             std::string("reason ") + reason_name(v.reason));

    StateTensor t2 = fixtures::psi_lambda_244(2), thalf = fixtures::psi_lambda_244(GR(1) / GR(2));
    c.expect(same_family(t2, thalf), "tripartite psi(2), psi(1/2) share a signature");
    // F route from the fixtures, read as local operators on the embedding.
    LocalOperatorQuad f;
    f.ops = {fixtures::t_f(2), fixtures::q_f().transpose(), fixtures::p_f(2), Matrix::identity(1)};
    c.expect(apply_slocc(t2, f) == thalf, "F route maps psi(2) to psi(1/2) exactly");
    Verdict w = decide_equivalence(t2, thalf);
    c.expect(w.kind == VerdictKind::Equivalent, std::string("tripartite verdict ") + verdict_name(w.kind));
    c.expect(w.witness && verify_witness(t2, thalf, *w.witness), "witness re-verified");
    c.expect(w.witness && apply_slocc(t2, *w.witness) == thalf, "witness applied by hand");
    return std::string("4-partite reason ") + reason_name(v.reason);
}

struct OrbitPair {
    StateTensor a, b;
    int single_axis;
};

std::vector<OrbitPair> orbit_corpus() {
    std::vector<OrbitPair> out;
    std::mt19937_64 rng(20260415);
    const int per_shape = 34;
    for (int k = 0; k < per_shape; ++k) {
        StateTensor a = testing::rational_pencil_2224(rng);
        out.push_back({a, apply_slocc(a, random_quad(rng, a.dims())), 3});
    }
    for (const Index4 &dims : {Index4{2, 4, 3, 2}, Index4{2, 4, 4, 2}, Index4{2, 4, 3, 3}, Index4{2, 4, 4, 3},
                               Index4{2, 4, 4, 4}}) {
        for (int k = 0; k < per_shape; ++k) {
            StateTensor a = random_state(dims, 2, 1000 * dims[2] + 100 * dims[3] + k);
            out.push_back({a, apply_slocc(a, random_quad(rng, dims)), 1});
        }
    }
    return out;
}

std::string dims_name(const Index4 &d) {
    return std::to_string(d[0]) + "x" + std::to_string(d[1]) + "x" + std::to_string(d[2]) + "x" + std::to_string(d[3]);
}

std::string orbit_property(Check &c, const std::vector<OrbitPair> &corpus) {
    int numeric = 0;
    for (const OrbitPair &p : corpus) {
        DecideOptions o;
        o.single_axis = p.single_axis;
        Verdict v = decide_equivalence(p.a, p.b, o);
        bool ok = v.kind == VerdictKind::Equivalent && v.witness && verify_witness(p.a, p.b, *v.witness) &&
                  apply_slocc(p.a, *v.witness) == p.b;
        c.expect(ok, dims_name(p.a.dims()) + ": " + verdict_name(v.kind));
        numeric += v.diagnostics.value("stage", "") == "numeric";
    }
    return std::to_string(corpus.size()) + " pairs, " + std::to_string(numeric) + " via numeric search";
}

std::string signature_invariance(Check &c, const std::vector<OrbitPair> &corpus) {
    for (const OrbitPair &p : corpus) {
        MatrixPair pa = to_matrix_pair(arrange_axes(p.a, 0, p.single_axis).first);
        MatrixPair pb = to_matrix_pair(arrange_axes(p.b, 0, p.single_axis).first);
        auto [sa, ra] = standard_form(pa);
        auto [sb, rb] = standard_form(pb);
        c.expect(signature(sa, pa) == signature(sb, pb), dims_name(p.a.dims()) + ": signatures differ");
        for (const auto &[sf, pair] : {std::pair{sa, pa}, std::pair{sb, pb}}) {
            MatrixPair std_pair = pair;
            std_pair.gamma1 = sf.e_part;
            std_pair.gamma2 = sf.j_part;
            auto [again, route] = standard_form(std_pair);
            c.expect(again.e_part == sf.e_part && again.j_part == sf.j_part && again.blocks == sf.blocks,
                     dims_name(p.a.dims()) + ": standard_form not idempotent");
        }
    }
    return std::to_string(corpus.size()) + " pairs";
}

std::string kronecker_round_trip(Check &c) {
    std::mt19937_64 rng(77);
    int n = 0;
    for (auto [m, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {4, 3}}) {
        for (int t = 0; t < 40; ++t, ++n) {
            Matrix u = random_invertible(rng, m, 3), v = random_invertible(rng, k, 3);
            Matrix uv = kron(u, v);
            auto f = rank_one_factor(uv, m, k);
            c.expect(f.has_value(), "no factors for " + std::to_string(m) + "x" + std::to_string(k));
            if (f) c.expect(kron(f->left, f->right) == uv, "left (x) right != U (x) V");
            c.expect(rank(realign(uv, {m, k, m, k})) == 1, "realignment of U (x) V is not rank one");
        }
    }
    return std::to_string(n) + " products";
}

std::string family_separation(Check &c) {
    std::vector<StateTensor> reps;
    std::set<std::string> sigs;
    for (const char *ket : fixtures::kFamilies2222) {
        reps.push_back(parse_ket(ket, {2, 2, 2, 2}));
        auto [arranged, arrangement] = arrange_axes(reps.back(), 0, 1);
        MatrixPair pair = to_matrix_pair(arranged);
        sigs.insert(signature(standard_form(pair).first, pair).serialize());
    }
    c.expect(sigs.size() == 5, std::to_string(sigs.size()) + " distinct signatures");
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            Verdict v = decide_equivalence(reps[i], reps[j]);
            c.expect(v.kind == VerdictKind::Inequivalent && v.reason == InequivalenceReason::SignatureMismatch,
                     "families " + std::to_string(i + 1) + "," + std::to_string(j + 1) + ": " + verdict_name(v.kind));
        }
    }
    return "10 pairs";
}

}  // namespace
}  // namespace slocc

int main() {
    using namespace slocc;
    int failed = 0;
    failed += report(1, "family counts for the seven listed shapes", census);
    failed += report(2, "2x4x3x2 worked example: pair, route and stabilizer families", worked_example);
    failed += report(3, "realignment of the residual symmetry generators", realignment);
    failed += report(4, "psi(lambda) verdicts at four parties and at the tripartite embedding", psi_verdicts);
    std::vector<OrbitPair> corpus = orbit_corpus();
    failed += report(5, "random orbit pairs decide Equivalent with verified witnesses",
                     [&](Check &c) { return orbit_property(c, corpus); });
    failed += report(6, "signature invariance and standard_form idempotence on the orbit corpus",
                     [&](Check &c) { return signature_invariance(c, corpus); });
    failed += report(7, "Kronecker factorization round trip", kronecker_round_trip);
    failed += report(8, "2x2x2x2 family representatives are separated by signature", family_separation);
    return failed;
}
