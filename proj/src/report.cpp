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


#include "slocc/report.hpp"

#include "slocc/canonical.hpp"
#include "slocc/error.hpp"
#include "slocc/realign.hpp"

namespace slocc {

nlohmann::json classify_report(const StateFile &f) {
    const StateTensor &s = f.state;
    s.require_valid();
    const Index4 &d = s.dims();
    auto ranks = local_ranks(s);
    // Genuine means the shape passes the dimension bound and no local rank is short.
    Index4 effective{ranks[0], ranks[1], ranks[2], ranks[3]};
    GenuineReport shape_ok = genuine_filter(d, f.qubit_axis);
    GenuineReport rank_ok = genuine_filter(effective, f.qubit_axis);
    bool full = effective == d;
    nlohmann::json j;
    j["shape"] = {d[0], d[1], d[2], d[3]};
    j["qubit_axis"] = f.qubit_axis + 1;
    j["single_axis"] = f.single_axis + 1;
    j["local_ranks"] = {ranks[0], ranks[1], ranks[2], ranks[3]};
    j["genuine"] = shape_ok.genuine && rank_ok.genuine && full;
    if (!shape_ok.genuine) {
        j["genuine_explanation"] = shape_ok.explanation;
    } else if (!full) {
        j["genuine_explanation"] = "local ranks fall short of the dimensions; effective shape " +
                                   std::to_string(ranks[0]) + "x" + std::to_string(ranks[1]) + "x" +
                                   std::to_string(ranks[2]) + "x" + std::to_string(ranks[3]) +
                                   (rank_ok.genuine ? std::string() : "; " + rank_ok.explanation);
    } else {
        j["genuine_explanation"] = shape_ok.explanation;
    }

    auto [arranged, arrangement] = arrange_axes(s, f.qubit_axis, f.single_axis);
    MatrixPair pair = to_matrix_pair(arranged);
    auto [sf, route] = standard_form(pair);
    auto reached = apply_route(route.t, route.p, route.q, pair.gamma1, pair.gamma2);
    if (reached.first != sf.e_part || reached.second != sf.j_part) {
        throw Error(ErrorCode::Internal, "standard-form route failed verification");
    }
    FamilySignature sig = signature(sf, pair);
    j["arrangement"] = {arrangement.order[0] + 1, arrangement.order[1] + 1, arrangement.order[2] + 1,
                        arrangement.order[3] + 1};
    j["composite_side"] = side_name(pair.side);
    j["signature"] = sig.serialize();
    j["blocks"] = blocks_to_string(sf.blocks);
    j["matrix_pair"] = {{"gamma1", matrix_to_json(pair.gamma1)}, {"gamma2", matrix_to_json(pair.gamma2)}};
    j["standard_form"] = {{"gamma1", matrix_to_json(sf.e_part)}, {"gamma2", matrix_to_json(sf.j_part)}};
    j["route"] = {{"T0", matrix_to_json(route.t)},
                  {"P0", matrix_to_json(route.p)},
                  {"Q0", matrix_to_json(route.q)},
                  {"verified", true}};
    nlohmann::json inv = nlohmann::json::array();
    for (const GaussianRational &x : sig.invariants) {
        inv.push_back(x.to_string());
    }
    j["free_invariants"] = inv;
    return j;
}

nlohmann::json compare_report(const StateFile &a, const StateFile &b, DecideOptions options) {
    options.qubit_axis = a.qubit_axis;
    options.single_axis = a.single_axis;
    Verdict v = decide_equivalence(a.state, b.state, options);
    nlohmann::json j = to_json(v);
    if (v.witness) {
        j["witness_verified"] = verify_witness(a.state, b.state, *v.witness);
    }
    return j;
}

nlohmann::json census_report(std::size_t l, std::size_t m, std::size_t n, const CensusTable &table) {
    Index4 shape{2, l, m, n};
    nlohmann::json j;
    j["shape"] = {2, l, m, n};
    GenuineReport g = genuine_filter(shape, 0);
    j["genuine"] = g.genuine;
    j["explanation"] = g.explanation;
    if (!g.genuine) {
        return j;
    }
    FamilyCount fc = count_families(shape, table, 0);
    j["families"] = fc.count;
    j["L"] = fc.l;
    j["M"] = fc.m;
    j["N"] = fc.n;
    j["range"] = {fc.from, fc.to};
    j["terms"] = fc.terms;
    return j;
}

nlohmann::json realign_report(const Matrix &matrix, std::size_t m, std::size_t n) {
    if (m == 0 || n == 0 || matrix.rows() != m * n || matrix.cols() != m * n) {
        throw Error(ErrorCode::DimensionMismatch, "realign: matrix must be " + std::to_string(m * n) + "x" +
                                                      std::to_string(m * n) + " for factors " + std::to_string(m) +
                                                      "x" + std::to_string(n));
    }
    Matrix r = realign(matrix, {m, n, m, n});
    nlohmann::json j;
    j["realigned"] = matrix_to_json(r);
    j["rank"] = rank(r);
    if (auto f = rank_one_factor(matrix, m, n)) {
        j["factors"] = {{"left", matrix_to_json(f->left)}, {"right", matrix_to_json(f->right)}};
    } else {
        j["factors"] = nullptr;
    }
    return j;
}

nlohmann::json orbit_report(const GaussianRational &lambda) {
    nlohmann::json j;
    j["lambda"] = lambda.to_string();
    nlohmann::json orbit = nlohmann::json::array();
    for (const GaussianRational &x : residual_orbit(lambda)) {
        orbit.push_back(x.to_string());
    }
    j["orbit"] = orbit;
    j["minimum"] = orbit_minimum(lambda).to_string();
    return j;
}

}  // namespace slocc
