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


// Uses nothing but the public C header.

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <string>

#include "slocc/slocc.h"

namespace {

std::string take(char *s) {
    std::string out = s;
    slocc_string_free(s);
    return out;
}

struct State {
    slocc_state *p = nullptr;
    ~State() {
        slocc_state_free(p);
    }
};

const size_t k2224[4] = {2, 2, 2, 4};

TEST(CApi, KetClassify) {
    State s;
    ASSERT_EQ(slocc_state_from_ket("|1111> + |1222> + |2111>", k2224, 1, 2, &s.p), SLOCC_OK);
    char *out = nullptr;
    ASSERT_EQ(slocc_classify(s.p, &out), SLOCC_OK);
    auto j = nlohmann::json::parse(take(out));
    EXPECT_EQ(j["shape"], nlohmann::json({2, 2, 2, 4}));
    EXPECT_TRUE(j["route"]["verified"].get<bool>());
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
    State s;
    EXPECT_EQ(slocc_state_from_ket("|1119>", k2224, 1, 2, &s.p), SLOCC_ERR_INDEX_OUT_OF_RANGE);
    EXPECT_NE(std::string(slocc_last_error()), "");
    EXPECT_EQ(s.p, nullptr);
    EXPECT_EQ(slocc_state_from_json("{not json", &s.p), SLOCC_ERR_PARSE);
    EXPECT_EQ(slocc_state_from_ket(nullptr, k2224, 1, 2, &s.p), SLOCC_ERR_NULL_ARGUMENT);
    EXPECT_EQ(slocc_state_from_file("/nonexistent/x.json", &s.p), SLOCC_ERR_PARSE);
    char *out = nullptr;
    EXPECT_EQ(slocc_orbit("1", &out), SLOCC_ERR_DEGENERATE_LAMBDA);
    EXPECT_EQ(slocc_census(nullptr, 3, 3, 3, nullptr, &out), SLOCC_ERR_MISSING_OMEGA);
    EXPECT_NE(std::string(slocc_last_error()).find("(3,3)"), std::string::npos);
    EXPECT_STREQ(slocc_status_name(SLOCC_ERR_MISSING_OMEGA), "MissingOmega");
    ASSERT_EQ(slocc_orbit("2", &out), SLOCC_OK);
    slocc_string_free(out);
    EXPECT_STREQ(slocc_last_error(), "");
}

TEST(CApi, CompareOrbitPair) {
    const size_t dims[4] = {2, 3, 2, 2};
    State a, b, c;
    ASSERT_EQ(slocc_state_random(dims, 2, 11, 0, &a.p), SLOCC_OK);
    ASSERT_EQ(slocc_state_random_orbit(a.p, 1, 5, &b.p), SLOCC_OK);
    slocc_decide_options o = slocc_decide_options_default();
    slocc_verdict_kind kind = SLOCC_UNDECIDED;
    char *out = nullptr;
    ASSERT_EQ(slocc_compare(a.p, b.p, &o, &kind, &out), SLOCC_OK);
    auto j = nlohmann::json::parse(take(out));
    EXPECT_EQ(kind, SLOCC_EQUIVALENT);
    EXPECT_EQ(j["verdict"], "Equivalent");
    EXPECT_TRUE(j["witness_verified"].get<bool>());

    const size_t other[4] = {2, 2, 2, 2};
    ASSERT_EQ(slocc_state_random(other, 2, 11, 0, &c.p), SLOCC_OK);
    EXPECT_EQ(slocc_compare(a.p, c.p, &o, &kind, &out), SLOCC_ERR_SHAPE_MISMATCH);
    o.timeout_ms = 0;
    EXPECT_EQ(slocc_compare(a.p, b.p, &o, &kind, &out), SLOCC_ERR_INVALID_STATE);
}

TEST(CApi, StateJsonRoundTrip) {
    const size_t dims[4] = {2, 4, 3, 2};
    State a, b;
    ASSERT_EQ(slocc_state_random(dims, 3, 2, 1, &a.p), SLOCC_OK);
    char *json = nullptr;
    ASSERT_EQ(slocc_state_to_json(a.p, &json), SLOCC_OK);
    std::string text = take(json);
    ASSERT_EQ(slocc_state_from_json(text.c_str(), &b.p), SLOCC_OK);
    char *k1 = nullptr, *k2 = nullptr;
    ASSERT_EQ(slocc_state_to_ket(a.p, &k1), SLOCC_OK);
    ASSERT_EQ(slocc_state_to_ket(b.p, &k2), SLOCC_OK);
    EXPECT_EQ(take(k1), take(k2));
}

TEST(CApi, CensusTableAndRealign) {
    slocc_census_table *t = nullptr;
    ASSERT_EQ(slocc_census_table_new(&t), SLOCC_OK);
    long long count = 0;
    char *out = nullptr;
    ASSERT_EQ(slocc_census(t, 4, 4, 2, &count, &out), SLOCC_OK);
    slocc_string_free(out);
    EXPECT_EQ(count, 37);
    EXPECT_EQ(slocc_census_table_load(t, "/nonexistent/omega.json"), SLOCC_ERR_PARSE);
    slocc_census_table_free(t);

    ASSERT_EQ(slocc_realign("1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 2\n", 2, 2, &out), SLOCC_OK);
    auto j = nlohmann::json::parse(take(out));
    EXPECT_EQ(j["rank"], 4);
    EXPECT_EQ(slocc_realign("1 2\n3\n", 2, 2, &out), SLOCC_ERR_PARSE);
}

}  // namespace
