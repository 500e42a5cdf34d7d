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

#include <cstdio>
#include <filesystem>

#include "slocc/error.hpp"
#include "slocc/io.hpp"
#include "test_util.hpp"

namespace slocc {
namespace {

using GR = GaussianRational;

ErrorCode parse_code(const std::string &text) {
    try {
        state_from_json(nlohmann::json::parse(text));
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

TEST(StateFileTest, TermsAreOneBased) {
    auto j = nlohmann::json::parse(R"({"shape":[2,2,2,4],"qubit_axis":1,"single_axis":4,
        "terms":[{"idx":[1,1,1,1],"amp":"1"},{"idx":[2,2,2,4],"amp":"-1/2+i"}]})");
    StateFile f = state_from_json(j);
    EXPECT_EQ(f.qubit_axis, 0);
    EXPECT_EQ(f.single_axis, 3);
    EXPECT_EQ(f.state.amplitude({0, 0, 0, 0}), GR(1));
    EXPECT_EQ(f.state.amplitude({1, 1, 1, 3}), GR::parse("-1/2+i"));
    EXPECT_EQ(f.state.terms().size(), 2u);
}

TEST(StateFileTest, KetAlternative) {
    StateFile f = state_from_json(nlohmann::json::parse(R"({"shape":[2,2,2,2],"ket":"|1111> + 2|2222>"})"));
    EXPECT_EQ(f.state.amplitude({1, 1, 1, 1}), GR(2));
    EXPECT_EQ(f.qubit_axis, 0);
    EXPECT_EQ(f.single_axis, 1);
}

TEST(StateFileTest, RoundTrip) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 5; ++k) {
        StateFile f{random_state({2, 4, 3, 2}, 3, 40 + k, true), 0, 2};
        StateFile back = state_from_json(nlohmann::json::parse(state_to_json(f).dump()));
        EXPECT_EQ(back.state, f.state);
        EXPECT_EQ(back.qubit_axis, 0);
        EXPECT_EQ(back.single_axis, 2);
    }
}

TEST(StateFileTest, Malformed) {
    EXPECT_EQ(parse_code(R"([])"), ErrorCode::Parse);
    EXPECT_EQ(parse_code(R"({"shape":[2,2,2],"terms":[]})"), ErrorCode::Parse);
    EXPECT_EQ(parse_code(R"({"shape":[2,2,2,2],"terms":[{"idx":[0,1,1,1],"amp":"1"}]})"), ErrorCode::Parse);
    EXPECT_EQ(parse_code(R"({"shape":[2,2,2,2],"terms":[{"idx":[3,1,1,1],"amp":"1"}]})"), ErrorCode::Parse);
    EXPECT_EQ(parse_code(R"({"shape":[2,2,2,2],"terms":[{"idx":[1,1,1,1],"amp":"1/0"}]})"), ErrorCode::Parse);
    EXPECT_EQ(parse_code(R"({"shape":[2,2,2,2],"qubit_axis":5,"terms":[]})"), ErrorCode::Parse);
    EXPECT_EQ(parse_code(R"({"shape":[2,2,2,2],"qubit_axis":2,"single_axis":2,"terms":[]})"), ErrorCode::Parse);
    EXPECT_EQ(parse_code(R"({"shape":[2,2,2,2]})"), ErrorCode::Parse);
}

TEST(MatrixTextTest, ParseAndPrint) {
    Matrix m = parse_matrix_text("1 0 0 0\n0 1 0 0  # comment\n\n0 0 1/2 0\n0 0 0 -i\n");
    EXPECT_EQ(m, Matrix::diagonal({1, 1, GR(1) / GR(2), GR(0, -1)}));
    EXPECT_EQ(parse_matrix_text(matrix_to_text(m)), m);
    EXPECT_THROW(parse_matrix_text("1 2\n3\n"), Error);
    EXPECT_THROW(parse_matrix_text("\n# only comments\n"), Error);
    EXPECT_THROW(parse_matrix_text("1 x\n"), Error);
}

TEST(FileIoTest, AtomicWriteAndRead) {
    auto dir = std::filesystem::temp_directory_path() / "slocc_io_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "m.txt").string();
    write_text_file_atomic(path, "2 0\n0 3\n");
    EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
    EXPECT_EQ(read_matrix_file(path), Matrix::diagonal({2, 3}));
    try {
        read_state_file((dir / "absent.json").string());
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
    }
    std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace slocc
