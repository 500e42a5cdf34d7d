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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "slocc/exact.hpp"
#include "slocc/state.hpp"

namespace slocc {

/// A state plus the particle roles named by the user (0-based in memory).
struct StateFile {
    StateTensor state;
    int qubit_axis = 0;
    int single_axis = 1;
};

/// {"shape":[2,L,M,N], "qubit_axis":1, "single_axis":2,
///  "terms":[{"idx":[i,l,m,n],"amp":"<glit>"}...]}
/// Axes and term indices are 1-based in the file. A "ket" string may replace "terms".
StateFile state_from_json(const nlohmann::json &j);
nlohmann::json state_to_json(const StateFile &f);

/// One row per line, whitespace-separated literals; blank lines and '#' comments skipped.
Matrix parse_matrix_text(std::string_view text);
std::string matrix_to_text(const Matrix &m);

std::string read_text_file(const std::string &path);
/// Throws Parse with the path in the message.
StateFile read_state_file(const std::string &path);
Matrix read_matrix_file(const std::string &path);
nlohmann::json read_json_file(const std::string &path);
/// Writes to path.tmp then renames.
void write_text_file_atomic(const std::string &path, const std::string &content);

}  // namespace slocc
