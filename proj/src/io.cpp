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


#include "slocc/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "slocc/error.hpp"

namespace slocc {

namespace {

int read_axis(const nlohmann::json &j, const char *key, int fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j[key].is_number_integer() || j[key].get<int>() < 1 || j[key].get<int>() > 4) {
        throw Error(ErrorCode::Parse, std::string("state file: \"") + key + "\" must be an integer in 1..4");
    }
    return j[key].get<int>() - 1;
}

}  // namespace

StateFile state_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::Parse, "state file: expected a JSON object");
    }
    if (!j.contains("shape") || !j["shape"].is_array() || j["shape"].size() != 4) {
        throw Error(ErrorCode::Parse, "state file: \"shape\" must be an array of four dimensions");
    }
    Index4 dims{};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto &d = j["shape"][k];
        if (!d.is_number_integer() || d.get<long long>() < 1) {
            throw Error(ErrorCode::Parse, "state file: dimensions must be positive integers");
        }
        dims[k] = d.get<std::size_t>();
    }
    StateFile f;
    f.qubit_axis = read_axis(j, "qubit_axis", 0);
    f.single_axis = read_axis(j, "single_axis", 1);
    if (f.qubit_axis == f.single_axis) {
        throw Error(ErrorCode::Parse, "state file: qubit_axis and single_axis must differ");
    }
    bool has_terms = j.contains("terms"), has_ket = j.contains("ket");
    if (has_terms == has_ket) {
        throw Error(ErrorCode::Parse, "state file: give exactly one of \"terms\" or \"ket\"");
    }
    if (has_ket) {
        if (!j["ket"].is_string()) {
            throw Error(ErrorCode::Parse, "state file: \"ket\" must be a string");
        }
        f.state = parse_ket(j["ket"].get<std::string>(), dims);
        return f;
    }
    if (!j["terms"].is_array()) {
        throw Error(ErrorCode::Parse, "state file: \"terms\" must be an array");
    }
    f.state = StateTensor(dims);
    for (const auto &t : j["terms"]) {
        if (!t.is_object() || !t.contains("idx") || !t["idx"].is_array() || t["idx"].size() != 4 ||
            !t.contains("amp")) {
            throw Error(ErrorCode::Parse, "state file: each term needs \"idx\" (four indices) and \"amp\"");
        }
        Index4 idx{};
        for (std::size_t k = 0; k < 4; ++k) {
            const auto &v = t["idx"][k];
            if (!v.is_number_integer() || v.get<long long>() < 1) {
                throw Error(ErrorCode::Parse, "state file: indices are 1-based positive integers");
            }
            idx[k] = v.get<std::size_t>() - 1;
        }
        GaussianRational amp = t["amp"].is_string() ? GaussianRational::parse(t["amp"].get<std::string>())
                               : t["amp"].is_number_integer() ? GaussianRational(t["amp"].get<long>())
                               : throw Error(ErrorCode::Parse, "state file: \"amp\" must be a literal string");
        try {
            f.state.add(idx, amp);
        } catch (const Error &e) {
            throw Error(ErrorCode::Parse, std::string("state file: ") + e.what());
        }
    }
    return f;
}

nlohmann::json state_to_json(const StateFile &f) {
    const Index4 &d = f.state.dims();
    nlohmann::json j = {{"shape", {d[0], d[1], d[2], d[3]}},
                        {"qubit_axis", f.qubit_axis + 1},
                        {"single_axis", f.single_axis + 1},
                        {"terms", nlohmann::json::array()}};
    for (const auto &[idx, amp] : f.state.terms()) {
        j["terms"].push_back({{"idx", {idx[0] + 1, idx[1] + 1, idx[2] + 1, idx[3] + 1}}, {"amp", amp.to_string()}});
    }
    return j;
}

Matrix parse_matrix_text(std::string_view text) {
    std::vector<std::vector<GaussianRational>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::vector<GaussianRational> row;
        std::string tok;
        while (ls >> tok) {
            row.push_back(GaussianRational::parse(tok));
        }
        if (row.empty()) {
            continue;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorCode::Parse, "matrix text: rows of different lengths");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw Error(ErrorCode::Parse, "matrix text: no rows");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

std::string matrix_to_text(const Matrix &m) {
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out += (c ? " " : "") + m(r, c).to_string();
        }
        out += "\n";
    }
    return out;
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Parse, "cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

nlohmann::json read_json_file(const std::string &path) {
    try {
        return nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::Parse, path + ": " + e.what());
    }
}

StateFile read_state_file(const std::string &path) {
    nlohmann::json j = read_json_file(path);
    try {
        return state_from_json(j);
    } catch (const Error &e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

Matrix read_matrix_file(const std::string &path) {
    try {
        return parse_matrix_text(read_text_file(path));
    } catch (const Error &e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

void write_text_file_atomic(const std::string &path, const std::string &content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::Parse, "cannot write " + tmp);
        }
        out << content;
        if (!out) {
            throw Error(ErrorCode::Parse, "write failed for " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error(ErrorCode::Parse, "cannot rename " + tmp + ": " + ec.message());
    }
}

}  // namespace slocc
