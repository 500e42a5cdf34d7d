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


#include "slocc/slocc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "slocc/error.hpp"
#include "slocc/io.hpp"
#include "slocc/report.hpp"

struct slocc_state {
    slocc::StateFile file;
};

struct slocc_census_table {
    slocc::CensusTable table;
};

namespace {

thread_local std::string last_error;

slocc_status status_of(slocc::ErrorCode code) {
    using slocc::ErrorCode;
    switch (code) {
        case ErrorCode::Parse: return SLOCC_ERR_PARSE;
        case ErrorCode::IndexOutOfRange: return SLOCC_ERR_INDEX_OUT_OF_RANGE;
        case ErrorCode::InvalidState: return SLOCC_ERR_INVALID_STATE;
        case ErrorCode::DimensionMismatch: return SLOCC_ERR_DIMENSION_MISMATCH;
        case ErrorCode::ShapeMismatch: return SLOCC_ERR_SHAPE_MISMATCH;
        case ErrorCode::Singular: return SLOCC_ERR_SINGULAR;
        case ErrorCode::IrreducibleFactor: return SLOCC_ERR_IRREDUCIBLE_FACTOR;
        case ErrorCode::NoQubitAxis: return SLOCC_ERR_NO_QUBIT_AXIS;
        case ErrorCode::ZeroPencil: return SLOCC_ERR_ZERO_PENCIL;
        case ErrorCode::DegenerateLambda: return SLOCC_ERR_DEGENERATE_LAMBDA;
        case ErrorCode::MissingOmega: return SLOCC_ERR_MISSING_OMEGA;
        case ErrorCode::Internal: return SLOCC_ERR_INTERNAL;
    }
    return SLOCC_ERR_INTERNAL;
}

// Runs f and turns any exception into a status plus last_error.
template <class F>
slocc_status guard(F &&f) {
    last_error.clear();
    try {
        f();
        return SLOCC_OK;
    } catch (const slocc::Error &e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return SLOCC_ERR_OUT_OF_MEMORY;
    } catch (const std::exception &e) {
        last_error = e.what();
        return SLOCC_ERR_INTERNAL;
    }
}

slocc_status null_arg(const char *what) {
    last_error = std::string("null argument: ") + what;
    return SLOCC_ERR_NULL_ARGUMENT;
}

char *dup_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

slocc::Index4 to_index(const size_t dims[4]) {
    return {dims[0], dims[1], dims[2], dims[3]};
}

int to_axis(int one_based) {
    if (one_based < 1 || one_based > 4) {
        throw slocc::Error(slocc::ErrorCode::InvalidState, "axes are 1-based in 1..4");
    }
    return one_based - 1;
}

slocc_status emit_state(slocc::StateFile f, slocc_state **out) {
    *out = new slocc_state{std::move(f)};
    return SLOCC_OK;
}

}  // namespace

extern "C" {

const char *slocc_version(void) {
    return "1.0.0";
}

const char *slocc_status_name(slocc_status status) {
    switch (status) {
        case SLOCC_OK: return "Ok";
        case SLOCC_ERR_PARSE: return "Parse";
        case SLOCC_ERR_INDEX_OUT_OF_RANGE: return "IndexOutOfRange";
        case SLOCC_ERR_INVALID_STATE: return "InvalidState";
        case SLOCC_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
        case SLOCC_ERR_SHAPE_MISMATCH: return "ShapeMismatch";
        case SLOCC_ERR_SINGULAR: return "Singular";
        case SLOCC_ERR_IRREDUCIBLE_FACTOR: return "IrreducibleFactor";
        case SLOCC_ERR_NO_QUBIT_AXIS: return "NoQubitAxis";
        case SLOCC_ERR_ZERO_PENCIL: return "ZeroPencil";
        case SLOCC_ERR_DEGENERATE_LAMBDA: return "DegenerateLambda";
        case SLOCC_ERR_MISSING_OMEGA: return "MissingOmega";
        case SLOCC_ERR_INTERNAL: return "Internal";
        case SLOCC_ERR_NULL_ARGUMENT: return "NullArgument";
        case SLOCC_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    }
    return "Unknown";
}

const char *slocc_last_error(void) {
    return last_error.c_str();
}

void slocc_string_free(char *s) {
    std::free(s);
}

slocc_decide_options slocc_decide_options_default(void) {
    slocc::DecideOptions d;
    return {d.seed, d.samples, static_cast<int>(d.timeout_ms), d.numeric ? 1 : 0};
}

slocc_status slocc_state_from_json(const char *json, slocc_state **out) {
    if (!json || !out) return null_arg("json/out");
    return guard([&] {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(json);
        } catch (const nlohmann::json::parse_error &e) {
            throw slocc::Error(slocc::ErrorCode::Parse, e.what());
        }
        emit_state(slocc::state_from_json(j), out);
    });
}

slocc_status slocc_state_from_file(const char *path, slocc_state **out) {
    if (!path || !out) return null_arg("path/out");
    return guard([&] { emit_state(slocc::read_state_file(path), out); });
}

slocc_status slocc_state_from_ket(const char *ket, const size_t dims[4], int qubit_axis, int single_axis,
                                  slocc_state **out) {
    if (!ket || !dims || !out) return null_arg("ket/dims/out");
    return guard([&] {
        slocc::StateFile f;
        f.qubit_axis = to_axis(qubit_axis);
        f.single_axis = to_axis(single_axis);
        f.state = slocc::parse_ket(ket, to_index(dims));
        emit_state(std::move(f), out);
    });
}

slocc_status slocc_state_random(const size_t dims[4], long bound, uint64_t seed, int gaussian, slocc_state **out) {
    if (!dims || !out) return null_arg("dims/out");
    return guard([&] {
        if (bound < 1) {
            throw slocc::Error(slocc::ErrorCode::InvalidState, "bound must be positive");
        }
        slocc::StateFile f;
        do {
            f.state = slocc::random_state(to_index(dims), bound, seed++, gaussian != 0);
        } while (f.state.is_zero());
        emit_state(std::move(f), out);
    });
}

slocc_status slocc_state_random_orbit(const slocc_state *state, long bound, uint64_t seed, slocc_state **out) {
    if (!state || !out) return null_arg("state/out");
    return guard([&] {
        if (bound < 1) {
            throw slocc::Error(slocc::ErrorCode::InvalidState, "bound must be positive");
        }
        slocc::StateFile f = state->file;
        f.state = slocc::apply_slocc(f.state, slocc::random_invertible_quad(f.state.dims(), bound, seed));
        emit_state(std::move(f), out);
    });
}

slocc_status slocc_state_to_json(const slocc_state *state, char **out) {
    if (!state || !out) return null_arg("state/out");
    return guard([&] { *out = dup_string(slocc::state_to_json(state->file).dump(2)); });
}

slocc_status slocc_state_to_ket(const slocc_state *state, char **out) {
    if (!state || !out) return null_arg("state/out");
    return guard([&] { *out = dup_string(state->file.state.to_ket()); });
}

void slocc_state_free(slocc_state *state) {
    delete state;
}

slocc_status slocc_classify(const slocc_state *state, char **report_json) {
    if (!state || !report_json) return null_arg("state/report_json");
    return guard([&] { *report_json = dup_string(slocc::classify_report(state->file).dump()); });
}

slocc_status slocc_compare(const slocc_state *a, const slocc_state *b, const slocc_decide_options *options,
                           slocc_verdict_kind *kind, char **report_json) {
    if (!a || !b || !report_json) return null_arg("a/b/report_json");
    return guard([&] {
        slocc::DecideOptions o;
        if (options) {
            if (options->samples < 0 || options->timeout_ms <= 0) {
                throw slocc::Error(slocc::ErrorCode::InvalidState, "samples must be >= 0 and timeout positive");
            }
            o.seed = options->seed;
            o.samples = options->samples;
            o.timeout_ms = options->timeout_ms;
            o.numeric = options->numeric != 0;
        }
        nlohmann::json j = slocc::compare_report(a->file, b->file, o);
        if (kind) {
            const std::string v = j["verdict"];
            *kind = v == "Equivalent" ? SLOCC_EQUIVALENT : v == "Inequivalent" ? SLOCC_INEQUIVALENT : SLOCC_UNDECIDED;
        }
        *report_json = dup_string(j.dump());
    });
}

slocc_status slocc_census_table_new(slocc_census_table **out) {
    if (!out) return null_arg("out");
    return guard([&] { *out = new slocc_census_table{slocc::CensusTable::seeded()}; });
}

slocc_status slocc_census_table_load(slocc_census_table *table, const char *path) {
    if (!table || !path) return null_arg("table/path");
    return guard([&] {
        slocc::CensusTable extra;
        try {
            extra = slocc::CensusTable::from_json(slocc::read_json_file(path));
        } catch (const slocc::Error &e) {
            throw slocc::Error(e.code(), std::string(path) + ": " + e.what());
        }
        table->table.merge(extra);
    });
}

void slocc_census_table_free(slocc_census_table *table) {
    delete table;
}

slocc_status slocc_census(const slocc_census_table *table, size_t l, size_t m, size_t n, long long *count,
                          char **report_json) {
    if (!report_json) return null_arg("report_json");
    return guard([&] {
        nlohmann::json j = slocc::census_report(l, m, n, table ? table->table : slocc::CensusTable::seeded());
        if (count) {
            *count = j.contains("families") ? j["families"].get<long long>() : 0;
        }
        *report_json = dup_string(j.dump());
    });
}

slocc_status slocc_realign(const char *matrix_text, size_t m, size_t n, char **report_json) {
    if (!matrix_text || !report_json) return null_arg("matrix_text/report_json");
    return guard([&] {
        *report_json = dup_string(slocc::realign_report(slocc::parse_matrix_text(matrix_text), m, n).dump());
    });
}

slocc_status slocc_orbit(const char *lambda, char **report_json) {
    if (!lambda || !report_json) return null_arg("lambda/report_json");
    return guard([&] {
        *report_json = dup_string(slocc::orbit_report(slocc::GaussianRational::parse(lambda)).dump());
    });
}

}  // extern "C"
