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

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "slocc/canonical.hpp"
#include "slocc/state.hpp"

namespace slocc {

enum class VerdictKind { Equivalent, Inequivalent, SameFamilyUndecided };
enum class InequivalenceReason { None, SignatureMismatch, OrbitExhausted, MinorInfeasible };

const char *verdict_name(VerdictKind kind);
const char *reason_name(InequivalenceReason reason);

struct DecideOptions {
    int qubit_axis = 0;   // 0-based
    int single_axis = 1;  // 0-based
    std::uint64_t seed = 1;
    int samples = 64;
    long timeout_ms = 20000;
    bool numeric = true;  // allow the floating-point witness search (results always verified exactly)
};

struct Verdict {
    VerdictKind kind = VerdictKind::SameFamilyUndecided;
    InequivalenceReason reason = InequivalenceReason::None;
    std::optional<LocalOperatorQuad> witness;  // original particle order
    nlohmann::json diagnostics = nlohmann::json::object();
};

nlohmann::json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const nlohmann::json &j);
nlohmann::json to_json(const Verdict &v);

/// Route (T, P, Q) between two arranged states through their common standard form,
/// verified exactly; empty when the family signatures differ.
std::optional<RouteTriple> route(const StateTensor &a, const StateTensor &b);

/// True iff two states (same qubit/single axes) have equal family signatures.
bool same_family(const StateTensor &a, const StateTensor &b, int qubit_axis = 0, int single_axis = 1);

Verdict decide_equivalence(const StateTensor &a, const StateTensor &b, const DecideOptions &options = {});

/// apply_slocc(a, w) == b exactly. Throws DimensionMismatch.
bool verify_witness(const StateTensor &a, const StateTensor &b, const LocalOperatorQuad &w);

}  // namespace slocc
