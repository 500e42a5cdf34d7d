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

#include <nlohmann/json.hpp>

#include "slocc/census.hpp"
#include "slocc/decide.hpp"
#include "slocc/io.hpp"

namespace slocc {

/// JSON reports behind the command-line tool. Matrices are arrays of rows of literals.

/// Shape, local ranks, genuine flag, signature, standard pair and the verified route.
nlohmann::json classify_report(const StateFile &f);
/// to_json of the verdict; roles are taken from `a`.
nlohmann::json compare_report(const StateFile &a, const StateFile &b, DecideOptions options);
nlohmann::json census_report(std::size_t l, std::size_t m, std::size_t n, const CensusTable &table);
/// Square (M N) x (M N) matrix realigned as M x M blocks of N x N.
nlohmann::json realign_report(const Matrix &matrix, std::size_t m, std::size_t n);
nlohmann::json orbit_report(const GaussianRational &lambda);

}  // namespace slocc
