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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "slocc/state.hpp"

namespace slocc {

/// Aggregate sum_{i=from}^{to} Omega_{L,i} for entries not known individually.
struct TailSum {
    std::size_t l = 0;
    std::size_t from = 0;
    std::size_t to = 0;
    long long count = 0;
};

class CensusTable {
   public:
    /// Entries seeded from the published family listings.
    static CensusTable seeded();
    /// {"omega":[{"L":..,"i":..,"count":..}], "tail_sums":[{"L":..,"from":..,"to":..,"count":..}]}
    static CensusTable from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;

    /// Later values win for single entries; throws Parse when a tail sum
    /// disagrees with fully known entries in its range.
    void set_omega(std::size_t l, std::size_t i, long long count);
    void add_tail_sum(const TailSum &t);
    void merge(const CensusTable &other);

    std::optional<long long> omega(std::size_t l, std::size_t i) const;
    const std::map<std::pair<std::size_t, std::size_t>, long long> &entries() const {
        return omega_;
    }
    const std::vector<TailSum> &tail_sums() const {
        return tails_;
    }

   private:
    void check_consistent() const;
    std::map<std::pair<std::size_t, std::size_t>, long long> omega_;
    std::vector<TailSum> tails_;
};

struct GenuineReport {
    bool genuine = false;
    std::string explanation;
};

/// Largest non-qubit dimension must not exceed twice the product of the other two.
GenuineReport genuine_filter(const Index4 &shape, int qubit_axis = 0);

struct FamilyCount {
    long long count = 0;
    std::size_t l = 0, m = 0, n = 0;
    std::size_t from = 0, to = 0;  // summation range over i
    std::vector<std::string> terms;  // "Omega(4,3)=5" or "Omega(4,7..8)=3"
};

/// Throws InvalidState for non-genuine shapes and MissingOmega naming the absent (L, i).
FamilyCount count_families(const Index4 &shape, const CensusTable &table = CensusTable::seeded(), int qubit_axis = 0);

}  // namespace slocc
