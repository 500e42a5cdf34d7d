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


#include "slocc/census.hpp"

#include <algorithm>
#include <sstream>

#include "slocc/error.hpp"

namespace slocc {

namespace {

std::size_t get_size(const nlohmann::json &j, const char *key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
        throw Error(ErrorCode::Parse, std::string("omega table: missing or invalid \"") + key + "\"");
    }
    return j[key].get<std::size_t>();
}

long long get_count(const nlohmann::json &j) {
    if (!j.contains("count") || !j["count"].is_number_integer() || j["count"].get<long long>() < 0) {
        throw Error(ErrorCode::Parse, "omega table: missing or invalid \"count\"");
    }
    return j["count"].get<long long>();
}

}  // namespace

CensusTable CensusTable::seeded() {
    CensusTable t;
    // 2x2x2x2: the five families split by source system.
    t.set_omega(2, 2, 2);
    t.set_omega(2, 3, 2);
    t.set_omega(2, 4, 1);
    t.set_omega(4, 2, 1);
    t.set_omega(4, 3, 5);
    t.set_omega(4, 4, 16);
    t.set_omega(4, 5, 12);
    t.set_omega(4, 6, 6);
    // Only the sum is known; it is forced by N_f(2442) = 37.
    t.add_tail_sum({4, 7, 8, 3});
    return t;
}

CensusTable CensusTable::from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw Error(ErrorCode::Parse, "omega table: expected a JSON object");
    }
    CensusTable t;
    if (j.contains("omega")) {
        if (!j["omega"].is_array()) {
            throw Error(ErrorCode::Parse, "omega table: \"omega\" must be an array");
        }
        for (const auto &e : j["omega"]) {
            t.set_omega(get_size(e, "L"), get_size(e, "i"), get_count(e));
        }
    }
    if (j.contains("tail_sums")) {
        if (!j["tail_sums"].is_array()) {
            throw Error(ErrorCode::Parse, "omega table: \"tail_sums\" must be an array");
        }
        for (const auto &e : j["tail_sums"]) {
            t.add_tail_sum({get_size(e, "L"), get_size(e, "from"), get_size(e, "to"), get_count(e)});
        }
    }
    return t;
}

nlohmann::json CensusTable::to_json() const {
    nlohmann::json j = {{"omega", nlohmann::json::array()}, {"tail_sums", nlohmann::json::array()}};
    for (const auto &[key, count] : omega_) {
        j["omega"].push_back({{"L", key.first}, {"i", key.second}, {"count", count}});
    }
    for (const TailSum &t : tails_) {
        j["tail_sums"].push_back({{"L", t.l}, {"from", t.from}, {"to", t.to}, {"count", t.count}});
    }
    return j;
}

void CensusTable::set_omega(std::size_t l, std::size_t i, long long count) {
    CensusTable next = *this;
    next.omega_[{l, i}] = count;
    next.check_consistent();
    *this = std::move(next);
}

void CensusTable::add_tail_sum(const TailSum &t) {
    if (t.from > t.to) {
        throw Error(ErrorCode::Parse, "omega table: tail sum with from > to");
    }
    CensusTable next = *this;
    auto same = [&](const TailSum &o) { return o.l == t.l && o.from == t.from && o.to == t.to; };
    auto it = std::find_if(next.tails_.begin(), next.tails_.end(), same);
    if (it != next.tails_.end()) {
        *it = t;
    } else {
        next.tails_.push_back(t);
    }
    next.check_consistent();
    *this = std::move(next);
}

void CensusTable::merge(const CensusTable &other) {
    CensusTable next = *this;
    for (const auto &[key, count] : other.omega_) {
        next.omega_[key] = count;
    }
    for (const TailSum &t : other.tails_) {
        next.add_tail_sum(t);
    }
    next.check_consistent();
    *this = std::move(next);
}

std::optional<long long> CensusTable::omega(std::size_t l, std::size_t i) const {
    auto it = omega_.find({l, i});
    if (it == omega_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void CensusTable::check_consistent() const {
    for (const TailSum &t : tails_) {
        long long sum = 0;
        bool complete = true;
        for (std::size_t i = t.from; i <= t.to; ++i) {
            auto v = omega(t.l, i);
            if (!v) {
                complete = false;
                break;
            }
            sum += *v;
        }
        if (complete && sum != t.count) {
            std::ostringstream os;
            os << "omega table: entries Omega(" << t.l << "," << t.from << ".." << t.to << ") sum to " << sum
               << " but the tail sum says " << t.count;
            throw Error(ErrorCode::Parse, os.str());
        }
    }
}

GenuineReport genuine_filter(const Index4 &shape, int qubit_axis) {
    GenuineReport r;
    for (std::size_t k = 0; k < 4; ++k) {
        if (shape[k] < 2) {
            r.explanation = "particle " + std::to_string(k + 1) + " has dimension " + std::to_string(shape[k]) +
                            "; the state is degenerate (fewer than four entangled parties)";
            return r;
        }
    }
    if (qubit_axis < 0 || qubit_axis > 3 || shape[static_cast<std::size_t>(qubit_axis)] != 2) {
        r.explanation = "no qubit particle at the given axis";
        return r;
    }
    std::vector<std::size_t> axes;
    for (std::size_t k = 0; k < 4; ++k) {
        if (static_cast<int>(k) != qubit_axis) {
            axes.push_back(k);
        }
    }
    std::size_t big = *std::max_element(axes.begin(), axes.end(), [&](std::size_t x, std::size_t y) {
        return shape[x] < shape[y];
    });
    std::size_t others = 1;
    for (std::size_t k : axes) {
        if (k != big) {
            others *= shape[k];
        }
    }
    std::size_t bound = 2 * others;
    if (shape[big] > bound) {
        Index4 capped = shape;
        capped[big] = bound;
        std::ostringstream os;
        os << "particle " << big + 1 << " has dimension " << shape[big] << " > " << bound
           << "; the state has at most the genuine entanglement of " << capped[0] << "x" << capped[1] << "x"
           << capped[2] << "x" << capped[3];
        r.explanation = os.str();
        return r;
    }
    r.genuine = true;
    r.explanation = "largest dimension " + std::to_string(shape[big]) + " <= " + std::to_string(bound);
    return r;
}

FamilyCount count_families(const Index4 &shape, const CensusTable &table, int qubit_axis) {
    GenuineReport g = genuine_filter(shape, qubit_axis);
    if (!g.genuine) {
        throw Error(ErrorCode::InvalidState, "shape is not genuinely entangled: " + g.explanation);
    }
    std::vector<std::size_t> d;
    for (int k = 0; k < 4; ++k) {
        if (k != qubit_axis) {
            d.push_back(shape[static_cast<std::size_t>(k)]);
        }
    }
    std::sort(d.begin(), d.end(), std::greater<>());
    FamilyCount fc;
    fc.l = d[0];
    fc.m = d[1];
    fc.n = d[2];
    fc.from = std::max({fc.m, fc.n, (fc.l + 1) / 2});
    fc.to = std::min(2 * fc.l, fc.m * fc.n);
    std::vector<std::string> missing;
    for (std::size_t i = fc.from; i <= fc.to;) {
        if (auto v = table.omega(fc.l, i)) {
            fc.count += *v;
            fc.terms.push_back("Omega(" + std::to_string(fc.l) + "," + std::to_string(i) + ")=" + std::to_string(*v));
            ++i;
            continue;
        }
        // A tail sum can stand in only if it starts here, stays inside the range and
        // none of its entries are counted individually elsewhere.
        const TailSum *use = nullptr;
        for (const TailSum &t : table.tail_sums()) {
            if (t.l != fc.l || t.from != i || t.to > fc.to) {
                continue;
            }
            bool disjoint = true;
            for (std::size_t k = t.from; k <= t.to; ++k) {
                disjoint = disjoint && !table.omega(fc.l, k);
            }
            if (disjoint && (!use || t.to > use->to)) {
                use = &t;
            }
        }
        if (use) {
            fc.count += use->count;
            fc.terms.push_back("Omega(" + std::to_string(fc.l) + "," + std::to_string(use->from) + ".." +
                               std::to_string(use->to) + ")=" + std::to_string(use->count));
            i = use->to + 1;
            continue;
        }
        missing.push_back("(" + std::to_string(fc.l) + "," + std::to_string(i) + ")");
        ++i;
    }
    if (!missing.empty()) {
        std::string msg = "missing Omega entries:";
        for (const std::string &m : missing) {
            msg += " " + m;
        }
        throw Error(ErrorCode::MissingOmega, msg);
    }
    return fc;
}

}  // namespace slocc
