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


// Command-line front end. Talks to the library only through slocc.h.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "slocc/slocc.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit : int {
    kOk = 0,
    kError = 1,
    kParse = 2,
    kUndecided = 3,
    kInternal = 4,
    kIrreducible = 5,
    kInequivalent = 10,
};

int exit_for(slocc_status s) {
    switch (s) {
        case SLOCC_OK: return kOk;
        case SLOCC_ERR_PARSE:
        case SLOCC_ERR_NULL_ARGUMENT: return kParse;
        case SLOCC_ERR_INTERNAL: return kInternal;
        case SLOCC_ERR_IRREDUCIBLE_FACTOR: return kIrreducible;
        default: return kError;
    }
}

int exit_for(slocc_verdict_kind k) {
    switch (k) {
        case SLOCC_EQUIVALENT: return kOk;
        case SLOCC_INEQUIVALENT: return kInequivalent;
        case SLOCC_UNDECIDED: return kUndecided;
    }
    return kUndecided;
}

struct Config {
    std::string format = "text";
    uint64_t seed = 1;
    int samples = 64;
    int timeout_ms = 20000;
    bool no_numeric = false;
    std::string omega_table;
    std::string batch;
    std::string out_dir;
};

// Owns a string handed out by the library.
std::string take(char *s) {
    std::string out = s ? s : "";
    slocc_string_free(s);
    return out;
}

struct Failure {
    slocc_status status;
    std::string message;
};

Failure failure(slocc_status s) {
    return {s, std::string(slocc_status_name(s)) + ": " + slocc_last_error()};
}

bool is_matrix(const json &j) {
    if (!j.is_array() || j.empty()) return false;
    return std::all_of(j.begin(), j.end(), [](const json &row) {
        return row.is_array() && std::all_of(row.begin(), row.end(), [](const json &x) { return x.is_string(); });
    });
}

std::string scalar_text(const json &j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

void render(std::ostream &os, const json &j, int indent) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json &v = it.value();
        if (is_matrix(v)) {
            std::size_t width = 1;
            for (const json &row : v)
                for (const json &x : row) width = std::max(width, x.get<std::string>().size());
            os << pad << it.key() << ":\n";
            for (const json &row : v) {
                os << pad << "  [";
                for (std::size_t c = 0; c < row.size(); ++c) {
                    std::string s = row[c].get<std::string>();
                    os << (c ? " " : "") << std::string(width - s.size(), ' ') << s;
                }
                os << "]\n";
            }
        } else if (v.is_object()) {
            if (v.empty()) {
                os << pad << it.key() << ": {}\n";
            } else {
                os << pad << it.key() << ":\n";
                render(os, v, indent + 2);
            }
        } else if (v.is_array() && std::none_of(v.begin(), v.end(), [](const json &x) { return x.is_structured(); })) {
            os << pad << it.key() << ": ";
            for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << scalar_text(v[k]);
            os << "\n";
        } else if (v.is_array()) {
            os << pad << it.key() << ":\n";
            for (std::size_t k = 0; k < v.size(); ++k) {
                os << pad << "  [" << k << "]\n";
                if (v[k].is_object()) {
                    render(os, v[k], indent + 4);
                } else {
                    os << pad << "    " << v[k].dump() << "\n";
                }
            }
        } else {
            os << pad << it.key() << ": " << (v.is_null() ? "none" : scalar_text(v)) << "\n";
        }
    }
}

std::string format_report(const Config &cfg, const json &j) {
    if (cfg.format == "json") {
        return j.dump(2) + "\n";
    }
    // Headline fields first, diagnostics last.
    static const char *front[] = {"file", "a", "b", "verdict", "reason", "witness_verified", "witness",
                                  "families", "genuine", "signature"};
    json tail = json::object();
    std::ostringstream os;
    for (const char *k : front) {
        if (j.contains(k)) {
            json one = json::object();
            one[k] = j[k];
            render(os, one, 0);
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool listed = std::any_of(std::begin(front), std::end(front), [&](const char *k) { return it.key() == k; });
        if (!listed && it.key() != "diagnostics") tail[it.key()] = it.value();
    }
    render(os, tail, 0);
    if (j.contains("diagnostics")) {
        json one = json::object();
        one["diagnostics"] = j["diagnostics"];
        render(os, one, 0);
    }
    return os.str();
}

void emit(const Config &cfg, const json &j) {
    std::cout << format_report(cfg, j);
}

int report_failure(const Failure &f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_for(f.status);
}

void write_atomic(const fs::path &path, const std::string &content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

struct StateHandle {
    slocc_state *p = nullptr;
    ~StateHandle() { slocc_state_free(p); }
};

slocc_decide_options decide_options(const Config &cfg) {
    slocc_decide_options o = slocc_decide_options_default();
    o.seed = cfg.seed;
    o.samples = cfg.samples;
    o.timeout_ms = cfg.timeout_ms;
    o.numeric = cfg.no_numeric ? 0 : 1;
    return o;
}

// One batch or single item: the report (or error object) and its exit code.
struct Outcome {
    json report;
    int code = kOk;
};

Outcome classify_one(const std::string &path) {
    StateHandle s;
    slocc_status st = slocc_state_from_file(path.c_str(), &s.p);
    char *out = nullptr;
    if (st == SLOCC_OK) st = slocc_classify(s.p, &out);
    if (st != SLOCC_OK) {
        Failure f = failure(st);
        return {{{"file", path}, {"error", slocc_status_name(st)}, {"message", f.message}}, exit_for(st)};
    }
    json j = json::parse(take(out));
    j["file"] = path;
    return {j, kOk};
}

Outcome compare_one(const Config &cfg, const std::string &a, const std::string &b) {
    StateHandle sa, sb;
    slocc_status st = slocc_state_from_file(a.c_str(), &sa.p);
    if (st == SLOCC_OK) st = slocc_state_from_file(b.c_str(), &sb.p);
    char *out = nullptr;
    slocc_verdict_kind kind = SLOCC_UNDECIDED;
    slocc_decide_options o = decide_options(cfg);
    if (st == SLOCC_OK) st = slocc_compare(sa.p, sb.p, &o, &kind, &out);
    if (st != SLOCC_OK) {
        Failure f = failure(st);
        return {{{"a", a}, {"b", b}, {"error", slocc_status_name(st)}, {"message", f.message}}, exit_for(st)};
    }
    json j = json::parse(take(out));
    j["a"] = a;
    j["b"] = b;
    return {j, exit_for(kind)};
}

std::vector<std::string> batch_inputs(const std::string &dir) {
    std::vector<std::string> files;
    for (const auto &e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

// Items run on a small worker pool; every report file is written atomically and
// the index lists items in sorted input order.
int run_batch(const Config &cfg, const std::vector<std::string> &files,
              const std::function<Outcome(const std::string &)> &work) {
    fs::path out_dir = cfg.out_dir.empty() ? fs::path(cfg.batch) / "reports" : fs::path(cfg.out_dir);
    fs::create_directories(out_dir);
    std::vector<Outcome> results(files.size());
    std::atomic<std::size_t> next{0};
    std::mutex io_mutex;
    std::string write_error;
    auto worker = [&] {
        for (std::size_t k = next++; k < files.size(); k = next++) {
            results[k] = work(files[k]);
            std::string ext = cfg.format == "json" ? ".json" : ".txt";
            fs::path target = out_dir / (fs::path(files[k]).stem().string() + ext);
            try {
                write_atomic(target, format_report(cfg, results[k].report));
            } catch (const std::exception &e) {
                std::lock_guard<std::mutex> lock(io_mutex);
                write_error = e.what();
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();

    json index = json::array();
    int worst = kOk;
    for (std::size_t k = 0; k < files.size(); ++k) {
        json item = {{"file", files[k]}, {"exit_code", results[k].code}};
        if (results[k].report.contains("verdict")) item["verdict"] = results[k].report["verdict"];
        if (results[k].report.contains("signature")) item["signature"] = results[k].report["signature"];
        if (results[k].report.contains("error")) item["error"] = results[k].report["error"];
        index.push_back(item);
        if (results[k].code != kOk && (worst == kOk || results[k].code < worst)) worst = results[k].code;
    }
    json summary = {{"items", index}, {"count", files.size()}, {"reports", out_dir.string()}};
    write_atomic(out_dir / "index.json", summary.dump(2) + "\n");
    if (!write_error.empty()) {
        std::cerr << "error: " << write_error << "\n";
        return kError;
    }
    emit(cfg, summary);
    return worst;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact SLOCC classification of 2xLxMxN four-partite states"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "Seed for sampling and random states");
    app.add_option("--samples", cfg.samples, "Sample budget per Moebius element")->check(CLI::NonNegativeNumber);
    app.add_option("--timeout-ms", cfg.timeout_ms, "Time budget for a comparison")->check(CLI::PositiveNumber);
    app.add_flag("--no-numeric", cfg.no_numeric, "Disable the numeric witness search in compare");
    app.add_option("--omega-table", cfg.omega_table, "Extra Omega entries (JSON) merged over the built-in table");
    app.add_option("--batch", cfg.batch, "Process every *.json state file in this directory");
    app.add_option("--out-dir", cfg.out_dir, "Where batch reports go (default <batch>/reports)");

    std::string file_a, file_b;
    auto *classify = app.add_subcommand("classify", "Standard form, signature and route of a state");
    classify->add_option("state", file_a, "State file");

    auto *compare = app.add_subcommand("compare", "Decide SLOCC equivalence of two states");
    compare->add_option("a", file_a, "State file")->required();
    compare->add_option("b", file_b, "Second state file (omit with --batch)");

    std::size_t dl = 0, dm = 0, dn = 0;
    auto *census = app.add_subcommand("census", "Number of entanglement families of 2xLxMxN");
    census->add_option("L", dl)->required();
    census->add_option("M", dm)->required();
    census->add_option("N", dn)->required();

    std::string matrix_file;
    std::size_t fm = 0, fn = 0;
    auto *realign = app.add_subcommand("realign", "Realign an (MN)x(MN) matrix and test for a Kronecker product");
    realign->add_option("matrix", matrix_file, "Matrix file")->required();
    realign->add_option("M", fm)->required()->check(CLI::PositiveNumber);
    realign->add_option("N", fn)->required()->check(CLI::PositiveNumber);

    std::string lambda;
    auto *orbit = app.add_subcommand("orbit", "Residual Moebius orbit of an eigenvalue");
    orbit->add_option("lambda", lambda)->required();

    std::size_t rdims[4] = {2, 0, 0, 0};
    long bound = 2;
    bool gaussian = false;
    std::string orbit_of, out_file;
    auto *random = app.add_subcommand("random", "Emit a random state file");
    random->add_option("L", rdims[1]);
    random->add_option("M", rdims[2]);
    random->add_option("N", rdims[3]);
    random->add_option("--bound", bound, "Entry bound")->check(CLI::PositiveNumber);
    random->add_flag("--gaussian", gaussian, "Gaussian-integer amplitudes");
    random->add_option("--orbit-of", orbit_of, "Move this state by random invertible local operators instead");
    random->add_option("-o,--output", out_file, "Write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*classify) {
            if (!cfg.batch.empty()) {
                return run_batch(cfg, batch_inputs(cfg.batch), classify_one);
            }
            if (file_a.empty()) {
                std::cerr << "error: classify needs a state file or --batch\n";
                return kParse;
            }
            Outcome o = classify_one(file_a);
            if (o.code != kOk) {
                std::cerr << "error: " << o.report["message"].get<std::string>() << "\n";
                return o.code;
            }
            emit(cfg, o.report);
            return kOk;
        }
        if (*compare) {
            if (!cfg.batch.empty()) {
                return run_batch(cfg, batch_inputs(cfg.batch),
                                 [&](const std::string &b) { return compare_one(cfg, file_a, b); });
            }
            if (file_b.empty()) {
                std::cerr << "error: compare needs two state files or --batch\n";
                return kParse;
            }
            Outcome o = compare_one(cfg, file_a, file_b);
            if (o.report.contains("error")) {
                std::cerr << "error: " << o.report["message"].get<std::string>() << "\n";
                return o.code;
            }
            emit(cfg, o.report);
            return o.code;
        }
        if (*census) {
            slocc_census_table *table = nullptr;
            slocc_status st = slocc_census_table_new(&table);
            if (st == SLOCC_OK && !cfg.omega_table.empty()) st = slocc_census_table_load(table, cfg.omega_table.c_str());
            char *out = nullptr;
            if (st == SLOCC_OK) st = slocc_census(table, dl, dm, dn, nullptr, &out);
            slocc_census_table_free(table);
            if (st != SLOCC_OK) return report_failure(failure(st));
            emit(cfg, json::parse(take(out)));
            return kOk;
        }
        if (*realign) {
            std::ifstream in(matrix_file);
            if (!in) {
                std::cerr << "error: cannot open " << matrix_file << "\n";
                return kParse;
            }
            std::stringstream text;
            text << in.rdbuf();
            char *out = nullptr;
            slocc_status st = slocc_realign(text.str().c_str(), fm, fn, &out);
            if (st != SLOCC_OK) return report_failure(failure(st));
            emit(cfg, json::parse(take(out)));
            return kOk;
        }
        if (*orbit) {
            char *out = nullptr;
            slocc_status st = slocc_orbit(lambda.c_str(), &out);
            if (st != SLOCC_OK) return report_failure(failure(st));
            emit(cfg, json::parse(take(out)));
            return kOk;
        }
        if (*random) {
            StateHandle s;
            slocc_status st;
            if (!orbit_of.empty()) {
                StateHandle base;
                st = slocc_state_from_file(orbit_of.c_str(), &base.p);
                if (st == SLOCC_OK) st = slocc_state_random_orbit(base.p, bound, cfg.seed, &s.p);
            } else {
                if (rdims[1] == 0 || rdims[2] == 0 || rdims[3] == 0) {
                    std::cerr << "error: random needs L M N or --orbit-of\n";
                    return kParse;
                }
                st = slocc_state_random(rdims, bound, cfg.seed, gaussian ? 1 : 0, &s.p);
            }
            char *out = nullptr;
            if (st == SLOCC_OK) st = slocc_state_to_json(s.p, &out);
            if (st != SLOCC_OK) return report_failure(failure(st));
            std::string text = take(out) + "\n";
            if (out_file.empty()) {
                std::cout << text;
            } else {
                write_atomic(out_file, text);
            }
            return kOk;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kParse;
}
