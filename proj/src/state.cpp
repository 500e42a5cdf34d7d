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


#include "slocc/state.hpp"

#include <cctype>
#include <random>
#include <sstream>
#include <vector>

namespace slocc {

StateTensor::StateTensor(Index4 dims) : dims_(dims) {
    for (auto d : dims_) {
        if (d == 0) {
            throw Error(ErrorCode::InvalidState, "every dimension must be at least 1");
        }
    }
}

void StateTensor::check_index(const Index4 &idx) const {
    for (int k = 0; k < 4; ++k) {
        if (idx[k] >= dims_[k]) {
            std::ostringstream out;
            out << "index " << idx[k] + 1 << " on particle " << k + 1 << " exceeds dimension " << dims_[k];
            throw Error(ErrorCode::IndexOutOfRange, out.str());
        }
    }
}

GaussianRational StateTensor::amplitude(const Index4 &idx) const {
    check_index(idx);
    auto it = terms_.find(idx);
    return it == terms_.end() ? GaussianRational{} : it->second;
}

void StateTensor::set(const Index4 &idx, const GaussianRational &value) {
    check_index(idx);
    if (value.is_zero()) {
        terms_.erase(idx);
    } else {
        terms_[idx] = value;
    }
}

void StateTensor::add(const Index4 &idx, const GaussianRational &value) {
    check_index(idx);
    GaussianRational sum = amplitude(idx) + value;
    set(idx, sum);
}

void StateTensor::require_valid() const {
    if (is_zero()) {
        throw Error(ErrorCode::InvalidState, "all amplitudes are zero; not a quantum state");
    }
}

StateTensor StateTensor::scaled(const GaussianRational &c) const {
    StateTensor out(dims_);
    for (const auto &[idx, v] : terms_) {
        out.set(idx, v * c);
    }
    return out;
}

std::string StateTensor::to_ket() const {
    if (terms_.empty()) {
        return "0";
    }
    bool wide = false;
    for (auto d : dims_) {
        wide = wide || d > 9;
    }
    std::ostringstream out;
    bool first = true;
    for (const auto &[idx, v] : terms_) {
        GaussianRational c = v;
        bool negative = false;
        if (v.is_real() && sgn(v.re()) < 0) {
            negative = true;
            c = -v;
        }
        if (first) {
            out << (negative ? "-" : "");
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        if (!c.is_one()) {
            if (c.is_real()) {
                out << c.to_string();
            } else {
                out << '(' << c.to_string() << ')';
            }
        }
        out << '|';
        for (int k = 0; k < 4; ++k) {
            if (k && wide) {
                out << ',';
            }
            out << idx[k] + 1;
        }
        out << '>';
    }
    return out.str();
}

namespace {

class KetParser {
   public:
    KetParser(std::string_view text, const Index4 &dims) : text_(text), state_(dims) {
    }

    StateTensor run() {
        skip_space();
        bool first = true;
        while (pos_ < text_.size()) {
            bool negative = false;
            if (text_[pos_] == '+' || text_[pos_] == '-') {
                negative = text_[pos_] == '-';
                ++pos_;
                skip_space();
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            first = false;
            GaussianRational coeff = parse_coefficient();
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                skip_space();
            }
            Index4 idx = parse_ket_indices();
            state_.add(idx, negative ? -coeff : coeff);
            skip_space();
        }
        if (first) {
            fail("no terms");
        }
        return std::move(state_);
    }

   private:
    [[noreturn]] void fail(const std::string &what) const {
        std::ostringstream out;
        out << "ket parse error at offset " << pos_ << ": " << what;
        throw Error(ErrorCode::Parse, out.str());
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    GaussianRational parse_coefficient() {
        if (pos_ < text_.size() && text_[pos_] == '(') {
            std::size_t close = text_.find(')', pos_);
            if (close == std::string_view::npos) {
                fail("unclosed '('");
            }
            auto lit = text_.substr(pos_ + 1, close - pos_ - 1);
            GaussianRational c = literal(lit, pos_ + 1);
            pos_ = close + 1;
            return c;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                                       text_[pos_] == 'i')) {
            ++pos_;
        }
        if (pos_ == start) {
            return 1;
        }
        return literal(text_.substr(start, pos_ - start), start);
    }

    GaussianRational literal(std::string_view lit, std::size_t at) {
        try {
            return GaussianRational::parse(lit);
        } catch (const Error &e) {
            pos_ = at;
            fail(std::string("bad coefficient: ") + e.what());
        }
    }

    Index4 parse_ket_indices() {
        if (pos_ >= text_.size() || text_[pos_] != '|') {
            fail("expected '|'");
        }
        ++pos_;
        std::size_t close = text_.find('>', pos_);
        if (close == std::string_view::npos) {
            fail("unclosed ket, expected '>'");
        }
        std::string_view body = text_.substr(pos_, close - pos_);
        std::vector<std::size_t> values;
        if (body.find(',') != std::string_view::npos) {
            std::size_t k = 0;
            while (k <= body.size()) {
                std::size_t comma = body.find(',', k);
                if (comma == std::string_view::npos) {
                    comma = body.size();
                }
                values.push_back(parse_index(body.substr(k, comma - k), pos_ + k));
                k = comma + 1;
            }
        } else {
            for (std::size_t k = 0; k < body.size(); ++k) {
                if (std::isspace(static_cast<unsigned char>(body[k]))) {
                    continue;
                }
                values.push_back(parse_index(body.substr(k, 1), pos_ + k));
            }
        }
        if (values.size() != 4) {
            fail("a ket needs exactly four indices, got " + std::to_string(values.size()));
        }
        Index4 idx;
        for (int k = 0; k < 4; ++k) {
            if (values[k] == 0) {
                fail("indices are 1-based");
            }
            idx[k] = values[k] - 1;
        }
        pos_ = close + 1;
        return idx;
    }

    std::size_t parse_index(std::string_view s, std::size_t at) {
        std::size_t b = 0;
        std::size_t e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
            ++b;
        }
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
            --e;
        }
        if (b == e) {
            pos_ = at;
            fail("empty index");
        }
        std::size_t v = 0;
        for (std::size_t k = b; k < e; ++k) {
            if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
                pos_ = at + k;
                fail("index must be a positive integer");
            }
            v = v * 10 + static_cast<std::size_t>(s[k] - '0');
            if (v > 1000000) {
                pos_ = at + k;
                fail("index too large");
            }
        }
        return v;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    StateTensor state_;
};

}  // namespace

StateTensor parse_ket(std::string_view text, const Index4 &dims) {
    return KetParser(text, dims).run();
}

StateTensor permute_axes(const StateTensor &t, const std::array<int, 4> &order) {
    Index4 dims;
    for (int k = 0; k < 4; ++k) {
        dims[k] = t.dims()[order[k]];
    }
    StateTensor out(dims);
    for (const auto &[idx, v] : t.terms()) {
        Index4 j;
        for (int k = 0; k < 4; ++k) {
            j[k] = idx[order[k]];
        }
        out.set(j, v);
    }
    return out;
}

std::pair<StateTensor, Arrangement> arrange_axes(const StateTensor &t, int qubit_axis, int single_axis) {
    if (qubit_axis < 0 || qubit_axis > 3 || single_axis < 0 || single_axis > 3 || qubit_axis == single_axis) {
        throw Error(ErrorCode::InvalidState, "qubit and single axes must be two distinct axes in 1..4");
    }
    if (t.dims()[qubit_axis] != 2) {
        throw Error(ErrorCode::NoQubitAxis, "particle " + std::to_string(qubit_axis + 1) + " has dimension " +
                                                std::to_string(t.dims()[qubit_axis]) + ", not 2");
    }
    Arrangement a;
    a.order[0] = qubit_axis;
    a.order[1] = single_axis;
    int k = 2;
    for (int axis = 0; axis < 4; ++axis) {
        if (axis != qubit_axis && axis != single_axis) {
            a.order[k++] = axis;
        }
    }
    return {permute_axes(t, a.order), a};
}

StateTensor restore_axes(const StateTensor &arranged, const Arrangement &arrangement) {
    std::array<int, 4> inverse{};
    for (int k = 0; k < 4; ++k) {
        inverse[arrangement.order[k]] = k;
    }
    return permute_axes(arranged, inverse);
}

const char *side_name(CompositeSide side) {
    return side == CompositeSide::Columns ? "columns" : "rows";
}

CompositeSide composite_side_for(std::size_t l, std::size_t m, std::size_t n) {
    return l < m * n ? CompositeSide::Columns : CompositeSide::Rows;
}

MatrixPair to_matrix_pair(const StateTensor &arranged) {
    const Index4 &d = arranged.dims();
    if (d[0] != 2) {
        throw Error(ErrorCode::NoQubitAxis, "first arranged axis must be the qubit");
    }
    MatrixPair pair;
    pair.single_dim = d[1];
    pair.factor1 = d[2];
    pair.factor2 = d[3];
    pair.side = composite_side_for(d[1], d[2], d[3]);
    std::size_t mn = d[2] * d[3];
    bool columns = pair.side == CompositeSide::Columns;
    Matrix g[2] = {columns ? Matrix(d[1], mn) : Matrix(mn, d[1]), columns ? Matrix(d[1], mn) : Matrix(mn, d[1])};
    for (const auto &[idx, v] : arranged.terms()) {
        std::size_t c = idx[2] * d[3] + idx[3];
        if (columns) {
            g[idx[0]](idx[1], c) = v;
        } else {
            g[idx[0]](c, idx[1]) = v;
        }
    }
    pair.gamma1 = std::move(g[0]);
    pair.gamma2 = std::move(g[1]);
    return pair;
}

StateTensor from_matrix_pair(const MatrixPair &pair) {
    StateTensor out({2, pair.single_dim, pair.factor1, pair.factor2});
    bool columns = pair.side == CompositeSide::Columns;
    const Matrix *g[2] = {&pair.gamma1, &pair.gamma2};
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t l = 0; l < pair.single_dim; ++l) {
            for (std::size_t c = 0; c < pair.factor1 * pair.factor2; ++c) {
                const auto &v = columns ? (*g[i])(l, c) : (*g[i])(c, l);
                if (!v.is_zero()) {
                    out.set({i, l, c / pair.factor2, c % pair.factor2}, v);
                }
            }
        }
    }
    return out;
}

LocalOperatorQuad LocalOperatorQuad::identity(const Index4 &dims) {
    LocalOperatorQuad q;
    for (int k = 0; k < 4; ++k) {
        q.ops[k] = Matrix::identity(dims[k]);
    }
    return q;
}

LocalOperatorQuad LocalOperatorQuad::inverse() const {
    LocalOperatorQuad q;
    for (int k = 0; k < 4; ++k) {
        q.ops[k] = invert(ops[k]);
    }
    return q;
}

LocalOperatorQuad LocalOperatorQuad::compose(const LocalOperatorQuad &other) const {
    LocalOperatorQuad q;
    for (int k = 0; k < 4; ++k) {
        q.ops[k] = ops[k] * other.ops[k];
    }
    return q;
}

StateTensor apply_slocc(const StateTensor &t, const LocalOperatorQuad &ops) {
    const Index4 &d = t.dims();
    for (int k = 0; k < 4; ++k) {
        if (ops.ops[k].rows() != d[k] || ops.ops[k].cols() != d[k]) {
            throw Error(ErrorCode::DimensionMismatch, "operator on particle " + std::to_string(k + 1) +
                                                          " must be " + std::to_string(d[k]) + "x" +
                                                          std::to_string(d[k]));
        }
        if (!is_invertible(ops.ops[k])) {
            throw Error(ErrorCode::Singular, "operator on particle " + std::to_string(k + 1) + " is not invertible");
        }
    }
    std::vector<GaussianRational> dense(t.size());
    auto flat = [&](const Index4 &i) { return ((i[0] * d[1] + i[1]) * d[2] + i[2]) * d[3] + i[3]; };
    for (const auto &[idx, v] : t.terms()) {
        dense[flat(idx)] = v;
    }
    // One mode at a time.
    for (int mode = 0; mode < 4; ++mode) {
        std::vector<GaussianRational> next(dense.size());
        std::size_t stride = 1;
        for (int k = mode + 1; k < 4; ++k) {
            stride *= d[k];
        }
        std::size_t dm = d[mode];
        std::size_t outer = dense.size() / (stride * dm);
        const Matrix &a = ops.ops[mode];
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t s = 0; s < stride; ++s) {
                std::size_t base = o * dm * stride + s;
                for (std::size_t j = 0; j < dm; ++j) {
                    const auto &x = dense[base + j * stride];
                    if (x.is_zero()) {
                        continue;
                    }
                    for (std::size_t i = 0; i < dm; ++i) {
                        if (!a(i, j).is_zero()) {
                            next[base + i * stride] += a(i, j) * x;
                        }
                    }
                }
            }
        }
        dense = std::move(next);
    }
    StateTensor out(d);
    for (std::size_t f = 0; f < dense.size(); ++f) {
        if (!dense[f].is_zero()) {
            std::size_t r = f;
            Index4 idx;
            for (int k = 3; k >= 0; --k) {
                idx[k] = r % d[k];
                r /= d[k];
            }
            out.set(idx, dense[f]);
        }
    }
    return out;
}

std::pair<Matrix, Matrix> apply_route(const Matrix &t, const Matrix &p, const Matrix &q, const Matrix &g1,
                                      const Matrix &g2) {
    Matrix x = p * g1 * q;
    Matrix y = p * g2 * q;
    return {t(0, 0) * x + t(0, 1) * y, t(1, 0) * x + t(1, 1) * y};
}

std::array<std::size_t, 4> local_ranks(const StateTensor &t) {
    std::array<std::size_t, 4> ranks{};
    const Index4 &d = t.dims();
    for (int k = 0; k < 4; ++k) {
        Matrix flat(d[k], t.size() / d[k]);
        for (const auto &[idx, v] : t.terms()) {
            std::size_t col = 0;
            for (int j = 0; j < 4; ++j) {
                if (j != k) {
                    col = col * d[j] + idx[j];
                }
            }
            flat(idx[k], col) = v;
        }
        ranks[k] = rank(flat);
    }
    return ranks;
}

StateTensor random_state(const Index4 &dims, long bound, std::uint64_t seed, bool gaussian) {
    std::mt19937_64 rng(seed);
    StateTensor out(dims);
    std::uniform_int_distribution<long> unsigned_part(0, bound);
    std::uniform_int_distribution<long> signed_part(-bound, bound);
    for (std::size_t i = 0; i < dims[0]; ++i) {
        for (std::size_t l = 0; l < dims[1]; ++l) {
            for (std::size_t m = 0; m < dims[2]; ++m) {
                for (std::size_t n = 0; n < dims[3]; ++n) {
                    GaussianRational v = gaussian ? GaussianRational(signed_part(rng), signed_part(rng))
                                                  : GaussianRational(unsigned_part(rng));
                    out.set({i, l, m, n}, v);
                }
            }
        }
    }
    return out;
}

LocalOperatorQuad random_invertible_quad(const Index4 &dims, long bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> part(-bound, bound);
    LocalOperatorQuad q;
    for (std::size_t k = 0; k < 4; ++k) {
        Matrix m(dims[k], dims[k]);
        do {
            for (std::size_t r = 0; r < dims[k]; ++r) {
                for (std::size_t c = 0; c < dims[k]; ++c) {
                    m(r, c) = GaussianRational(part(rng), part(rng));
                }
            }
        } while (!is_invertible(m));
        q.ops[k] = m;
    }
    return q;
}

}  // namespace slocc
