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

#include "slocc/exact.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace slocc {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Parse:
            return "ParseError";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::InvalidState:
            return "InvalidState";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::ShapeMismatch:
            return "ShapeMismatch";
        case ErrorCode::Singular:
            return "Singular";
        case ErrorCode::IrreducibleFactor:
            return "IrreducibleFactor";
        case ErrorCode::NoQubitAxis:
            return "NoQubitAxis";
        case ErrorCode::ZeroPencil:
            return "ZeroPencil";
        case ErrorCode::DegenerateLambda:
            return "DegenerateLambda";
        case ErrorCode::MissingOmega:
            return "MissingOmega";
        case ErrorCode::Internal:
            return "Internal";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

namespace {

[[noreturn]] void literal_error(std::string_view text, std::size_t pos, const char *what) {
    std::ostringstream out;
    out << "bad Gaussian-rational literal '" << text << "' at offset " << pos << ": " << what;
    throw Error(ErrorCode::Parse, out.str());
}

// rat := ['-'] digits [ '/' nonzero-digits ]
mpq_class parse_rational(std::string_view whole, std::string_view s, std::size_t offset) {
    std::size_t k = 0;
    bool negative = false;
    if (k < s.size() && s[k] == '-') {
        negative = true;
        ++k;
    }
    std::size_t start = k;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
        ++k;
    }
    if (k == start) {
        literal_error(whole, offset + k, "expected digits");
    }
    mpz_class num(std::string(s.substr(start, k - start)));
    mpz_class den = 1;
    if (k < s.size() && s[k] == '/') {
        ++k;
        std::size_t dstart = k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
            ++k;
        }
        if (k == dstart) {
            literal_error(whole, offset + k, "expected denominator digits");
        }
        den = mpz_class(std::string(s.substr(dstart, k - dstart)));
        if (den == 0) {
            literal_error(whole, offset + dstart, "zero denominator");
        }
    }
    if (k != s.size()) {
        literal_error(whole, offset + k, "unexpected character");
    }
    mpq_class q(negative ? mpz_class(-num) : num, den);
    q.canonicalize();
    return q;
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) {
        --e;
    }
    std::string_view s = text.substr(b, e - b);
    if (s.empty()) {
        literal_error(text, b, "empty literal");
    }
    if (s.back() != 'i') {
        return {parse_rational(text, s, b), 0};
    }
    std::string_view body = s.substr(0, s.size() - 1);
    // The separator is the last sign that is not the leading one.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            split = k;
            break;
        }
    }
    mpq_class re = 0;
    std::string_view im_part = body;
    std::size_t im_offset = b;
    if (split != std::string_view::npos) {
        re = parse_rational(text, body.substr(0, split), b);
        im_part = body.substr(split);
        im_offset = b + split;
    }
    bool negative = false;
    if (!im_part.empty() && (im_part[0] == '+' || im_part[0] == '-')) {
        if (im_part[0] == '+' && split == std::string_view::npos) {
            literal_error(text, im_offset, "unexpected '+'");
        }
        negative = im_part[0] == '-';
        im_part.remove_prefix(1);
        ++im_offset;
    }
    mpq_class im = 1;
    if (!im_part.empty()) {
        if (im_part[0] == '-') {
            literal_error(text, im_offset, "doubled sign");
        }
        im = parse_rational(text, im_part, im_offset);
    }
    if (negative) {
        im = -im;
    }
    return {re, im};
}

GaussianRational GaussianRational::reciprocal() const {
    if (is_zero()) {
        throw Error(ErrorCode::Singular, "division by zero in Q(i)");
    }
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
}

std::complex<double> GaussianRational::to_complex() const {
    return {re_.get_d(), im_.get_d()};
}

GaussianRational &GaussianRational::operator+=(const GaussianRational &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational &GaussianRational::operator-=(const GaussianRational &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational &GaussianRational::operator*=(const GaussianRational &o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational &GaussianRational::operator/=(const GaussianRational &o) {
    if (o.is_zero()) {
        throw Error(ErrorCode::Singular, "division by zero in Q(i)");
    }
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.reciprocal();
}

std::string GaussianRational::to_string() const {
    if (sgn(im_) == 0) {
        return re_.get_str();
    }
    std::string im_str;
    mpq_class mag = abs(im_);
    if (mag != 1) {
        im_str = mag.get_str();
    }
    im_str += "i";
    if (sgn(re_) == 0) {
        return (sgn(im_) < 0 ? "-" : "") + im_str;
    }
    return re_.get_str() + (sgn(im_) < 0 ? "-" : "+") + im_str;
}

bool field_less(const GaussianRational &a, const GaussianRational &b) {
    if (a.re() != b.re()) {
        return a.re() < b.re();
    }
    return a.im() < b.im();
}

GaussianRational pow(GaussianRational base, long exponent) {
    if (exponent < 0) {
        base = base.reciprocal();
        exponent = -exponent;
    }
    GaussianRational result = 1;
    while (exponent > 0) {
        if (exponent & 1) {
            result *= base;
        }
        base *= base;
        exponent >>= 1;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        m(k, k) = 1;
    }
    return m;
}

Matrix Matrix::diagonal(const std::vector<GaussianRational> &entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) {
        m(k, k) = entries[k];
    }
    return m;
}

Matrix Matrix::column(const std::vector<GaussianRational> &entries) {
    Matrix m(entries.size(), 1);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        m(k, 0) = entries[k];
    }
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const auto &x) { return x.is_zero(); });
}

bool Matrix::is_identity() const {
    if (!is_square()) {
        return false;
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const auto &x = (*this)(r, c);
            if (r == c ? !x.is_one() : !x.is_zero()) {
                return false;
            }
        }
    }
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw Error(ErrorCode::DimensionMismatch, "block out of range");
    }
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r) {
        for (std::size_t c = 0; c < nc; ++c) {
            b(r, c) = (*this)(r0 + r, c0 + c);
        }
    }
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix &m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) {
        throw Error(ErrorCode::DimensionMismatch, "set_block out of range");
    }
    for (std::size_t r = 0; r < m.rows_; ++r) {
        for (std::size_t c = 0; c < m.cols_; ++c) {
            (*this)(r0 + r, c0 + c) = m(r, c);
        }
    }
}

Matrix &Matrix::operator+=(const Matrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!o.data_[k].is_zero()) {
            data_[k] += o.data_[k];
        }
    }
    return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        if (!o.data_[k].is_zero()) {
            data_[k] -= o.data_[k];
        }
    }
    return *this;
}

Matrix &Matrix::operator*=(const GaussianRational &s) {
    for (auto &x : data_) {
        if (!x.is_zero()) {
            x *= s;
        }
    }
    return *this;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    }
    Matrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto &x = a(r, k);
            if (x.is_zero()) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols_; ++c) {
                const auto &y = b(k, c);
                if (!y.is_zero()) {
                    p(r, c) += x * y;
                }
            }
        }
    }
    return p;
}

std::string Matrix::to_string() const {
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) {
                out << ' ';
            }
            out << (*this)(r, c).to_string();
        }
        out << '\n';
    }
    return out.str();
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const auto &x = a(ar, ac);
            if (x.is_zero()) {
                continue;
            }
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    if (!b(br, bc).is_zero()) {
                        k(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
                    }
                }
            }
        }
    }
    return k;
}

Matrix direct_sum(const Matrix &a, const Matrix &b) {
    Matrix s(a.rows() + b.rows(), a.cols() + b.cols());
    s.set_block(0, 0, a);
    s.set_block(a.rows(), a.cols(), b);
    return s;
}

Matrix hstack(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "hstack row mismatch");
    }
    Matrix s(a.rows(), a.cols() + b.cols());
    s.set_block(0, 0, a);
    s.set_block(0, a.cols(), b);
    return s;
}

Matrix vstack(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "vstack column mismatch");
    }
    Matrix s(a.rows() + b.rows(), a.cols());
    s.set_block(0, 0, a);
    s.set_block(a.rows(), 0, b);
    return s;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination over Z[i]

namespace {

struct GaussInt {
    mpz_class re;
    mpz_class im;
    bool is_zero() const {
        return sgn(re) == 0 && sgn(im) == 0;
    }
};

GaussInt mul(const GaussInt &a, const GaussInt &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt &a, const GaussInt &b) {
    return {a.re - b.re, a.im - b.im};
}

// Exact quotient; Bareiss guarantees divisibility.
GaussInt divexact(const GaussInt &a, const GaussInt &b) {
    if (sgn(b.im) == 0) {
        GaussInt q;
        mpz_divexact(q.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
        mpz_divexact(q.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
        return q;
    }
    mpz_class n = b.re * b.re + b.im * b.im;
    GaussInt num{a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im};
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    return q;
}

// Scales each row to Gaussian integers; returns the product of the scalings.
std::vector<std::vector<GaussInt>> integer_rows(const Matrix &m, mpz_class *scale) {
    std::vector<std::vector<GaussInt>> rows(m.rows(), std::vector<GaussInt>(m.cols()));
    *scale = 1;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).re().get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).im().get_den_mpz_t());
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            rows[r][c].re = m(r, c).re().get_num() * (l / m(r, c).re().get_den());
            rows[r][c].im = m(r, c).im().get_num() * (l / m(r, c).im().get_den());
        }
        *scale *= l;
    }
    return rows;
}

// Bareiss elimination in place; returns rank and the last pivot.
std::size_t bareiss(std::vector<std::vector<GaussInt>> &a, std::size_t cols, GaussInt *last_pivot, int *sign) {
    std::size_t nrows = a.size();
    GaussInt prev{1, 0};
    std::size_t r = 0;
    *sign = 1;
    for (std::size_t c = 0; c < cols && r < nrows; ++c) {
        std::size_t p = r;
        while (p < nrows && a[p][c].is_zero()) {
            ++p;
        }
        if (p == nrows) {
            continue;
        }
        if (p != r) {
            std::swap(a[p], a[r]);
            *sign = -*sign;
        }
        for (std::size_t i = r + 1; i < nrows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                GaussInt t = sub(mul(a[r][c], a[i][j]), mul(a[i][c], a[r][j]));
                a[i][j] = divexact(t, prev);
            }
            a[i][c] = GaussInt{0, 0};
        }
        prev = a[r][c];
        ++r;
    }
    *last_pivot = prev;
    return r;
}

std::size_t entry_size(const GaussianRational &x) {
    return mpz_sizeinbase(x.re().get_num_mpz_t(), 2) + mpz_sizeinbase(x.re().get_den_mpz_t(), 2) +
           mpz_sizeinbase(x.im().get_num_mpz_t(), 2) + mpz_sizeinbase(x.im().get_den_mpz_t(), 2);
}

}  // namespace

std::size_t rank(const Matrix &m) {
    if (m.rows() == 0 || m.cols() == 0) {
        return 0;
    }
    mpz_class scale;
    auto rows = integer_rows(m, &scale);
    GaussInt pivot;
    int sign;
    return bareiss(rows, m.cols(), &pivot, &sign);
}

GaussianRational determinant(const Matrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    }
    if (m.rows() == 0) {
        return 1;
    }
    mpz_class scale;
    auto rows = integer_rows(m, &scale);
    GaussInt pivot;
    int sign;
    std::size_t r = bareiss(rows, m.cols(), &pivot, &sign);
    if (r < m.rows()) {
        return 0;
    }
    GaussianRational d(mpq_class(pivot.re, scale), mpq_class(pivot.im, scale));
    return sign < 0 ? -d : d;
}

bool is_invertible(const Matrix &m) {
    return m.is_square() && rank(m) == m.rows();
}

Matrix rref(const Matrix &m, std::vector<std::size_t> *pivots) {
    Matrix a = m;
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        // Smallest nonzero entry as pivot keeps intermediate growth down.
        std::size_t best = a.rows();
        std::size_t best_size = 0;
        for (std::size_t i = r; i < a.rows(); ++i) {
            if (!a(i, c).is_zero()) {
                std::size_t s = entry_size(a(i, c));
                if (best == a.rows() || s < best_size) {
                    best = i;
                    best_size = s;
                }
            }
        }
        if (best == a.rows()) {
            continue;
        }
        if (best != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::swap(a(best, j), a(r, j));
            }
        }
        GaussianRational inv = a(r, c).reciprocal();
        for (std::size_t j = c; j < a.cols(); ++j) {
            if (!a(r, j).is_zero()) {
                a(r, j) *= inv;
            }
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) {
                continue;
            }
            GaussianRational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) {
                if (!a(r, j).is_zero()) {
                    a(i, j) -= f * a(r, j);
                }
            }
        }
        piv.push_back(c);
        ++r;
    }
    if (pivots) {
        *pivots = std::move(piv);
    }
    return a;
}

Matrix invert(const Matrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorCode::Singular, "cannot invert a non-square matrix");
    }
    std::size_t n = m.rows();
    if (n == 0) {
        return {};
    }
    std::vector<std::size_t> piv;
    Matrix aug = rref(hstack(m, Matrix::identity(n)), &piv);
    if (piv.size() < n || piv[n - 1] != n - 1) {
        throw Error(ErrorCode::Singular, "matrix is singular");
    }
    return aug.block(0, n, n, n);
}

Matrix nullspace(const Matrix &m) {
    std::vector<std::size_t> piv;
    Matrix r = rref(m, &piv);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : piv) {
        is_pivot[p] = true;
    }
    Matrix basis(m.cols(), m.cols() - piv.size());
    std::size_t k = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        basis(f, k) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) {
            if (!r(i, f).is_zero()) {
                basis(piv[i], k) = -r(i, f);
            }
        }
        ++k;
    }
    return basis;
}

bool solve(const Matrix &a, const Matrix &b, Matrix *x) {
    if (a.rows() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "solve: right-hand side has wrong height");
    }
    std::vector<std::size_t> piv;
    Matrix r = rref(hstack(a, b), &piv);
    if (!piv.empty() && piv.back() >= a.cols()) {
        return false;
    }
    Matrix sol(a.cols(), b.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            sol(piv[i], c) = r(i, a.cols() + c);
        }
    }
    *x = std::move(sol);
    return true;
}

Matrix complete_basis(const Matrix &basis) {
    std::size_t n = basis.rows();
    std::vector<std::size_t> piv;
    rref(basis.transpose(), &piv);
    if (piv.size() != basis.cols()) {
        throw Error(ErrorCode::Internal, "complete_basis: columns are dependent");
    }
    std::vector<bool> used(n, false);
    for (auto p : piv) {
        used[p] = true;
    }
    Matrix full(n, n);
    full.set_block(0, 0, basis);
    std::size_t k = basis.cols();
    for (std::size_t j = 0; j < n; ++j) {
        if (!used[j]) {
            full(j, k++) = 1;
        }
    }
    return full;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

Poly Poly::monomial(const GaussianRational &c, std::size_t degree) {
    std::vector<GaussianRational> v(degree + 1);
    v[degree] = c;
    return Poly(std::move(v));
}

Poly Poly::linear(const GaussianRational &root) {
    return Poly({-root, 1});
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

GaussianRational Poly::operator()(const GaussianRational &x) const {
    GaussianRational acc;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        acc = acc * x + coeffs_[k];
    }
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<GaussianRational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d[k - 1] = coeffs_[k] * GaussianRational(static_cast<long>(k));
    }
    return Poly(std::move(d));
}

Poly Poly::monic() const {
    if (is_zero()) {
        return {};
    }
    GaussianRational inv = leading().reciprocal();
    std::vector<GaussianRational> c = coeffs_;
    for (auto &x : c) {
        x *= inv;
    }
    return Poly(std::move(c));
}

Poly operator+(const Poly &a, const Poly &b) {
    std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = a.coeff(k) + b.coeff(k);
    }
    return Poly(std::move(c));
}

Poly operator-(const Poly &a, const Poly &b) {
    std::vector<GaussianRational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = a.coeff(k) - b.coeff(k);
    }
    return Poly(std::move(c));
}

Poly operator*(const Poly &a, const Poly &b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<GaussianRational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Poly(std::move(c));
}

std::string Poly::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k].is_zero()) {
            continue;
        }
        if (!first) {
            out << " + ";
        }
        first = false;
        bool unit = coeffs_[k].is_one();
        if (!unit || k == 0) {
            out << '(' << coeffs_[k].to_string() << ')';
        }
        if (k > 0) {
            out << 'x';
            if (k > 1) {
                out << '^' << k;
            }
        }
    }
    return out.str();
}

std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b) {
    if (b.is_zero()) {
        throw Error(ErrorCode::Singular, "polynomial division by zero");
    }
    std::vector<GaussianRational> rem = a.coeffs();
    if (a.degree() < b.degree()) {
        return {Poly{}, a};
    }
    std::vector<GaussianRational> quot(a.coeffs().size() - b.coeffs().size() + 1);
    GaussianRational inv = b.leading().reciprocal();
    for (std::size_t k = quot.size(); k-- > 0;) {
        GaussianRational f = rem[k + b.coeffs().size() - 1] * inv;
        quot[k] = f;
        if (f.is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            rem[k + j] -= f * b.coeffs()[j];
        }
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly char_poly(const Matrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "characteristic polynomial of non-square matrix");
    }
    std::size_t n = m.rows();
    if (n == 0) {
        return Poly({1});
    }
    // Berkowitz: coefficients highest degree first.
    std::vector<GaussianRational> vect{1, -m(0, 0)};
    for (std::size_t r = 1; r < n; ++r) {
        // t_0 = 1, t_1 = -a_rr, t_k = -R A^{k-2} C.
        std::vector<GaussianRational> t(r + 2);
        t[0] = 1;
        t[1] = -m(r, r);
        std::vector<GaussianRational> v(r);  // A^{k} C
        for (std::size_t i = 0; i < r; ++i) {
            v[i] = m(i, r);
        }
        for (std::size_t k = 2; k < r + 2; ++k) {
            GaussianRational s;
            for (std::size_t i = 0; i < r; ++i) {
                if (!m(r, i).is_zero() && !v[i].is_zero()) {
                    s += m(r, i) * v[i];
                }
            }
            t[k] = -s;
            std::vector<GaussianRational> next(r);
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < r; ++j) {
                    if (!m(i, j).is_zero() && !v[j].is_zero()) {
                        next[i] += m(i, j) * v[j];
                    }
                }
            }
            v = std::move(next);
        }
        std::vector<GaussianRational> out(r + 2);
        for (std::size_t i = 0; i < r + 2; ++i) {
            for (std::size_t j = 0; j <= std::min(i, r); ++j) {
                if (!t[i - j].is_zero() && !vect[j].is_zero()) {
                    out[i] += t[i - j] * vect[j];
                }
            }
        }
        vect = std::move(out);
    }
    std::reverse(vect.begin(), vect.end());
    return Poly(std::move(vect));
}

namespace {

bool divides(const GaussInt &d, const GaussInt &x) {
    mpz_class n = d.re * d.re + d.im * d.im;
    mpz_class a = x.re * d.re + x.im * d.im;
    mpz_class b = x.im * d.re - x.re * d.im;
    return mpz_divisible_p(a.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(b.get_mpz_t(), n.get_mpz_t());
}

// Candidates near the numerically computed roots of q; each is verified exactly by the
// caller, so this only has to be fast, not right.
std::vector<GaussianRational> numeric_candidates(const Poly &q) {
    std::size_t n = static_cast<std::size_t>(q.degree());
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        companion(k, n - 1) = -q.coeff(k).to_complex();
        if (k + 1 < n) {
            companion(k + 1, k) = 1.0;
        }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<GaussianRational> out;
    if (solver.info() != Eigen::Success) {
        return out;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> z = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e15) {
            continue;
        }
        double re0 = std::floor(z.real());
        double im0 = std::floor(z.imag());
        for (int dr = 0; dr <= 1; ++dr) {
            for (int di = 0; di <= 1; ++di) {
                out.emplace_back(mpq_class(mpz_class(re0 + dr)), mpq_class(mpz_class(im0 + di)));
            }
        }
    }
    return out;
}

// Gaussian integer roots of a monic polynomial with Gaussian integer coefficients and
// nonzero constant term; complete by divisor search within the Fujiwara bound.
std::vector<GaussianRational> gaussian_integer_roots(const Poly &q) {
    std::size_t n = static_cast<std::size_t>(q.degree());
    double bound = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        double c = std::sqrt(q.coeff(n - k).norm().get_d());
        if (k == n) {
            c /= 2;
        }
        bound = std::max(bound, std::pow(c, 1.0 / static_cast<double>(k)));
    }
    bound = 2 * bound + 1;
    double bound2 = bound * bound;
    if (bound2 > 1e6) {
        // Past this size the numeric pass is the only search.
        return {};
    }
    GaussInt c0{q.coeff(0).re().get_num(), q.coeff(0).im().get_num()};
    mpz_class n0 = c0.re * c0.re + c0.im * c0.im;
    unsigned long limit = static_cast<unsigned long>(bound2);
    std::vector<GaussianRational> roots;
    for (unsigned long d = 1; d <= limit; ++d) {
        if (!mpz_divisible_ui_p(n0.get_mpz_t(), d)) {
            continue;
        }
        for (unsigned long a = 0; a * a <= d; ++a) {
            unsigned long b2 = d - a * a;
            auto b = static_cast<unsigned long>(std::llround(std::sqrt(static_cast<double>(b2))));
            if (b * b != b2) {
                continue;
            }
            long as[2] = {static_cast<long>(a), -static_cast<long>(a)};
            long bs[2] = {static_cast<long>(b), -static_cast<long>(b)};
            for (int sa = 0; sa < (a ? 2 : 1); ++sa) {
                for (int sb = 0; sb < (b ? 2 : 1); ++sb) {
                    GaussInt y{as[sa], bs[sb]};
                    if (!divides(y, c0)) {
                        continue;
                    }
                    GaussianRational cand(as[sa], bs[sb]);
                    if (q(cand).is_zero()) {
                        roots.push_back(cand);
                    }
                }
            }
        }
    }
    return roots;
}

}  // namespace

std::vector<RootMultiplicity> factor_linear(const Poly &p) {
    if (p.is_zero()) {
        throw Error(ErrorCode::InvalidState, "cannot factor the zero polynomial");
    }
    Poly rest = p.monic();
    std::vector<RootMultiplicity> out;
    int zero_mult = 0;
    while (rest.degree() > 0 && rest.coeff(0).is_zero()) {
        rest = divmod(rest, Poly::linear(0)).first;
        ++zero_mult;
    }
    if (zero_mult) {
        out.push_back({0, zero_mult});
    }
    if (rest.degree() > 0) {
        Poly squarefree = divmod(rest, gcd(rest, rest.derivative())).first.monic();
        // q(y) = D^n s(y / D) is monic with Gaussian integer coefficients.
        mpz_class d = 1;
        for (const auto &c : squarefree.coeffs()) {
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.re().get_den_mpz_t());
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.im().get_den_mpz_t());
        }
        std::size_t n = static_cast<std::size_t>(squarefree.degree());
        std::vector<GaussianRational> qc(n + 1);
        GaussianRational dq{mpq_class(d), 0};
        for (std::size_t k = 0; k <= n; ++k) {
            qc[k] = squarefree.coeff(k) * pow(dq, static_cast<long>(n - k));
        }
        Poly scaled(qc);
        auto deflate = [&](const GaussianRational &y) {
            GaussianRational root = y / dq;
            int mult = 0;
            while (true) {
                auto [quot, rem] = divmod(rest, Poly::linear(root));
                if (!rem.is_zero()) {
                    break;
                }
                rest = std::move(quot);
                ++mult;
            }
            if (mult) {
                out.push_back({root, mult});
                scaled = divmod(scaled, Poly::linear(y)).first;
            }
        };
        for (const auto &y : numeric_candidates(scaled)) {
            if (scaled.degree() > 0 && scaled(y).is_zero()) {
                deflate(y);
            }
        }
        if (scaled.degree() > 0) {
            for (const auto &y : gaussian_integer_roots(scaled)) {
                deflate(y);
            }
        }
    }
    if (rest.degree() > 0) {
        throw Error(ErrorCode::IrreducibleFactor,
                    "factor " + rest.to_string() + " has no root in Q(i); eigenvalues leave the exact field");
    }
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return field_less(a.root, b.root); });
    return out;
}

}  // namespace slocc
