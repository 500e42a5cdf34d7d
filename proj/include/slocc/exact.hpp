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

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slocc/error.hpp"

namespace slocc {

/// An element of Q(i) with both parts kept as reduced GMP rationals.
class GaussianRational {
   public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {  // NOLINT(google-explicit-constructor)
    }
    GaussianRational(long re, long im) : re_(re), im_(im) {
    }
    GaussianRational(mpq_class re, mpq_class im = 0);

    static GaussianRational i() {
        return {0, 1};
    }
    /// Parses the literal grammar `rat | [rat ('+'|'-')] (rat | '') 'i'`.
    static GaussianRational parse(std::string_view text);

    const mpq_class &re() const {
        return re_;
    }
    const mpq_class &im() const {
        return im_;
    }
    bool is_zero() const {
        return sgn(re_) == 0 && sgn(im_) == 0;
    }
    bool is_one() const {
        return re_ == 1 && sgn(im_) == 0;
    }
    bool is_real() const {
        return sgn(im_) == 0;
    }
    bool is_gaussian_integer() const {
        return re_.get_den() == 1 && im_.get_den() == 1;
    }
    GaussianRational conj() const {
        return {re_, -im_};
    }
    mpq_class norm() const {
        return re_ * re_ + im_ * im_;
    }
    GaussianRational reciprocal() const;
    std::complex<double> to_complex() const;

    GaussianRational operator-() const {
        return {-re_, -im_};
    }
    GaussianRational &operator+=(const GaussianRational &o);
    GaussianRational &operator-=(const GaussianRational &o);
    GaussianRational &operator*=(const GaussianRational &o);
    GaussianRational &operator/=(const GaussianRational &o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational &b) {
        return a += b;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational &b) {
        return a -= b;
    }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational &b) {
        return a *= b;
    }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational &b) {
        return a /= b;
    }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational &a, const GaussianRational &b) {
        return !(a == b);
    }

    /// Canonical literal, e.g. "3", "-1/2", "2+1/3i", "-i".
    std::string to_string() const;

   private:
    mpq_class re_{0};
    mpq_class im_{0};
};

/// Total order on Q(i): lexicographic on (re, im).
bool field_less(const GaussianRational &a, const GaussianRational &b);

struct FieldLess {
    bool operator()(const GaussianRational &a, const GaussianRational &b) const {
        return field_less(a, b);
    }
};

GaussianRational pow(GaussianRational base, long exponent);

/// Dense row-major matrix over Q(i).
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    Matrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const std::vector<GaussianRational> &entries);
    static Matrix column(const std::vector<GaussianRational> &entries);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    bool is_zero() const;
    bool is_identity() const;

    GaussianRational &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const GaussianRational &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    const std::vector<GaussianRational> &data() const {
        return data_;
    }

    Matrix transpose() const;
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix &m);
    Matrix col(std::size_t c) const {
        return block(0, c, rows_, 1);
    }
    Matrix row(std::size_t r) const {
        return block(r, 0, 1, cols_);
    }

    Matrix &operator+=(const Matrix &o);
    Matrix &operator-=(const Matrix &o);
    Matrix &operator*=(const GaussianRational &s);
    friend Matrix operator+(Matrix a, const Matrix &b) {
        return a += b;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        return a -= b;
    }
    friend Matrix operator*(Matrix a, const GaussianRational &s) {
        return a *= s;
    }
    friend Matrix operator*(const GaussianRational &s, Matrix a) {
        return a *= s;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b);
    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix &a, const Matrix &b) {
        return !(a == b);
    }

    std::string to_string() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> data_;
};

Matrix kron(const Matrix &a, const Matrix &b);
Matrix direct_sum(const Matrix &a, const Matrix &b);
Matrix hstack(const Matrix &a, const Matrix &b);
Matrix vstack(const Matrix &a, const Matrix &b);

/// Rank by fraction-free (Bareiss) elimination over the Gaussian integers.
std::size_t rank(const Matrix &m);
GaussianRational determinant(const Matrix &m);
bool is_invertible(const Matrix &m);
/// Throws Error(Singular) when m has no inverse.
Matrix invert(const Matrix &m);
/// Columns form a basis of {x : m x = 0}; the result has cols() - rank(m) columns.
Matrix nullspace(const Matrix &m);
/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
Matrix rref(const Matrix &m, std::vector<std::size_t> *pivots = nullptr);
/// Some x with a x = b, if one exists.
bool solve(const Matrix &a, const Matrix &b, Matrix *x);
/// Extends the independent columns of `basis` to a basis of the whole space.
Matrix complete_basis(const Matrix &basis);

/// Univariate polynomial over Q(i); coefficients lowest degree first.
class Poly {
   public:
    Poly() = default;
    explicit Poly(std::vector<GaussianRational> coeffs);
    static Poly monomial(const GaussianRational &c, std::size_t degree);
    /// x - root
    static Poly linear(const GaussianRational &root);

    bool is_zero() const {
        return coeffs_.empty();
    }
    /// -1 for the zero polynomial.
    long degree() const {
        return static_cast<long>(coeffs_.size()) - 1;
    }
    const std::vector<GaussianRational> &coeffs() const {
        return coeffs_;
    }
    GaussianRational coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : GaussianRational{};
    }
    const GaussianRational &leading() const {
        return coeffs_.back();
    }
    GaussianRational operator()(const GaussianRational &x) const;
    Poly derivative() const;
    Poly monic() const;

    friend Poly operator+(const Poly &a, const Poly &b);
    friend Poly operator-(const Poly &a, const Poly &b);
    friend Poly operator*(const Poly &a, const Poly &b);
    friend bool operator==(const Poly &a, const Poly &b) {
        return a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

   private:
    void trim();
    std::vector<GaussianRational> coeffs_;
};

/// Quotient and remainder of a / b (b nonzero).
std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b);
Poly gcd(Poly a, Poly b);

/// Monic characteristic polynomial det(xI - m), computed division-free (Berkowitz).
Poly char_poly(const Matrix &m);

struct RootMultiplicity {
    GaussianRational root;
    int multiplicity = 0;
};

/// Complete split of a monic polynomial into linear factors over Q(i), roots
/// sorted by field order. Throws Error(IrreducibleFactor) if some factor of
/// degree >= 2 has no root in Q(i).
std::vector<RootMultiplicity> factor_linear(const Poly &p);

inline std::ostream &operator<<(std::ostream &os, const GaussianRational &x) {
    return os << x.to_string();
}
inline std::ostream &operator<<(std::ostream &os, const Matrix &m) {
    return os << "\n" << m.to_string();
}
inline std::ostream &operator<<(std::ostream &os, const Poly &p) {
    return os << p.to_string();
}

}  // namespace slocc
