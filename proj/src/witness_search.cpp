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


#include "witness_search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace slocc::detail {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

std::optional<mpq_class> rationalize(double x, long max_den, double tol) {
    if (!std::isfinite(x)) {
        return std::nullopt;
    }
    // Continued-fraction convergents.
    long double rest = x;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int step = 0; step < 64; ++step) {
        long double a = std::floor(rest);
        if (std::fabs(a) > 1e15L) {
            break;
        }
        mpz_class ai(static_cast<long>(a));
        mpz_class p2 = ai * p1 + p0;
        mpz_class q2 = ai * q1 + q0;
        if (q2 > max_den) {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = mpq_class(p1, q1).get_d();
        if (std::fabs(approx - x) <= tol * std::max(1.0, std::fabs(x))) {
            mpq_class r(p1, q1);
            r.canonicalize();
            return r;
        }
        long double frac = rest - a;
        if (frac < 1e-18L) {
            break;
        }
        rest = 1.0L / frac;
    }
    return std::nullopt;
}

std::optional<GaussianRational> rationalize(cplx z, long max_den, double tol) {
    double scale = std::max(1.0, std::abs(z));
    auto re = rationalize(z.real(), max_den, tol * scale);
    auto im = rationalize(z.imag(), max_den, tol * scale);
    if (!re || !im) {
        return std::nullopt;
    }
    return GaussianRational(*re, *im);
}

std::optional<GaussianRational> exact_root(const GaussianRational &s, long d) {
    if (d == 1 || s.is_zero()) {
        return s;
    }
    cplx z = s.to_complex();
    double mod = std::pow(std::abs(z), 1.0 / static_cast<double>(d));
    double arg = std::arg(z) / static_cast<double>(d);
    for (long k = 0; k < d; ++k) {
        double th = arg + 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
        auto cand = rationalize(std::polar(mod, th), 1000000, 1e-9);
        if (cand && pow(*cand, d) == s) {
            return cand;
        }
    }
    return std::nullopt;
}

namespace {

struct DenseTensor {
    std::array<std::size_t, 4> dims{};
    std::vector<cplx> data;

    std::size_t index(const std::array<std::size_t, 4> &i) const {
        return ((i[0] * dims[1] + i[1]) * dims[2] + i[2]) * dims[3] + i[3];
    }
};

DenseTensor to_dense(const StateTensor &t) {
    DenseTensor d;
    for (int k = 0; k < 4; ++k) {
        d.dims[k] = t.dims()[k];
    }
    d.data.assign(d.dims[0] * d.dims[1] * d.dims[2] * d.dims[3], 0.0);
    for (const auto &[idx, v] : t.terms()) {
        d.data[d.index({idx[0], idx[1], idx[2], idx[3]})] = v.to_complex();
    }
    return d;
}

// y = mat applied along `axis`.
DenseTensor apply_mode(const DenseTensor &x, const CMat &mat, int axis) {
    DenseTensor y = x;
    std::size_t outer = 1, inner = 1;
    for (int k = 0; k < axis; ++k) {
        outer *= x.dims[k];
    }
    for (int k = axis + 1; k < 4; ++k) {
        inner *= x.dims[k];
    }
    std::size_t d = x.dims[axis];
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t in = 0; in < inner; ++in) {
            for (std::size_t a = 0; a < d; ++a) {
                cplx acc = 0;
                for (std::size_t b = 0; b < d; ++b) {
                    acc += mat(a, b) * x.data[(o * d + b) * inner + in];
                }
                y.data[(o * d + a) * inner + in] = acc;
            }
        }
    }
    return y;
}

DenseTensor apply_all_but(const DenseTensor &x, const std::array<CMat, 4> &f, int skip) {
    DenseTensor y = x;
    for (int k = 0; k < 4; ++k) {
        if (k != skip) {
            y = apply_mode(y, f[k], k);
        }
    }
    return y;
}

double residual_norm(const DenseTensor &a, const DenseTensor &b, const std::array<CMat, 4> &f, CVec *r) {
    DenseTensor y = apply_all_but(a, f, -1);
    CVec out(static_cast<Eigen::Index>(y.data.size()));
    for (std::size_t i = 0; i < y.data.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = y.data[i] - b.data[i];
    }
    if (r) {
        *r = out;
    }
    return out.norm();
}

struct Layout {
    std::array<bool, 4> free{};
    std::array<std::size_t, 4> offset{};
    std::size_t vars = 0;
};

CMat jacobian(const DenseTensor &a, const std::array<CMat, 4> &f, const Layout &lay) {
    std::size_t total = a.data.size();
    CMat jac = CMat::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(lay.vars));
    for (int k = 0; k < 4; ++k) {
        if (!lay.free[k]) {
            continue;
        }
        DenseTensor w = apply_all_but(a, f, k);
        std::size_t d = a.dims[k];
        std::size_t outer = 1, inner = 1;
        for (int j = 0; j < k; ++j) {
            outer *= a.dims[j];
        }
        for (int j = k + 1; j < 4; ++j) {
            inner *= a.dims[j];
        }
        // d F[(o, x, in)] / d f_k(x, b) = w[(o, b, in)]
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t in = 0; in < inner; ++in) {
                for (std::size_t x = 0; x < d; ++x) {
                    auto row = static_cast<Eigen::Index>((o * d + x) * inner + in);
                    for (std::size_t b = 0; b < d; ++b) {
                        jac(row, static_cast<Eigen::Index>(lay.offset[k] + x * d + b)) = w.data[(o * d + b) * inner + in];
                    }
                }
            }
        }
    }
    return jac;
}

void add_step(std::array<CMat, 4> &f, const Layout &lay, const CVec &delta) {
    for (int k = 0; k < 4; ++k) {
        if (!lay.free[k]) {
            continue;
        }
        auto d = f[k].rows();
        for (Eigen::Index x = 0; x < d; ++x) {
            for (Eigen::Index b = 0; b < d; ++b) {
                f[k](x, b) += delta(static_cast<Eigen::Index>(lay.offset[k]) + x * d + b);
            }
        }
    }
}

// Keeps the free factors at unit norm; the scale moves into factor 1.
void rebalance(std::array<CMat, 4> &f, const Layout &lay) {
    for (int k = 0; k < 4; ++k) {
        if (k == 1 || !lay.free[k]) {
            continue;
        }
        double n = f[k].norm();
        if (n > 0) {
            f[k] /= n;
            f[1] *= n;
        }
    }
}

CMat to_complex(const Matrix &m) {
    CMat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_complex();
        }
    }
    return out;
}

// Divides by the largest entry, then reads off exact values.
std::optional<Matrix> rationalize_factor(const CMat &m) {
    Eigen::Index bi = 0, bj = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (std::abs(m(i, j)) > best + 1e-9) {
                best = std::abs(m(i, j));
                bi = i;
                bj = j;
            }
        }
    }
    if (best <= 0) {
        return std::nullopt;
    }
    CMat n = m / m(bi, bj);
    Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            auto v = rationalize(n(i, j), 100000, 1e-7);
            if (!v) {
                return std::nullopt;
            }
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = *v;
        }
    }
    return out;
}

// Mode-k unfolding: rows indexed by axis k.
CMat unfold(const DenseTensor &x, int axis) {
    std::size_t outer = 1, inner = 1;
    for (int k = 0; k < axis; ++k) {
        outer *= x.dims[k];
    }
    for (int k = axis + 1; k < 4; ++k) {
        inner *= x.dims[k];
    }
    std::size_t d = x.dims[axis];
    CMat m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(outer * inner));
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t in = 0; in < inner; ++in) {
                m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(o * inner + in)) = x.data[(o * d + a) * inner + in];
            }
        }
    }
    return m;
}

// Alternating least squares sweeps over the free factors.
void als_sweeps(const DenseTensor &a, const DenseTensor &b, std::array<CMat, 4> &f, const Layout &lay, int sweeps) {
    std::array<CMat, 4> target;
    for (int k = 0; k < 4; ++k) {
        target[k] = unfold(b, k);
    }
    for (int s = 0; s < sweeps; ++s) {
        for (int k = 3; k >= 0; --k) {
            if (!lay.free[k]) {
                continue;
            }
            CMat w = unfold(apply_all_but(a, f, k), k);
            // f_k w = target_k in the least-squares sense.
            CMat sol = w.transpose().completeOrthogonalDecomposition().solve(target[k].transpose());
            f[k] = sol.transpose();
        }
        rebalance(f, lay);
    }
}

// Local LM run; true on convergence.
bool levenberg_marquardt(const DenseTensor &a, const DenseTensor &b, std::array<CMat, 4> &f, const Layout &lay,
                         int max_iterations, std::chrono::steady_clock::time_point deadline) {
    double target = std::max(1.0, Eigen::Map<const CVec>(b.data.data(), static_cast<Eigen::Index>(b.data.size())).norm());
    CVec r;
    double cost = residual_norm(a, b, f, &r);
    double mu = 1e-3;
    for (int it = 0; it < max_iterations; ++it) {
        if (cost <= 1e-12 * target) {
            return true;
        }
        if ((it & 15) == 0 && std::chrono::steady_clock::now() > deadline) {
            return false;
        }
        CMat jac = jacobian(a, f, lay);
        CMat jtj = jac.adjoint() * jac;
        CVec g = jac.adjoint() * r;
        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            CMat sys = jtj;
            for (Eigen::Index i = 0; i < sys.rows(); ++i) {
                sys(i, i) += mu * (1.0 + std::real(jtj(i, i)));
            }
            CVec delta = sys.ldlt().solve(-g);
            std::array<CMat, 4> trial = f;
            add_step(trial, lay, delta);
            CVec rt;
            double ct = residual_norm(a, b, trial, &rt);
            if (std::isfinite(ct) && ct < cost) {
                f = std::move(trial);
                rebalance(f, lay);
                cost = residual_norm(a, b, f, &r);
                mu = std::max(mu / 4, 1e-12);
                accepted = true;
            } else {
                mu *= 8;
            }
        }
        if (!accepted) {
            return cost <= 1e-12 * target;
        }
    }
    return cost <= 1e-12 * target;
}

}  // namespace

std::optional<Matrix> solve_single_factor(const StateTensor &a, const StateTensor &b, const LocalOperatorQuad &quad) {
    LocalOperatorQuad partial = quad;
    const Index4 &d = a.dims();
    partial.ops[1] = Matrix::identity(d[1]);
    StateTensor w = apply_slocc(a, partial);
    std::size_t cols = d[0] * d[2] * d[3];
    Matrix wt(cols, d[1]);
    Matrix bt(cols, d[1]);
    auto col = [&](const Index4 &i) { return (i[0] * d[2] + i[2]) * d[3] + i[3]; };
    for (const auto &[idx, v] : w.terms()) {
        wt(col(idx), idx[1]) = v;
    }
    for (const auto &[idx, v] : b.terms()) {
        bt(col(idx), idx[1]) = v;
    }
    Matrix xt;
    if (!solve(wt, bt, &xt)) {
        return std::nullopt;
    }
    Matrix x = xt.transpose();
    if (!is_invertible(x)) {
        return std::nullopt;
    }
    return x;
}

NumericSearchResult numeric_witness_search(const StateTensor &a, const StateTensor &b,
                                           const NumericSearchOptions &options) {
    NumericSearchResult result;
    DenseTensor da = to_dense(a);
    DenseTensor db = to_dense(b);
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal;
    for (int attempt = 0; attempt < options.restarts; ++attempt) {
        if (std::chrono::steady_clock::now() > options.deadline) {
            break;
        }
        ++result.restarts;
        Layout lay;
        std::array<CMat, 4> f;
        std::optional<Matrix> fixed_t;
        if (!options.fixed_t.empty()) {
            fixed_t = options.fixed_t[static_cast<std::size_t>(attempt) % options.fixed_t.size()];
        }
        for (int k = 0; k < 4; ++k) {
            auto d = static_cast<Eigen::Index>(da.dims[k]);
            if (k == 0 && fixed_t) {
                f[k] = to_complex(*fixed_t);
                lay.free[k] = false;
                continue;
            }
            f[k] = CMat(d, d);
            for (Eigen::Index i = 0; i < d; ++i) {
                for (Eigen::Index j = 0; j < d; ++j) {
                    f[k](i, j) = cplx(normal(rng), normal(rng));
                }
            }
            lay.free[k] = true;
            lay.offset[k] = lay.vars;
            lay.vars += static_cast<std::size_t>(d * d);
        }
        als_sweeps(da, db, f, lay, options.als_sweeps);
        if (!levenberg_marquardt(da, db, f, lay, options.max_iterations, options.deadline)) {
            continue;
        }
        ++result.converged;
        LocalOperatorQuad quad;
        bool ok = true;
        for (int k : {0, 2, 3}) {
            if (k == 0 && fixed_t) {
                quad.ops[0] = *fixed_t;
                continue;
            }
            auto m = rationalize_factor(f[k]);
            if (!m || !is_invertible(*m)) {
                ok = false;
                break;
            }
            quad.ops[k] = *m;
        }
        if (!ok) {
            ++result.rationalization_failures;
            continue;
        }
        auto x = solve_single_factor(a, b, quad);
        if (!x) {
            ++result.rationalization_failures;
            continue;
        }
        quad.ops[1] = *x;
        if (apply_slocc(a, quad) == b) {
            result.witness = quad;
            return result;
        }
        ++result.rationalization_failures;
    }
    return result;
}

}  // namespace slocc::detail

namespace slocc::detail {
namespace {

// A flattening whose row space is a proper subspace: the pair (axis_a, axis_b)
// must map span(basis_a) into span(basis_b), i.e. tr(N^T A R B^T) = 0.
struct Constraint {
    int axis_a = 0, axis_b = 0;
    std::vector<CMat> basis_a;
    std::vector<CMat> ann_b;
};

// Rows indexed by `row_axes`, columns by the remaining axes (both in axis order).
Matrix unfold_exact(const StateTensor &t, const std::vector<int> &row_axes) {
    const Index4 &d = t.dims();
    std::vector<int> col_axes;
    for (int k = 0; k < 4; ++k) {
        if (std::find(row_axes.begin(), row_axes.end(), k) == row_axes.end()) {
            col_axes.push_back(k);
        }
    }
    auto size = [&](const std::vector<int> &axes) {
        std::size_t n = 1;
        for (int k : axes) {
            n *= d[static_cast<std::size_t>(k)];
        }
        return n;
    };
    auto index = [&](const Index4 &idx, const std::vector<int> &axes) {
        std::size_t n = 0;
        for (int k : axes) {
            n = n * d[static_cast<std::size_t>(k)] + idx[static_cast<std::size_t>(k)];
        }
        return n;
    };
    Matrix m(size(row_axes), size(col_axes));
    for (const auto &[idx, v] : t.terms()) {
        m(index(idx, row_axes), index(idx, col_axes)) = v;
    }
    return m;
}

CMat reshape_row(const Matrix &m, std::size_t row, std::size_t p, std::size_t q, bool column) {
    CMat out(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
    for (std::size_t k = 0; k < p * q; ++k) {
        const auto &v = column ? m(k, row) : m(row, k);
        out(static_cast<Eigen::Index>(k / q), static_cast<Eigen::Index>(k % q)) = v.to_complex();
    }
    double n = out.norm();
    return n > 0 ? CMat(out / n) : out;
}

std::vector<Constraint> subspace_constraints(const StateTensor &a, const StateTensor &b) {
    std::vector<Constraint> out;
    const Index4 &d = a.dims();
    for (int x = 1; x <= 3; ++x) {
        int y = x == 1 ? 2 : 1;
        int z = x == 3 ? 2 : 3;
        for (bool transposed : {false, true}) {
            std::vector<int> rows = transposed ? std::vector<int>{y, z} : std::vector<int>{0, x};
            Matrix ga = unfold_exact(a, rows);
            Matrix gb = unfold_exact(b, rows);
            std::size_t r = rank(ga);
            if (r == 0 || r >= ga.cols() || rank(gb) != r) {
                continue;
            }
            Constraint c;
            c.axis_a = transposed ? 0 : y;
            c.axis_b = transposed ? x : z;
            std::size_t p = d[static_cast<std::size_t>(c.axis_a)], q = d[static_cast<std::size_t>(c.axis_b)];
            Matrix basis = rref(ga);
            for (std::size_t i = 0; i < r; ++i) {
                c.basis_a.push_back(reshape_row(basis, i, p, q, false));
            }
            Matrix ann = nullspace(gb);
            for (std::size_t j = 0; j < ann.cols(); ++j) {
                c.ann_b.push_back(reshape_row(ann, j, p, q, true));
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

struct SubspaceSystem {
    std::vector<Constraint> constraints;
    std::array<bool, 4> unknown{};
    std::array<Eigen::Index, 4> offset{};
    std::array<Eigen::Index, 4> dim{};
    std::array<CMat, 4> pins;
    Eigen::Index vars = 0;
    Eigen::Index equations = 0;

    void evaluate(const std::array<CMat, 4> &f, CVec &res, CMat *jac) const {
        res = CVec::Zero(equations);
        if (jac) {
            *jac = CMat::Zero(equations, vars);
        }
        Eigen::Index row = 0;
        auto put = [&](Eigen::Index r, int k, const CMat &g) {
            for (Eigen::Index i = 0; i < g.rows(); ++i) {
                for (Eigen::Index j = 0; j < g.cols(); ++j) {
                    (*jac)(r, offset[k] + i * g.cols() + j) = g(i, j);
                }
            }
        };
        for (const auto &c : constraints) {
            const CMat &u = f[c.axis_a];
            const CMat &v = f[c.axis_b];
            for (const auto &r : c.basis_a) {
                CMat urv = u * r * v.transpose();
                for (const auto &n : c.ann_b) {
                    res(row) = (n.array() * urv.array()).sum();
                    if (jac) {
                        put(row, c.axis_a, n * v * r.transpose());
                        put(row, c.axis_b, n.transpose() * u * r);
                    }
                    ++row;
                }
            }
        }
        for (int k = 0; k < 4; ++k) {
            if (unknown[k]) {
                res(row) = (pins[k].array() * f[k].array()).sum() - 1.0;
                if (jac) {
                    put(row, k, pins[k]);
                }
                ++row;
            }
        }
    }

    void step(std::array<CMat, 4> &f, const CVec &delta) const {
        for (int k = 0; k < 4; ++k) {
            if (!unknown[k]) {
                continue;
            }
            for (Eigen::Index i = 0; i < dim[k] * dim[k]; ++i) {
                f[k](i / dim[k], i % dim[k]) += delta(offset[k] + i);
            }
        }
    }
};

bool solve_subspace(const SubspaceSystem &sys, std::array<CMat, 4> &f, int max_iterations,
                    std::chrono::steady_clock::time_point deadline) {
    CVec r;
    CMat jac;
    sys.evaluate(f, r, nullptr);
    double cost = r.norm();
    double mu = 1e-3;
    for (int it = 0; it < max_iterations; ++it) {
        if (cost < 1e-13) {
            return true;
        }
        if ((it & 15) == 0 && std::chrono::steady_clock::now() > deadline) {
            return false;
        }
        sys.evaluate(f, r, &jac);
        CMat jtj = jac.adjoint() * jac;
        CVec g = jac.adjoint() * r;
        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            CMat lhs = jtj;
            for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
                lhs(i, i) += mu * (1.0 + std::real(jtj(i, i)));
            }
            CVec delta = lhs.ldlt().solve(-g);
            std::array<CMat, 4> trial = f;
            sys.step(trial, delta);
            CVec rt;
            sys.evaluate(trial, rt, nullptr);
            double ct = rt.norm();
            if (std::isfinite(ct) && ct < cost) {
                f = std::move(trial);
                r = rt;
                cost = ct;
                mu = std::max(mu / 4, 1e-12);
                accepted = true;
            } else {
                mu *= 8;
            }
        }
        if (!accepted) {
            break;
        }
        // Slow descent into a degenerate valley: give up early.
        if (it == 120 && cost > 1e-6) {
            break;
        }
    }
    return cost < 1e-13;
}

CMat random_cmat(std::mt19937_64 &rng, std::size_t n, std::size_t m) {
    std::normal_distribution<double> normal;
    CMat out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            out(i, j) = cplx(normal(rng), normal(rng));
        }
    }
    return out;
}

}  // namespace

std::optional<LocalOperatorQuad> complete_factors(const StateTensor &a, const StateTensor &b, LocalOperatorQuad quad,
                                                  const std::vector<int> &missing) {
    const Index4 &d = a.dims();
    if (missing.empty() || missing.size() > 2) {
        return std::nullopt;
    }
    LocalOperatorQuad partial = quad;
    for (int k : missing) {
        partial.ops[static_cast<std::size_t>(k)] = Matrix::identity(d[static_cast<std::size_t>(k)]);
    }
    for (const auto &op : partial.ops) {
        if (!is_invertible(op)) {
            return std::nullopt;
        }
    }
    Matrix w = unfold_exact(apply_slocc(a, partial), missing);
    Matrix target = unfold_exact(b, missing);
    Matrix kt;
    if (!solve(w.transpose(), target.transpose(), &kt)) {
        return std::nullopt;
    }
    Matrix k = kt.transpose();
    if (missing.size() == 1) {
        quad.ops[static_cast<std::size_t>(missing[0])] = k;
    } else {
        std::size_t k1 = d[static_cast<std::size_t>(missing[0])], k2 = d[static_cast<std::size_t>(missing[1])];
        // Realign K = K1 (x) K2, blocks row by row, each block column-stacked.
        Matrix realigned(k1 * k1, k2 * k2);
        for (std::size_t bi = 0; bi < k1; ++bi) {
            for (std::size_t bj = 0; bj < k1; ++bj) {
                for (std::size_t i = 0; i < k2; ++i) {
                    for (std::size_t j = 0; j < k2; ++j) {
                        realigned(bi * k1 + bj, j * k2 + i) = k(bi * k2 + i, bj * k2 + j);
                    }
                }
            }
        }
        if (rank(realigned) != 1) {
            return std::nullopt;
        }
        std::size_t r0 = 0, c0 = 0;
        bool hit = false;
        for (std::size_t i = 0; i < realigned.rows() && !hit; ++i) {
            for (std::size_t j = 0; j < realigned.cols() && !hit; ++j) {
                if (!realigned(i, j).is_zero()) {
                    r0 = i;
                    c0 = j;
                    hit = true;
                }
            }
        }
        Matrix left(k1, k1), right(k2, k2);
        for (std::size_t i = 0; i < k1 * k1; ++i) {
            left(i / k1, i % k1) = realigned(i, c0) / realigned(r0, c0);
        }
        for (std::size_t j = 0; j < k2 * k2; ++j) {
            right(j % k2, j / k2) = realigned(r0, j);
        }
        quad.ops[static_cast<std::size_t>(missing[0])] = left;
        quad.ops[static_cast<std::size_t>(missing[1])] = right;
    }
    for (const auto &op : quad.ops) {
        if (!is_invertible(op)) {
            return std::nullopt;
        }
    }
    if (apply_slocc(a, quad) != b) {
        return std::nullopt;
    }
    return quad;
}

NumericSearchResult subspace_witness_search(const StateTensor &a, const StateTensor &b,
                                            const NumericSearchOptions &options) {
    NumericSearchResult result;
    const Index4 &d = a.dims();
    SubspaceSystem sys;
    sys.constraints = subspace_constraints(a, b);
    for (const auto &c : sys.constraints) {
        sys.unknown[static_cast<std::size_t>(c.axis_a)] = true;
        sys.unknown[static_cast<std::size_t>(c.axis_b)] = true;
        sys.equations += static_cast<Eigen::Index>(c.basis_a.size() * c.ann_b.size());
    }
    std::vector<int> missing;
    for (int k = 0; k < 4; ++k) {
        sys.dim[k] = static_cast<Eigen::Index>(d[static_cast<std::size_t>(k)]);
        if (sys.unknown[k]) {
            sys.offset[k] = sys.vars;
            sys.vars += sys.dim[k] * sys.dim[k];
            sys.equations += 1;
        } else {
            missing.push_back(k);
        }
    }
    if (sys.constraints.empty() || missing.size() > 2 || sys.equations <= sys.vars) {
        return result;
    }
    // The factor solved exactly afterwards: the missing one, else the largest.
    std::vector<int> exact = missing;
    if (exact.empty()) {
        int big = 1;
        for (int k = 2; k < 4; ++k) {
            if (d[static_cast<std::size_t>(k)] > d[static_cast<std::size_t>(big)]) {
                big = k;
            }
        }
        exact.push_back(big);
    }
    auto finish = [&](const std::array<CMat, 4> &f, const std::vector<int> &solve_exactly) {
        LocalOperatorQuad quad;
        for (int k = 0; k < 4; ++k) {
            if (std::find(solve_exactly.begin(), solve_exactly.end(), k) != solve_exactly.end()) {
                continue;
            }
            auto m = rationalize_factor(f[k]);
            if (!m || !is_invertible(*m)) {
                return std::optional<LocalOperatorQuad>();
            }
            quad.ops[static_cast<std::size_t>(k)] = *m;
        }
        return complete_factors(a, b, quad, solve_exactly);
    };
    std::mt19937_64 rng(options.seed);
    for (int attempt = 0; attempt < options.restarts; ++attempt) {
        if (std::chrono::steady_clock::now() > options.deadline) {
            break;
        }
        ++result.restarts;
        std::array<CMat, 4> f;
        for (int k = 0; k < 4; ++k) {
            if (sys.unknown[k]) {
                auto n = static_cast<std::size_t>(sys.dim[k]);
                sys.pins[k] = random_cmat(rng, n, n);
                f[k] = random_cmat(rng, n, n);
                f[k] /= (sys.pins[k].array() * f[k].array()).sum();
            }
        }
        if (!solve_subspace(sys, f, options.max_iterations, options.deadline)) {
            continue;
        }
        ++result.converged;
        auto done = finish(f, exact);
        if (!done) {
            ++result.rationalization_failures;
            continue;
        }
        result.witness = done;
        return result;
    }
    return result;
}

namespace {

CMat unfold_group(const DenseTensor &x, const std::vector<int> &rows) {
    std::vector<int> cols;
    for (int k = 0; k < 4; ++k) {
        if (std::find(rows.begin(), rows.end(), k) == rows.end()) {
            cols.push_back(k);
        }
    }
    auto extent = [&](const std::vector<int> &axes) {
        std::size_t n = 1;
        for (int k : axes) {
            n *= x.dims[k];
        }
        return n;
    };
    CMat m(static_cast<Eigen::Index>(extent(rows)), static_cast<Eigen::Index>(extent(cols)));
    std::array<std::size_t, 4> i{};
    for (i[0] = 0; i[0] < x.dims[0]; ++i[0]) {
        for (i[1] = 0; i[1] < x.dims[1]; ++i[1]) {
            for (i[2] = 0; i[2] < x.dims[2]; ++i[2]) {
                for (i[3] = 0; i[3] < x.dims[3]; ++i[3]) {
                    std::size_t r = 0, c = 0;
                    for (int k : rows) {
                        r = r * x.dims[k] + i[k];
                    }
                    for (int k : cols) {
                        c = c * x.dims[k] + i[k];
                    }
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = x.data[x.index(i)];
                }
            }
        }
    }
    return m;
}

}  // namespace

namespace {

// Operator scaling to the critical point of the orbit; g accumulates the local operators.
bool balance(DenseTensor &x, std::array<CMat, 4> &g, int max_iterations = 2000) {
    for (int k = 0; k < 4; ++k) {
        auto d = static_cast<Eigen::Index>(x.dims[k]);
        g[k] = CMat::Identity(d, d);
    }
    for (int it = 0; it < max_iterations; ++it) {
        double worst = 0.0;
        for (int k = 0; k < 4; ++k) {
            CMat m = unfold(x, k);
            CMat rho = m * m.adjoint();
            double tr = rho.trace().real();
            if (!(tr > 0)) {
                return false;
            }
            auto d = static_cast<double>(x.dims[k]);
            rho *= d / tr;
            worst = std::max(worst, (rho - CMat::Identity(rho.rows(), rho.cols())).norm());
            Eigen::SelfAdjointEigenSolver<CMat> es(rho);
            if (es.eigenvalues().minCoeff() <= 1e-12) {
                return false;
            }
            CMat h = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                     es.eigenvectors().adjoint();
            x = apply_mode(x, h, k);
            g[k] = h * g[k];
        }
        double n = 0.0;
        for (const auto &v : x.data) {
            n += std::norm(v);
        }
        for (auto &v : x.data) {
            v /= std::sqrt(n);
        }
        if (worst < 1e-13) {
            return true;
        }
    }
    return false;
}

struct PairEstimate {
    CMat first, second;
};

// Recover U_k (x) U_l from the marginal on axes (k, l); needs a simple nonzero spectrum.
std::vector<PairEstimate> pair_unitary(const DenseTensor &x, const DenseTensor &y, int k, int l,
                                         std::mt19937_64 &rng) {
    CMat mx = unfold_group(x, {k, l});
    CMat my = unfold_group(y, {k, l});
    CMat rx = mx * mx.adjoint();
    CMat ry = my * my.adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> ex(rx), ey(ry);
    const Eigen::VectorXd &lx = ex.eigenvalues();
    const Eigen::VectorXd &ly = ey.eigenvalues();
    Eigen::Index n = lx.size();
    double top = lx(n - 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lx(i) < 1e-9 * top || std::abs(lx(i) - ly(i) * lx.sum() / ly.sum()) > 1e-8 * top) {
            return {};
        }
        if (i > 0 && lx(i) - lx(i - 1) < 1e-6 * top) {
            return {};
        }
    }
    auto dk = static_cast<Eigen::Index>(x.dims[k]);
    auto dl = static_cast<Eigen::Index>(x.dims[l]);
    // X(c)[(a,b),(p,q)] = Z(c)[(a,p),(b,q)], Z(c) = sum_i c_i f_i e_i^H.
    auto realigned = [&](const CVec &c) {
        CMat z = ey.eigenvectors() * c.asDiagonal() * ex.eigenvectors().adjoint();
        CMat out(dk * dk, dl * dl);
        for (Eigen::Index a = 0; a < dk; ++a)
            for (Eigen::Index b = 0; b < dk; ++b)
                for (Eigen::Index p = 0; p < dl; ++p)
                    for (Eigen::Index q = 0; q < dl; ++q) {
                        out(a * dk + b, p * dl + q) = z(a * dl + p, b * dl + q);
                    }
        return out;
    };
    std::vector<CMat> basis;
    for (Eigen::Index i = 0; i < n; ++i) {
        CVec c = CVec::Zero(n);
        c(i) = 1.0;
        basis.push_back(realigned(c));
    }
    bool use_rows = dl * dl >= n;
    Eigen::Index width = use_rows ? dl * dl : dk * dk;
    if (width < n) {
        return {};
    }
    // Random combinations of rows (or columns) of X(c) must all be parallel.
    CVec alpha = random_cmat(rng, static_cast<std::size_t>(use_rows ? dk * dk : dl * dl), 1);
    CVec beta = random_cmat(rng, static_cast<std::size_t>(alpha.size()), 1);
    CMat p(width, n), q(width, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const CMat &m = basis[static_cast<std::size_t>(i)];
        p.col(i) = use_rows ? CVec(m.transpose() * alpha) : CVec(m * alpha);
        q.col(i) = use_rows ? CVec(m.transpose() * beta) : CVec(m * beta);
    }
    CMat w = random_cmat(rng, static_cast<std::size_t>(n), static_cast<std::size_t>(width));
    CMat wq = w * q;
    Eigen::FullPivLU<CMat> lu(wq);
    if (!lu.isInvertible()) {
        return {};
    }
    Eigen::ComplexEigenSolver<CMat> ces(lu.solve(w * p));
    if (ces.info() != Eigen::Success) {
        return {};
    }
    // Several rank-one members can occur; all are kept and disambiguated by the caller.
    std::vector<PairEstimate> out;
    for (Eigen::Index j = 0; j < n; ++j) {
        CMat xm = realigned(ces.eigenvectors().col(j));
        Eigen::JacobiSVD<CMat> svd(xm, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &sv = svd.singularValues();
        if (sv(1) >= 1e-8 * sv(0)) {
            continue;
        }
        CVec u = svd.matrixU().col(0) * sv(0);
        CVec v = svd.matrixV().col(0).conjugate();
        PairEstimate e{CMat(dk, dk), CMat(dl, dl)};
        for (Eigen::Index a = 0; a < dk; ++a)
            for (Eigen::Index b = 0; b < dk; ++b) e.first(a, b) = u(a * dk + b);
        for (Eigen::Index a = 0; a < dl; ++a)
            for (Eigen::Index b = 0; b < dl; ++b) e.second(a, b) = v(a * dl + b);
        out.push_back(e);
    }
    return out;
}

bool proportional(const CMat &x, const CMat &y) {
    double c = std::abs((x.adjoint() * y).trace()) / (x.norm() * y.norm());
    return c > 1 - 1e-8;
}

}  // namespace

NumericSearchResult balanced_witness_search(const StateTensor &a, const StateTensor &b,
                                            const NumericSearchOptions &options) {
    NumericSearchResult result;
    DenseTensor x = to_dense(a), y = to_dense(b);
    std::array<CMat, 4> gx, gy;
    if (!balance(x, gx) || !balance(y, gy)) {
        return result;
    }
    std::mt19937_64 rng(options.seed);
    const std::array<std::pair<int, int>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    std::vector<std::vector<PairEstimate>> cands;
    for (auto [k, l] : pairs) {
        cands.push_back(pair_unitary(x, y, k, l, rng));
    }
    int big = 1;
    for (int k = 2; k < 4; ++k) {
        if (x.dims[k] > x.dims[big]) {
            big = k;
        }
    }
    using Partial = std::array<std::optional<CMat>, 4>;
    // Depth-first over ambiguous pairs; a pair sharing a known axis keeps only the
    // candidates consistent with it.
    std::function<std::optional<LocalOperatorQuad>(Partial, std::size_t)> extend;
    auto attempt = [&](const Partial &u) -> std::optional<LocalOperatorQuad> {
        std::vector<int> missing;
        for (int k = 0; k < 4; ++k) {
            if (!u[static_cast<std::size_t>(k)]) {
                missing.push_back(k);
            }
        }
        if (missing.size() > 2) {
            return std::nullopt;
        }
        if (missing.empty()) {
            missing.push_back(big);
        }
        ++result.converged;
        LocalOperatorQuad quad;
        for (int k = 0; k < 4; ++k) {
            if (std::find(missing.begin(), missing.end(), k) != missing.end()) {
                continue;
            }
            auto ks = static_cast<std::size_t>(k);
            auto m = rationalize_factor(gy[ks].inverse() * *u[ks] * gx[ks]);
            if (!m || !is_invertible(*m)) {
                ++result.rationalization_failures;
                return std::nullopt;
            }
            quad.ops[ks] = *m;
        }
        auto done = complete_factors(a, b, quad, missing);
        if (!done) {
            ++result.rationalization_failures;
        }
        return done;
    };
    extend = [&](Partial u, std::size_t next) -> std::optional<LocalOperatorQuad> {
        for (; next < pairs.size(); ++next) {
            auto [k, l] = pairs[next];
            auto ks = static_cast<std::size_t>(k), ls = static_cast<std::size_t>(l);
            if (u[ks] && u[ls]) {
                continue;
            }
            std::vector<const PairEstimate *> fit;
            for (const auto &e : cands[next]) {
                if ((!u[ks] || proportional(*u[ks], e.first)) && (!u[ls] || proportional(*u[ls], e.second))) {
                    fit.push_back(&e);
                }
            }
            if (fit.empty()) {
                continue;
            }
            if (fit.size() == 1) {
                u[ks] = fit.front()->first;
                u[ls] = fit.front()->second;
                continue;
            }
            for (const PairEstimate *e : fit) {
                if (std::chrono::steady_clock::now() > options.deadline) {
                    return std::nullopt;
                }
                Partial branch = u;
                branch[ks] = e->first;
                branch[ls] = e->second;
                if (auto w = extend(branch, next + 1)) {
                    return w;
                }
            }
            return std::nullopt;
        }
        return attempt(u);
    };
    ++result.restarts;
    result.witness = extend(Partial{}, 0);
    return result;
}

namespace {

// Exact basis of a numeric subspace (columns of `space`) after pivoted reduction,
// accepted only if a generic member of the span is rank one.
std::optional<RankOneFamily> exact_family(const CMat &space, const std::vector<CMat> &cb, std::mt19937_64 &rng) {
    Eigen::Index n = space.rows(), mult = space.cols();
    std::vector<Eigen::Index> pivots;
    CMat red = space;
    for (Eigen::Index col = 0; col < mult; ++col) {
        Eigen::Index best = -1;
        double big = 0;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (std::find(pivots.begin(), pivots.end(), r) == pivots.end() && std::abs(red(r, col)) > big) {
                big = std::abs(red(r, col));
                best = r;
            }
        }
        if (best < 0 || big < 1e-9) {
            return std::nullopt;
        }
        red.col(col) /= red(best, col);
        for (Eigen::Index other = 0; other < mult; ++other) {
            if (other != col) {
                red.col(other) -= red(best, other) * red.col(col);
            }
        }
        pivots.push_back(best);
    }
    CVec probe = red * random_cmat(rng, static_cast<std::size_t>(mult), 1);
    CMat m = CMat::Zero(cb[0].rows(), cb[0].cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        m += probe(i) * cb[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<CMat> svd(m);
    const auto &sv = svd.singularValues();
    if (sv(0) <= 0 || (sv.size() > 1 && sv(1) >= 1e-8 * sv(0))) {
        return std::nullopt;
    }
    RankOneFamily fam;
    for (Eigen::Index col = 0; col < mult; ++col) {
        std::vector<GaussianRational> v;
        for (Eigen::Index i = 0; i < n; ++i) {
            auto x = rationalize(red(i, col), 100000, 1e-7);
            if (!x) {
                return std::nullopt;
            }
            v.push_back(*x);
        }
        fam.basis.push_back(std::move(v));
    }
    return fam;
}

// Coefficients c (unit norm) with sum c_i M_i (I - v v^H) = 0: the null space of the
// Gram matrix of the projected members.
CMat projected_gram(const std::vector<CMat> &cb, const CVec &v) {
    auto n = static_cast<Eigen::Index>(cb.size());
    CMat proj = CMat::Identity(v.size(), v.size()) - v * v.adjoint();
    std::vector<CMat> pm;
    for (const CMat &m : cb) pm.push_back(m * proj);
    CMat g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = (pm[static_cast<std::size_t>(i)].adjoint() * pm[static_cast<std::size_t>(j)]).trace();
    return g;
}

// Alternating search for rank-one members when the pencil route is singular.
std::vector<RankOneFamily> alternating_families(const std::vector<CMat> &cb, std::mt19937_64 &rng) {
    std::vector<RankOneFamily> out;
    auto n = static_cast<Eigen::Index>(cb.size());
    Eigen::Index cols = cb[0].cols();
    for (int restart = 0; restart < 8; ++restart) {
        CVec v = random_cmat(rng, static_cast<std::size_t>(cols), 1);
        v.normalize();
        double resid = 1;
        CVec c;
        for (int it = 0; it < 300; ++it) {
            Eigen::SelfAdjointEigenSolver<CMat> es(projected_gram(cb, v));
            c = es.eigenvectors().col(0);
            CMat m = CMat::Zero(cb[0].rows(), cols);
            for (Eigen::Index i = 0; i < n; ++i) m += c(i) * cb[static_cast<std::size_t>(i)];
            Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinV);
            const auto &sv = svd.singularValues();
            resid = sv.size() > 1 ? sv(1) / sv(0) : 0;
            v = svd.matrixV().col(0);
            if (resid < 1e-12) {
                break;
            }
        }
        if (resid > 1e-9) {
            continue;
        }
        Eigen::SelfAdjointEigenSolver<CMat> es(projected_gram(cb, v));
        const Eigen::VectorXd &ev = es.eigenvalues();
        Eigen::Index k = 0;
        while (k < n && ev(k) < 1e-12 * std::max(1.0, ev(n - 1))) ++k;
        if (k == 0) {
            continue;
        }
        if (auto fam = exact_family(es.eigenvectors().leftCols(k), cb, rng)) {
            out.push_back(std::move(*fam));
            return out;
        }
    }
    return out;
}

}  // namespace

std::vector<RankOneFamily> rank_one_families(const std::vector<Matrix> &basis, std::uint64_t seed) {
    std::vector<RankOneFamily> out;
    auto n = static_cast<Eigen::Index>(basis.size());
    if (n < 2) {
        return out;
    }
    std::vector<CMat> cb;
    for (const Matrix &m : basis) {
        cb.push_back(to_complex(m));
    }
    // Restrict every member to the joint column and row spaces; shared kernels would
    // otherwise make the pencil below singular. Rank is unchanged.
    {
        Eigen::Index r0 = cb[0].rows(), c0 = cb[0].cols();
        CMat wide(r0, c0 * n), tall(r0 * n, c0);
        for (Eigen::Index i = 0; i < n; ++i) {
            wide.middleCols(i * c0, c0) = cb[static_cast<std::size_t>(i)];
            tall.middleRows(i * r0, r0) = cb[static_cast<std::size_t>(i)];
        }
        Eigen::JacobiSVD<CMat> sw(wide, Eigen::ComputeThinU), st(tall, Eigen::ComputeThinV);
        auto rank_of = [](const Eigen::VectorXd &sv) {
            Eigen::Index r = 0;
            while (r < sv.size() && sv(r) > 1e-10 * sv(0)) ++r;
            return r;
        };
        Eigen::Index rr = rank_of(sw.singularValues()), rc = rank_of(st.singularValues());
        if (rr == 0 || rc == 0) {
            return out;
        }
        CMat u = sw.matrixU().leftCols(rr), v = st.matrixV().leftCols(rc);
        for (CMat &m : cb) {
            m = u.adjoint() * m * v;
        }
    }
    Eigen::Index rows = cb[0].rows(), cols = cb[0].cols();
    std::mt19937_64 rng(seed);
    // Row combinations first; column combinations when that pencil is singular.
    for (int attempt = 0; attempt < 4 && out.empty(); ++attempt) {
        bool use_rows = attempt % 2 == 0;
        Eigen::Index width = use_rows ? cols : rows;
        if (width < n) {
            continue;
        }
        std::size_t len = static_cast<std::size_t>(use_rows ? rows : cols);
        CVec alpha = random_cmat(rng, len, 1);
        CVec beta = random_cmat(rng, len, 1);
        CMat p(width, n), q(width, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const CMat &m = cb[static_cast<std::size_t>(i)];
            p.col(i) = use_rows ? CVec(m.transpose() * alpha) : CVec(m * alpha);
            q.col(i) = use_rows ? CVec(m.transpose() * beta) : CVec(m * beta);
        }
        CMat w = random_cmat(rng, static_cast<std::size_t>(n), static_cast<std::size_t>(width));
        CMat wq = w * q;
        Eigen::JacobiSVD<CMat> check(wq);
        const auto &sq = check.singularValues();
        if (sq(n - 1) < 1e-10 * sq(0)) {
            continue;
        }
        Eigen::ComplexEigenSolver<CMat> ces(wq.fullPivLu().solve(w * p));
        if (ces.info() != Eigen::Success) {
            continue;
        }
        const CVec &mu = ces.eigenvalues();
        double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) {
                continue;
            }
            // Eigenvalues that coincide span one eigenspace; take it whole.
            Eigen::Index mult = 0;
            for (Eigen::Index k = j; k < n; ++k) {
                if (std::abs(mu(k) - mu(j)) < 1e-7 * scale) {
                    used[static_cast<std::size_t>(k)] = true;
                    ++mult;
                }
            }
            Eigen::JacobiSVD<CMat> ns(w * p - mu(j) * wq, Eigen::ComputeFullV);
            if (auto fam = exact_family(ns.matrixV().rightCols(mult), cb, rng)) {
                out.push_back(std::move(*fam));
            }
        }
    }
    if (out.empty()) {
        out = alternating_families(cb, rng);
    }
    return out;
}

}  // namespace slocc::detail
