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


#include "slocc/pencil.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace slocc {

Matrix jordan_matrix(const std::vector<JordanBlock> &blocks) {
    std::size_t n = 0;
    for (const auto &b : blocks) {
        n += b.size;
    }
    Matrix j(n, n);
    std::size_t at = 0;
    for (const auto &b : blocks) {
        for (std::size_t k = 0; k < b.size; ++k) {
            j(at + k, at + k) = b.eigenvalue;
            if (k + 1 < b.size) {
                j(at + k, at + k + 1) = 1;
            }
        }
        at += b.size;
    }
    return j;
}

namespace {

Matrix power(const Matrix &m, std::size_t e) {
    Matrix r = Matrix::identity(m.rows());
    for (std::size_t k = 0; k < e; ++k) {
        r = r * m;
    }
    return r;
}

// Appends the columns of `b` to `a` (a may be empty with the right height).
Matrix append_cols(const Matrix &a, const Matrix &b) {
    if (a.cols() == 0) {
        return b;
    }
    if (b.cols() == 0) {
        return a;
    }
    return hstack(a, b);
}

}  // namespace

JordanForm jordan_form(const Matrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "Jordan form of a non-square matrix");
    }
    std::size_t n = m.rows();
    JordanForm out;
    out.similarity = Matrix(n, 0);
    if (n == 0) {
        return out;
    }
    for (const auto &[lambda, alg] : factor_linear(char_poly(m))) {
        Matrix nil = m - lambda * Matrix::identity(n);
        // Kernel dimensions of nil^s until they reach the algebraic multiplicity.
        std::vector<Matrix> kernels{Matrix(n, 0)};
        std::vector<std::size_t> dims{0};
        Matrix np = Matrix::identity(n);
        while (dims.back() < static_cast<std::size_t>(alg)) {
            np = np * nil;
            kernels.push_back(nullspace(np));
            dims.push_back(kernels.back().cols());
            if (dims.back() == dims[dims.size() - 2]) {
                throw Error(ErrorCode::Internal, "Jordan chain construction stalled");
            }
        }
        std::size_t top = dims.size() - 1;
        // Chains found so far: (top vector, length).
        std::vector<std::pair<Matrix, std::size_t>> chains;
        for (std::size_t s = top; s >= 1; --s) {
            std::size_t at_least_s = dims[s] - dims[s - 1];
            std::size_t longer = s < top ? dims[s + 1] - dims[s] : 0;
            std::size_t wanted = at_least_s - longer;
            if (wanted == 0) {
                continue;
            }
            Matrix span = kernels[s - 1];
            for (const auto &[v, len] : chains) {
                span = append_cols(span, power(nil, len - s) * v);
            }
            std::size_t r = rank(span);
            std::size_t found = 0;
            for (std::size_t c = 0; c < kernels[s].cols() && found < wanted; ++c) {
                Matrix cand = kernels[s].col(c);
                Matrix trial = append_cols(span, cand);
                std::size_t tr = rank(trial);
                if (tr > r) {
                    span = std::move(trial);
                    r = tr;
                    chains.emplace_back(cand, s);
                    ++found;
                }
            }
            if (found != wanted) {
                throw Error(ErrorCode::Internal, "Jordan chain construction failed");
            }
        }
        std::sort(chains.begin(), chains.end(),
                  [](const auto &a, const auto &b) { return a.second > b.second; });
        for (const auto &[v, len] : chains) {
            for (std::size_t k = 1; k <= len; ++k) {
                out.similarity = append_cols(out.similarity, power(nil, len - k) * v);
            }
            out.blocks.push_back({lambda, len});
        }
    }
    return out;
}

std::size_t PencilBlock::rows() const {
    switch (kind) {
        case BlockKind::LeftSingular:
            return size + 1;
        default:
            return size;
    }
}

std::size_t PencilBlock::cols() const {
    switch (kind) {
        case BlockKind::RightSingular:
            return size + 1;
        default:
            return size;
    }
}

std::string PencilBlock::to_string() const {
    std::ostringstream out;
    switch (kind) {
        case BlockKind::LeftSingular:
            out << "Lt" << size;
            break;
        case BlockKind::RightSingular:
            out << "L" << size;
            break;
        case BlockKind::Infinite:
            out << "N" << size;
            break;
        case BlockKind::Finite:
            out << "J" << size << "(" << eigenvalue.to_string() << ")";
            break;
    }
    return out.str();
}

std::string blocks_to_string(const std::vector<PencilBlock> &blocks) {
    std::string s;
    for (const auto &b : blocks) {
        if (!s.empty()) {
            s += ",";
        }
        s += b.to_string();
    }
    return s;
}

bool block_less(const PencilBlock &a, const PencilBlock &b) {
    if (a.kind != b.kind) {
        return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    }
    switch (a.kind) {
        case BlockKind::LeftSingular:
        case BlockKind::RightSingular:
            return a.size < b.size;
        case BlockKind::Infinite:
            return a.size > b.size;
        case BlockKind::Finite:
            if (a.eigenvalue != b.eigenvalue) {
                return field_less(a.eigenvalue, b.eigenvalue);
            }
            return a.size > b.size;
    }
    return false;
}

void sort_blocks(std::vector<PencilBlock> &blocks) {
    std::stable_sort(blocks.begin(), blocks.end(), block_less);
}

namespace {

std::pair<Matrix, Matrix> single_layout(const PencilBlock &b) {
    std::size_t r = b.rows();
    std::size_t c = b.cols();
    Matrix g1(r, c);
    Matrix g2(r, c);
    switch (b.kind) {
        case BlockKind::RightSingular:
            for (std::size_t k = 0; k < b.size; ++k) {
                g1(k, k) = 1;
                g2(k, k + 1) = 1;
            }
            break;
        case BlockKind::LeftSingular:
            for (std::size_t k = 0; k < b.size; ++k) {
                g1(k, k) = 1;
                g2(k + 1, k) = 1;
            }
            break;
        case BlockKind::Infinite:
            g1 = jordan_matrix({{0, b.size}});
            g2 = Matrix::identity(b.size);
            break;
        case BlockKind::Finite:
            g1 = Matrix::identity(b.size);
            g2 = jordan_matrix({{b.eigenvalue, b.size}});
            break;
    }
    return {g1, g2};
}

}  // namespace

std::pair<Matrix, Matrix> block_layout(const std::vector<PencilBlock> &blocks) {
    std::size_t r = 0;
    std::size_t c = 0;
    for (const auto &b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix g1(r, c);
    Matrix g2(r, c);
    r = c = 0;
    for (const auto &b : blocks) {
        auto [b1, b2] = single_layout(b);
        g1.set_block(r, c, b1);
        g2.set_block(r, c, b2);
        r += b.rows();
        c += b.cols();
    }
    return {g1, g2};
}

std::size_t normal_rank(const Matrix &g1, const Matrix &g2) {
    std::size_t bound = std::min(g1.rows(), g1.cols());
    std::size_t best = 0;
    // A drop in rank happens at no more than `bound` eigenvalues.
    for (std::size_t s = 0; s <= bound && best < bound; ++s) {
        best = std::max(best, rank(g1 + GaussianRational(static_cast<long>(s)) * g2));
    }
    return best;
}

namespace {

Matrix block_diag_identity(std::size_t k, const Matrix &m) {
    Matrix out = Matrix::identity(k + m.rows());
    out.set_block(k, k, m);
    return out;
}

// Reduction state: p * g1 * q = diag(blocks so far, rem1), likewise for g2.
struct Reduction {
    Matrix p;
    Matrix q;
    Matrix rem1;
    Matrix rem2;
    std::size_t row0 = 0;
    std::size_t col0 = 0;
    // Block placements in extraction order.
    std::vector<PencilBlock> blocks;
    std::vector<std::pair<std::size_t, std::size_t>> offsets;

    void apply(const Matrix &psub, const Matrix &qsub) {
        p = block_diag_identity(row0, psub) * p;
        q = q * block_diag_identity(col0, qsub);
        rem1 = psub * rem1 * qsub;
        rem2 = psub * rem2 * qsub;
    }

    void take(const PencilBlock &b) {
        blocks.push_back(b);
        offsets.emplace_back(row0, col0);
        row0 += b.rows();
        col0 += b.cols();
        rem1 = rem1.block(b.rows(), b.cols(), rem1.rows() - b.rows(), rem1.cols() - b.cols());
        rem2 = rem2.block(b.rows(), b.cols(), rem2.rows() - b.rows(), rem2.cols() - b.cols());
    }
};

struct SubResult {
    Matrix p;
    Matrix q;
    std::vector<PencilBlock> blocks;  // RightSingular, in extraction order
};

// Extracts every right singular block of (a, b); p a q = diag(L blocks, rest).
SubResult extract_right(const Matrix &a, const Matrix &b, std::size_t count) {
    Reduction red{Matrix::identity(a.rows()), Matrix::identity(a.cols()), a, b, 0, 0, {}, {}};
    std::size_t found = 0;
    // Zero columns first: the common kernel gives all L_0 blocks at once.
    {
        Matrix k0 = nullspace(vstack(red.rem1, red.rem2));
        if (k0.cols() > 0) {
            red.apply(Matrix::identity(red.rem1.rows()), complete_basis(k0));
            for (std::size_t k = 0; k < k0.cols(); ++k) {
                red.take(PencilBlock::right(0));
            }
            found += k0.cols();
        }
    }
    std::size_t eps = 1;
    while (found < count) {
        const Matrix &ra = red.rem1;
        const Matrix &rb = red.rem2;
        std::size_t m = ra.rows();
        std::size_t n = ra.cols();
        if (eps > m + 1) {
            throw Error(ErrorCode::Internal, "right minimal index search exceeded the pencil size");
        }
        // Unknowns y_0..y_eps; equations A y_0 = 0, A y_k + B y_{k-1} = 0, B y_eps = 0.
        Matrix sys(m * (eps + 2), n * (eps + 1));
        for (std::size_t k = 0; k <= eps; ++k) {
            sys.set_block(k * m, k * n, ra);
            sys.set_block((k + 1) * m, k * n, rb);
        }
        Matrix ker = nullspace(sys);
        if (ker.cols() == 0) {
            ++eps;
            continue;
        }
        Matrix y = ker.col(0);
        // q_j = (-1)^(j-1) y_(eps+1-j), j = 1..eps+1; p_j = A q_j.
        Matrix qcols(n, eps + 1);
        for (std::size_t j = 0; j <= eps; ++j) {
            std::size_t src = eps - j;
            GaussianRational sign = (j % 2 == 0) ? 1 : -1;
            for (std::size_t r = 0; r < n; ++r) {
                qcols(r, j) = sign * y(src * n + r, 0);
            }
        }
        Matrix pcols = ra * qcols.block(0, 0, n, eps);
        Matrix pinv = complete_basis(pcols);
        Matrix qfull = complete_basis(qcols);
        Matrix psub = invert(pinv);
        Matrix t1 = psub * ra * qfull;
        Matrix t2 = psub * rb * qfull;
        // Clear the coupling: [I X; 0 I] [L D; 0 R] [I Y; 0 I] = diag(L, R).
        std::size_t mr = m - eps;
        std::size_t nr = n - eps - 1;
        if (nr > 0) {
            Matrix l[2] = {t1.block(0, 0, eps, eps + 1), t2.block(0, 0, eps, eps + 1)};
            Matrix d[2] = {t1.block(0, eps + 1, eps, nr), t2.block(0, eps + 1, eps, nr)};
            Matrix rr[2] = {t1.block(eps, eps + 1, mr, nr), t2.block(eps, eps + 1, mr, nr)};
            std::size_t ny = (eps + 1) * nr;
            std::size_t nx = eps * mr;
            Matrix coeff(2 * eps * nr, ny + nx);
            Matrix rhs(2 * eps * nr, 1);
            for (int w = 0; w < 2; ++w) {
                for (std::size_t i = 0; i < eps; ++i) {
                    for (std::size_t j = 0; j < nr; ++j) {
                        std::size_t row = (w * eps + i) * nr + j;
                        for (std::size_t k = 0; k <= eps; ++k) {
                            coeff(row, k * nr + j) = l[w](i, k);  // Y(k, j)
                        }
                        for (std::size_t k = 0; k < mr; ++k) {
                            coeff(row, ny + i * mr + k) = rr[w](k, j);  // X(i, k)
                        }
                        rhs(row, 0) = -d[w](i, j);
                    }
                }
            }
            Matrix sol;
            if (!solve(coeff, rhs, &sol)) {
                throw Error(ErrorCode::Internal, "singular block decoupling has no solution");
            }
            Matrix p2 = Matrix::identity(m);
            Matrix q2 = Matrix::identity(n);
            for (std::size_t i = 0; i < eps; ++i) {
                for (std::size_t k = 0; k < mr; ++k) {
                    p2(i, eps + k) = sol(ny + i * mr + k, 0);
                }
            }
            for (std::size_t k = 0; k <= eps; ++k) {
                for (std::size_t j = 0; j < nr; ++j) {
                    q2(k, eps + 1 + j) = sol(k * nr + j, 0);
                }
            }
            psub = p2 * psub;
            qfull = qfull * q2;
        }
        red.apply(psub, qfull);
        red.take(PencilBlock::right(eps));
        ++found;
    }
    // Remaining pencil stays in red.rem*; callers read it through p and q.
    return {red.p, red.q, red.blocks};
}

struct RegularResult {
    Matrix p;
    Matrix q;
    std::vector<PencilBlock> blocks;
};

// Square regular pencil (r1, r2) to diag of finite and infinite blocks.
RegularResult reduce_regular(const Matrix &r1, const Matrix &r2) {
    std::size_t n = r1.rows();
    RegularResult out{Matrix::identity(n), Matrix::identity(n), {}};
    if (n == 0) {
        return out;
    }
    if (is_invertible(r1)) {
        Matrix r1inv = invert(r1);
        JordanForm jf = jordan_form(r1inv * r2);
        out.p = invert(jf.similarity) * r1inv;
        out.q = jf.similarity;
        for (const auto &b : jf.blocks) {
            out.blocks.push_back(PencilBlock::finite(b.eigenvalue, b.size));
        }
        return out;
    }
    // Some r1 + c r2 is invertible for a regular pencil; scan small Gaussian integers.
    GaussianRational c;
    Matrix k;
    bool ok = false;
    for (long mag = 1; mag <= static_cast<long>(n) + 2 && !ok; ++mag) {
        for (GaussianRational cand : {GaussianRational(mag), GaussianRational(-mag), GaussianRational(0, mag),
                                      GaussianRational(0, -mag)}) {
            Matrix trial = r1 + cand * r2;
            if (is_invertible(trial)) {
                c = cand;
                k = std::move(trial);
                ok = true;
                break;
            }
        }
    }
    if (!ok) {
        throw Error(ErrorCode::Internal, "regular part is singular for every shift");
    }
    Matrix kinv = invert(k);
    JordanForm jf = jordan_form(kinv * r2);
    Matrix p0 = invert(jf.similarity) * kinv;
    Matrix q0 = jf.similarity;
    // Now p0 r1 q0 = I - c J and p0 r2 q0 = J, blockwise.
    Matrix pb = Matrix::identity(n);
    Matrix qb = Matrix::identity(n);
    std::size_t at = 0;
    for (const auto &b : jf.blocks) {
        Matrix j = jordan_matrix({b});
        Matrix g1 = Matrix::identity(b.size) - c * j;
        if (!(GaussianRational(1) - c * b.eigenvalue).is_zero()) {
            Matrix g1inv = invert(g1);
            JordanForm h = jordan_form(g1inv * j);
            pb.set_block(at, at, invert(h.similarity) * g1inv);
            qb.set_block(at, at, h.similarity);
            for (const auto &hb : h.blocks) {
                out.blocks.push_back(PencilBlock::finite(hb.eigenvalue, hb.size));
            }
        } else {
            Matrix jinv = invert(j);
            JordanForm h = jordan_form(jinv * g1);
            pb.set_block(at, at, invert(h.similarity) * jinv);
            qb.set_block(at, at, h.similarity);
            for (const auto &hb : h.blocks) {
                out.blocks.push_back(PencilBlock::infinite(hb.size));
            }
        }
        at += b.size;
    }
    out.p = pb * p0;
    out.q = q0 * qb;
    return out;
}

Matrix permutation_rows(const std::vector<std::size_t> &order) {
    // Row k of the result selects row order[k].
    Matrix pm(order.size(), order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        pm(k, order[k]) = 1;
    }
    return pm;
}

}  // namespace

PencilCanon kcf(const Matrix &g1, const Matrix &g2) {
    if (g1.rows() != g2.rows() || g1.cols() != g2.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "pencil matrices differ in shape");
    }
    if (g1.is_zero() && g2.is_zero()) {
        throw Error(ErrorCode::ZeroPencil, "both pencil matrices are zero");
    }
    std::size_t m = g1.rows();
    std::size_t n = g1.cols();
    std::size_t r = normal_rank(g1, g2);
    PencilCanon out;

    Reduction red{Matrix::identity(m), Matrix::identity(n), g1, g2, 0, 0, {}, {}};

    // Right singular part.
    if (n > r) {
        SubResult right = extract_right(red.rem1, red.rem2, n - r);
        red.apply(right.p, right.q);
        for (const auto &b : right.blocks) {
            red.take(b);
        }
    }
    // Left singular part from the transposed remainder.
    if (m > r) {
        SubResult left = extract_right(red.rem1.transpose(), red.rem2.transpose(), m - r);
        red.apply(left.q.transpose(), left.p.transpose());
        for (const auto &b : left.blocks) {
            red.take(PencilBlock::left(b.size));
        }
    }
    if (red.rem1.rows() != red.rem1.cols()) {
        throw Error(ErrorCode::Internal, "remaining pencil is not square after singular reduction");
    }
    RegularResult reg = reduce_regular(red.rem1, red.rem2);
    red.apply(reg.p, reg.q);
    for (const auto &b : reg.blocks) {
        red.take(b);
    }

    // Permute blocks into canonical order.
    std::vector<std::size_t> idx(red.blocks.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return block_less(red.blocks[a], red.blocks[b]); });
    std::vector<std::size_t> row_order;
    std::vector<std::size_t> col_order;
    for (auto k : idx) {
        const auto &b = red.blocks[k];
        for (std::size_t i = 0; i < b.rows(); ++i) {
            row_order.push_back(red.offsets[k].first + i);
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
            col_order.push_back(red.offsets[k].second + j);
        }
        out.blocks.push_back(b);
    }
    std::tie(out.canon1, out.canon2) = block_layout(out.blocks);
    if (out.canon1 == g1 && out.canon2 == g2) {
        // Already canonical: keep the identity witnesses.
        out.p = Matrix::identity(m);
        out.q = Matrix::identity(n);
        return out;
    }
    out.p = permutation_rows(row_order) * red.p;
    out.q = red.q * permutation_rows(col_order).transpose();
    if (out.p * g1 * out.q != out.canon1 || out.p * g2 * out.q != out.canon2 || !is_invertible(out.p) ||
        !is_invertible(out.q)) {
        throw Error(ErrorCode::Internal, "Kronecker reduction failed its witness check");
    }
    return out;
}

}  // namespace slocc
