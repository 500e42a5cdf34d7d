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


#include "slocc/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace slocc {

MobiusMap MobiusMap::from_matrix(const Matrix &t) {
    if (t.rows() != 2 || t.cols() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "qubit operator must be 2x2");
    }
    return {t(0, 0), t(0, 1), t(1, 0), t(1, 1)};
}

Matrix MobiusMap::matrix() const {
    return {{a, b}, {c, d}};
}

EigenPoint MobiusMap::operator()(const EigenPoint &x) const {
    if (x.infinite) {
        if (b.is_zero()) {
            return EigenPoint::at_infinity();
        }
        return {false, d / b};
    }
    GaussianRational den = a + b * x.value;
    if (den.is_zero()) {
        return EigenPoint::at_infinity();
    }
    return {false, (c + d * x.value) / den};
}

MobiusMap MobiusMap::compose(const MobiusMap &o) const {
    // Pencil action composes as matrix product: this * other.
    return from_matrix(matrix() * o.matrix());
}

MobiusMap MobiusMap::inverse() const {
    return from_matrix(invert(matrix()));
}

bool MobiusMap::is_identity() const {
    return same_map(MobiusMap{});
}

bool MobiusMap::same_map(const MobiusMap &o) const {
    // Proportional coefficient vectors.
    GaussianRational x[4] = {a, b, c, d};
    GaussianRational y[4] = {o.a, o.b, o.c, o.d};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (x[i] * y[j] != x[j] * y[i]) {
                return false;
            }
        }
    }
    return true;
}

std::vector<PencilBlock> transform_blocks(const std::vector<PencilBlock> &blocks, const MobiusMap &m) {
    std::vector<PencilBlock> out;
    out.reserve(blocks.size());
    for (const auto &b : blocks) {
        if (b.kind == BlockKind::Finite || b.kind == BlockKind::Infinite) {
            EigenPoint x = b.kind == BlockKind::Infinite ? EigenPoint::at_infinity() : EigenPoint{false, b.eigenvalue};
            EigenPoint y = m(x);
            out.push_back(y.infinite ? PencilBlock::infinite(b.size) : PencilBlock::finite(y.value, b.size));
        } else {
            out.push_back(b);
        }
    }
    sort_blocks(out);
    return out;
}

namespace {

struct PointInfo {
    EigenPoint point;
    std::vector<std::size_t> sizes;  // descending
    // Priority: largest block, then block count, then multiplicity, then the size list.
    std::tuple<std::size_t, std::size_t, std::size_t, std::vector<std::size_t>> key() const {
        std::size_t total = 0;
        for (auto s : sizes) {
            total += s;
        }
        return {sizes.front(), sizes.size(), total, sizes};
    }
};

std::vector<PointInfo> eigenpoints(const std::vector<PencilBlock> &blocks) {
    std::vector<PointInfo> pts;
    for (const auto &b : blocks) {
        if (b.kind != BlockKind::Finite && b.kind != BlockKind::Infinite) {
            continue;
        }
        EigenPoint x = b.kind == BlockKind::Infinite ? EigenPoint::at_infinity() : EigenPoint{false, b.eigenvalue};
        auto it = std::find_if(pts.begin(), pts.end(), [&](const PointInfo &p) { return p.point == x; });
        if (it == pts.end()) {
            pts.push_back({x, {b.size}});
        } else {
            it->sizes.push_back(b.size);
        }
    }
    for (auto &p : pts) {
        std::sort(p.sizes.rbegin(), p.sizes.rend());
    }
    return pts;
}

// Moebius map sending p -> inf, q -> 0, r -> 1 (only the given anchors).
MobiusMap anchor_map(const std::vector<EigenPoint> &anchors) {
    using GR = GaussianRational;
    if (anchors.empty()) {
        return {};
    }
    const EigenPoint &p = anchors[0];
    if (anchors.size() == 1) {
        if (p.infinite) {
            return {};
        }
        return {-p.value, 1, 1, 0};
    }
    const EigenPoint &q = anchors[1];
    if (anchors.size() == 2) {
        if (p.infinite) {
            return {1, 0, -q.value, 1};
        }
        if (q.infinite) {
            return {-p.value, 1, 1, 0};
        }
        return {-p.value, 1, -q.value, 1};
    }
    const EigenPoint &r = anchors[2];
    if (p.infinite) {
        GR s = r.value - q.value;
        return {s, 0, -q.value, 1};
    }
    if (q.infinite) {
        return {-p.value, 1, r.value - p.value, 0};
    }
    if (r.infinite) {
        return {-p.value, 1, -q.value, 1};
    }
    GR rp = r.value - p.value;
    GR rq = r.value - q.value;
    return {-p.value * rq, rq, -q.value * rp, rp};
}

bool blocks_less(const std::vector<PencilBlock> &x, const std::vector<PencilBlock> &y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), block_less);
}

}  // namespace

MobiusNormalization mobius_normalize(const std::vector<PencilBlock> &blocks) {
    std::vector<PointInfo> pts = eigenpoints(blocks);
    std::size_t want = std::min<std::size_t>(3, pts.size());
    MobiusNormalization best;
    bool have = false;
    std::vector<std::size_t> chosen;
    std::vector<bool> used(pts.size(), false);
    // Enumerate anchor sequences that respect the priority order.
    std::function<void()> visit = [&]() {
        if (chosen.size() == want) {
            std::vector<EigenPoint> anchors;
            for (auto k : chosen) {
                anchors.push_back(pts[k].point);
            }
            MobiusMap m = anchor_map(anchors);
            std::vector<PencilBlock> nb = transform_blocks(blocks, m);
            bool better = !have || blocks_less(nb, best.blocks);
            bool tie = have && !better && !blocks_less(best.blocks, nb);
            if (better || (tie && m.is_identity())) {
                best.blocks = std::move(nb);
                best.map = m;
                have = true;
            }
            return;
        }
        std::optional<decltype(pts[0].key())> top;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (!used[k] && (!top || pts[k].key() > *top)) {
                top = pts[k].key();
            }
        }
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (!used[k] && pts[k].key() == *top) {
                used[k] = true;
                chosen.push_back(k);
                visit();
                chosen.pop_back();
                used[k] = false;
            }
        }
    };
    visit();
    best.anchors = want;
    if (want == 3) {
        for (const auto &p : eigenpoints(best.blocks)) {
            if (!p.point.infinite && !p.point.value.is_zero() && !p.point.value.is_one()) {
                best.free_values.push_back(p.point.value);
            }
        }
        std::sort(best.free_values.begin(), best.free_values.end(), field_less);
    }
    return best;
}

std::set<GaussianRational, FieldLess> residual_orbit(const GaussianRational &x) {
    if (x.is_zero() || x.is_one()) {
        throw Error(ErrorCode::DegenerateLambda, "cross ratio " + x.to_string() + " collapses the residual orbit");
    }
    GaussianRational one(1);
    return {x, x.reciprocal(), one - x, x / (x - one), (one - x).reciprocal(), one - x.reciprocal()};
}

GaussianRational orbit_minimum(const GaussianRational &x) {
    return *residual_orbit(x).begin();
}

GaussianRational cross_ratio(const GaussianRational &l1, const GaussianRational &l2, const GaussianRational &l3) {
    GaussianRational den = l3 * (l1 - l2);
    if (den.is_zero()) {
        throw Error(ErrorCode::DegenerateLambda, "cross ratio undefined for coincident points");
    }
    return l2 * (l1 - l3) / den;
}

std::pair<StandardForm, RouteTriple> standard_form(const MatrixPair &pair) {
    const Matrix &g1 = pair.gamma1;
    const Matrix &g2 = pair.gamma2;
    PencilCanon pc = kcf(g1, g2);
    MobiusNormalization norm = mobius_normalize(pc.blocks);
    StandardForm sf;
    sf.blocks = norm.blocks;
    std::tie(sf.e_part, sf.j_part) = block_layout(sf.blocks);
    RouteTriple route;
    route.side = pair.side;
    if (sf.e_part == g1 && sf.j_part == g2) {
        norm.map = MobiusMap{};
        route.t = Matrix::identity(2);
        route.p = Matrix::identity(g1.rows());
        route.q = Matrix::identity(g1.cols());
    } else {
        route.t = norm.map.matrix();
        auto [h1, h2] = apply_route(route.t, Matrix::identity(g1.rows()), Matrix::identity(g1.cols()), g1, g2);
        PencilCanon pc2 = kcf(h1, h2);
        if (pc2.blocks != sf.blocks) {
            throw Error(ErrorCode::Internal, "Moebius normalization disagrees with the reduced pencil");
        }
        route.p = pc2.p;
        route.q = pc2.q;
    }
    sf.normalization = norm;
    auto check = apply_route(route.t, route.p, route.q, g1, g2);
    if (check.first != sf.e_part || check.second != sf.j_part) {
        throw Error(ErrorCode::Internal, "standard form route failed verification");
    }
    return {sf, route};
}

std::pair<StandardForm, RouteTriple> standard_form(const StateTensor &arranged) {
    arranged.require_valid();
    return standard_form(to_matrix_pair(arranged));
}

std::string FamilySignature::serialize() const {
    std::ostringstream out;
    out << shape << "|" << skeleton << ";";
    for (std::size_t k = 0; k < invariants.size(); ++k) {
        if (k) {
            out << ",";
        }
        out << "f" << k + 1 << "=" << invariants[k].to_string();
    }
    return out.str();
}

FamilySignature signature(const StandardForm &sf, const MatrixPair &pair) {
    FamilySignature sig;
    std::ostringstream shape;
    shape << "2x" << pair.single_dim << "x" << pair.factor1 << "x" << pair.factor2 << ":" << side_name(pair.side);
    sig.shape = shape.str();
    sig.invariants = sf.normalization.free_values;
    std::string skel;
    for (const auto &b : sf.blocks) {
        if (!skel.empty()) {
            skel += ",";
        }
        if (b.kind == BlockKind::Finite) {
            auto it = std::find(sig.invariants.begin(), sig.invariants.end(), b.eigenvalue);
            if (it != sig.invariants.end()) {
                skel += "J" + std::to_string(b.size) + "(f" + std::to_string(it - sig.invariants.begin() + 1) + ")";
                continue;
            }
        }
        skel += b.to_string();
    }
    sig.skeleton = skel;
    return sig;
}

std::pair<Matrix, Matrix> RouteSpace::instantiate(const std::vector<GaussianRational> &coeffs) const {
    if (coeffs.size() != basis.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "wrong number of route-space parameters");
    }
    Matrix x(rows, rows);
    Matrix q(cols, cols);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) {
            continue;
        }
        for (std::size_t i = 0; i < rows * rows; ++i) {
            if (!basis(i, k).is_zero()) {
                x(i / rows, i % rows) += coeffs[k] * basis(i, k);
            }
        }
        for (std::size_t i = 0; i < cols * cols; ++i) {
            const auto &v = basis(rows * rows + i, k);
            if (!v.is_zero()) {
                q(i / cols, i % cols) += coeffs[k] * v;
            }
        }
    }
    return {x, q};
}

RouteSpace route_space(const Matrix &t, const Matrix &src1, const Matrix &src2, const Matrix &dst1,
                       const Matrix &dst2) {
    auto [d1, d2] = apply_route(t, Matrix::identity(src1.rows()), Matrix::identity(src1.cols()), src1, src2);
    std::size_t m = src1.rows();
    std::size_t n = src1.cols();
    RouteSpace space;
    space.rows = m;
    space.cols = n;
    // Delta_k Q - X dst_k = 0, entry (i, j): sum_l Delta(i,l) Q(l,j) - sum_l X(i,l) dst(l,j).
    Matrix sys(2 * m * n, m * m + n * n);
    const Matrix *delta[2] = {&d1, &d2};
    const Matrix *dst[2] = {&dst1, &dst2};
    for (int k = 0; k < 2; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t row = (k * m + i) * n + j;
                for (std::size_t l = 0; l < n; ++l) {
                    const auto &v = (*delta[k])(i, l);
                    if (!v.is_zero()) {
                        sys(row, m * m + l * n + j) = v;
                    }
                }
                for (std::size_t l = 0; l < m; ++l) {
                    const auto &v = (*dst[k])(l, j);
                    if (!v.is_zero()) {
                        sys(row, i * m + l) = -v;
                    }
                }
            }
        }
    }
    space.basis = nullspace(sys);
    return space;
}

std::optional<std::pair<Matrix, Matrix>> invertible_member(const RouteSpace &space, std::uint64_t seed,
                                                           int attempts) {
    if (space.dimension() == 0) {
        return std::nullopt;
    }
    std::mt19937_64 rng(seed);
    for (int a = 0; a < attempts; ++a) {
        long bound = 1 + a / 8;
        std::uniform_int_distribution<long> dist(-bound, bound);
        std::vector<GaussianRational> coeffs(space.dimension());
        for (auto &c : coeffs) {
            c = GaussianRational(dist(rng));
        }
        auto [x, q] = space.instantiate(coeffs);
        if (is_invertible(x) && is_invertible(q)) {
            return std::make_pair(invert(x), q);
        }
    }
    return std::nullopt;
}

std::optional<MobiusElement> StabilizerDescription::instantiate(const Matrix &t) const {
    RouteSpace space = route_space(t, e, j, e, j);
    auto member = invertible_member(space);
    if (!member) {
        return std::nullopt;
    }
    MobiusElement el{MobiusMap::from_matrix(t), t, member->first, member->second};
    auto check = apply_route(el.s1, el.s2, el.s3, e, j);
    if (check.first != e || check.second != j) {
        throw Error(ErrorCode::Internal, "stabilizer element failed verification");
    }
    return el;
}

std::vector<std::string> StabilizerDescription::parameter_names() const {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < commutant.dimension(); ++k) {
        names.push_back("p" + std::to_string(k + 1));
    }
    return names;
}

namespace {

// Moebius map through three point correspondences x_k -> y_k.
MobiusMap through(const std::vector<EigenPoint> &x, const std::vector<EigenPoint> &y) {
    MobiusMap to_std = anchor_map(x);
    MobiusMap from_std = anchor_map(y).inverse();
    return from_std.compose(to_std);
}

}  // namespace

std::vector<MobiusMap> mobius_between(const std::vector<PencilBlock> &from, const std::vector<PencilBlock> &to) {
    std::vector<PencilBlock> target = to;
    sort_blocks(target);
    std::vector<MobiusMap> out;
    std::vector<PointInfo> pts = eigenpoints(from);
    std::vector<PointInfo> dst = eigenpoints(target);
    if (pts.size() != dst.size()) {
        return out;
    }
    if (pts.size() < 3) {
        if (transform_blocks(from, MobiusMap{}) == target) {
            out.push_back(MobiusMap{});
        }
        return out;
    }
    std::vector<EigenPoint> src{pts[0].point, pts[1].point, pts[2].point};
    for (std::size_t a = 0; a < dst.size(); ++a) {
        for (std::size_t b = 0; b < dst.size(); ++b) {
            for (std::size_t c = 0; c < dst.size(); ++c) {
                if (a == b || b == c || a == c) {
                    continue;
                }
                if (dst[a].sizes != pts[0].sizes || dst[b].sizes != pts[1].sizes || dst[c].sizes != pts[2].sizes) {
                    continue;
                }
                MobiusMap m = through(src, {dst[a].point, dst[b].point, dst[c].point});
                if (transform_blocks(from, m) == target) {
                    out.push_back(m);
                }
            }
        }
    }
    // Identity first when present.
    std::stable_partition(out.begin(), out.end(), [](const MobiusMap &m) { return m.is_identity(); });
    return out;
}

StabilizerDescription stabilizer(const Matrix &e, const Matrix &j) {
    StabilizerDescription st;
    st.e = e;
    st.j = j;
    st.commutant = route_space(Matrix::identity(2), e, j, e, j);
    PencilCanon pc = kcf(e, j);
    std::vector<PointInfo> pts = eigenpoints(pc.blocks);
    st.anchors = std::min<std::size_t>(3, pts.size());
    st.continuous_mobius = pts.size() < 3;
    st.mobius.push_back({MobiusMap{}, Matrix::identity(2), Matrix::identity(e.rows()), Matrix::identity(e.cols())});
    if (st.continuous_mobius) {
        return st;
    }
    for (const MobiusMap &m : mobius_between(pc.blocks, pc.blocks)) {
        if (m.is_identity()) {
            continue;
        }
        if (auto el = st.instantiate(m.matrix())) {
            st.mobius.push_back(*el);
        }
    }
    return st;
}

}  // namespace slocc
