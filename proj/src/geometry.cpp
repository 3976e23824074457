#include "evgeom/geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace evgeom {

ProjectivePoint normalize(const Gf& gf, std::vector<std::uint8_t> coords) {
    std::size_t lead = coords.size();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != 0) { lead = i; break; }
    }
    if (lead == coords.size()) throw std::invalid_argument("cannot normalize the zero vector");
    std::uint8_t s = gf.inv(coords[lead]);
    if (s != 1) {
        for (auto& c : coords) c = gf.mul(c, s);
    }
    return ProjectivePoint{std::move(coords)};
}

std::vector<std::uint8_t> apply(const Gf& gf, const GfMatrix& m, const std::vector<std::uint8_t>& v) {
    if (m.cols != static_cast<int>(v.size())) throw std::invalid_argument("matrix/vector size mismatch");
    std::vector<std::uint8_t> out(m.rows, 0);
    for (int r = 0; r < m.rows; ++r) {
        std::uint8_t acc = 0;
        for (int c = 0; c < m.cols; ++c) acc = gf.add(acc, gf.mul(m.at(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

bool Echelon::push(const std::uint8_t* row) {
    std::uint8_t tmp[kMaxWidth];
    std::copy(row, row + width_, tmp);
    for (int i = 0; i < rank_; ++i) {
        std::uint8_t c = tmp[pivot_[i]];
        if (c) gf_->axpy(tmp, rows_[i], gf_->neg(c), width_);
    }
    int lead = -1;
    for (int j = 0; j < width_; ++j) {
        if (tmp[j]) { lead = j; break; }
    }
    if (lead < 0) return false;
    std::uint8_t s = gf_->inv(tmp[lead]);
    for (int j = 0; j < width_; ++j) rows_[rank_][j] = gf_->mul(tmp[j], s);
    pivot_[rank_] = static_cast<std::uint8_t>(lead);
    ++rank_;
    return true;
}

bool Echelon::contains(const std::uint8_t* row) const {
    std::uint8_t tmp[kMaxWidth];
    std::copy(row, row + width_, tmp);
    for (int i = 0; i < rank_; ++i) {
        std::uint8_t c = tmp[pivot_[i]];
        if (c) gf_->axpy(tmp, rows_[i], gf_->neg(c), width_);
    }
    for (int j = 0; j < width_; ++j) {
        if (tmp[j]) return false;
    }
    return true;
}

int rank(const Gf& gf, const std::vector<ProjectivePoint>& points) {
    if (points.empty()) return 0;
    const int width = static_cast<int>(points[0].coords.size());
    if (width > kMaxWidth) throw std::invalid_argument("ambient dimension exceeds supported width");
    Echelon ech(gf, width);
    for (const auto& pt : points) {
        if (static_cast<int>(pt.coords.size()) != width)
            throw std::invalid_argument("points live in mixed ambient spaces");
        ech.push(pt.coords.data());
    }
    return ech.rank();
}

int rank_of(const PointSet& set) { return rank(set.gf(), set.points); }

bool is_invertible(const Gf& gf, const GfMatrix& m) {
    if (m.rows != m.cols) return false;
    Echelon ech(gf, m.cols);
    for (int r = 0; r < m.rows; ++r) {
        ech.push(&m.data[(std::size_t)r * m.cols]);
    }
    return ech.rank() == m.rows;
}

void for_each_projective_point(int n, std::uint32_t q,
                               const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
    // Normalized representatives: leading 1 at position `lead`, zeros
    // before it, free entries after. Free entries count up base q.
    std::vector<std::uint8_t> v(n + 1, 0);
    for (int lead = 0; lead <= n; ++lead) {
        std::fill(v.begin(), v.end(), 0);
        v[lead] = 1;
        while (true) {
            fn(v);
            int i = n;
            while (i > lead && v[i] == q - 1) {
                v[i] = 0;
                --i;
            }
            if (i == lead) break;
            ++v[i];
        }
    }
}

u64 for_each_hyperplane(int n, std::uint32_t q,
                        const std::function<void(const std::vector<std::uint8_t>&)>& fn,
                        u64 limit) {
    u64 count = 0;
    u64 total = 1;
    for (int i = 0; i <= n; ++i) total *= q;
    total = (total - 1) / (q - 1);
    if (limit && total > limit) throw std::length_error("hyperplane enumeration exceeds the requested cap");
    for_each_projective_point(n, q, [&](const std::vector<std::uint8_t>& cov) {
        ++count;
        fn(cov);
    });
    return count;
}

std::uint8_t dot(const Gf& gf, const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = gf.add(acc, gf.mul(a[i], b[i]));
    return acc;
}

Flat hyperplane_flat(std::uint32_t q, const std::vector<std::uint8_t>& covector) {
    const Gf& gf = Gf::of(q);
    GfMatrix m;
    m.rows = 1;
    m.cols = static_cast<int>(covector.size());
    m.data = covector;
    return Flat{q, kernel_basis(gf, m)};
}

std::vector<std::vector<std::uint8_t>> kernel_basis(const Gf& gf, const GfMatrix& m) {
    // Row-reduce a working copy, track pivot columns, then emit the
    // standard free-variable basis in reduced row echelon form.
    GfMatrix w = m;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int sel = -1;
        for (int i = r; i < w.rows; ++i) {
            if (w.at(i, c)) { sel = i; break; }
        }
        if (sel < 0) continue;
        for (int j = 0; j < w.cols; ++j) std::swap(w.at(sel, j), w.at(r, j));
        std::uint8_t s = gf.inv(w.at(r, c));
        for (int j = 0; j < w.cols; ++j) w.at(r, j) = gf.mul(w.at(r, j), s);
        for (int i = 0; i < w.rows; ++i) {
            if (i == r) continue;
            std::uint8_t f = w.at(i, c);
            if (f) {
                for (int j = 0; j < w.cols; ++j)
                    w.at(i, j) = gf.sub(w.at(i, j), gf.mul(f, w.at(r, j)));
            }
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(w.cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (int c = 0; c < w.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<std::uint8_t> v(w.cols, 0);
        v[c] = 1;
        for (int i = 0; i < r; ++i) {
            std::uint8_t coeff = w.at(i, c);
            if (coeff) v[pivot_col[i]] = gf.neg(coeff);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

PointSet project_from(const PointSet& set, std::size_t index) {
    if (index >= set.points.size()) throw std::out_of_range("projection center index");
    const Gf& gf = set.gf();
    const ProjectivePoint& center = set.points[index];
    int lead = -1;
    for (std::size_t i = 0; i < center.coords.size(); ++i) {
        if (center.coords[i]) { lead = static_cast<int>(i); break; }
    }
    PointSet out;
    out.q = set.q;
    out.ambient_dim = set.ambient_dim - 1;
    out.label = set.label + "/projected";
    std::set<std::vector<std::uint8_t>> seen;
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        if (i == index) continue;
        std::vector<std::uint8_t> v = set.points[i].coords;
        std::uint8_t c = v[lead];
        if (c) {
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = gf.sub(v[j], gf.mul(c, center.coords[j]));
        }
        v.erase(v.begin() + lead);
        ProjectivePoint pt = normalize(gf, std::move(v));
        if (!seen.insert(pt.coords).second)
            throw std::runtime_error("projection collapses two points (collinear with the center)");
        out.points.push_back(std::move(pt));
    }
    return out;
}

PointSet frame(int n, std::uint32_t q) {
    PointSet out;
    out.q = q;
    out.ambient_dim = n;
    out.label = "frame";
    for (int i = 0; i <= n; ++i) {
        std::vector<std::uint8_t> v(n + 1, 0);
        v[i] = 1;
        out.points.push_back(ProjectivePoint{std::move(v)});
    }
    out.points.push_back(ProjectivePoint{std::vector<std::uint8_t>(n + 1, 1)});
    return out;
}

std::uint8_t BilinearForm::eval(const Gf& gf, const ProjectivePoint& a, const ProjectivePoint& b) const {
    std::uint8_t acc = 0;
    const int n = gram.rows;
    for (int i = 0; i < n; ++i) {
        if (a.coords[i] == 0) continue;
        std::uint8_t partial = 0;
        for (int j = 0; j < n; ++j) partial = gf.add(partial, gf.mul(gram.at(i, j), b.coords[j]));
        acc = gf.add(acc, gf.mul(a.coords[i], partial));
    }
    return acc;
}

bool BilinearForm::is_alternating(const Gf& gf) const {
    for (int i = 0; i < gram.rows; ++i) {
        if (gram.at(i, i) != 0) return false;
        for (int j = 0; j < gram.cols; ++j) {
            if (gram.at(i, j) != gf.neg(gram.at(j, i))) return false;
        }
    }
    return true;
}

LineParam LineParam::finite(const FieldElement& t) {
    return LineParam{t, t.ctx().one()};
}

LineParam LineParam::infinity(const FieldContext& ctx) {
    return LineParam{ctx.one(), ctx.zero()};
}

bool LineParam::same_point(const LineParam& o) const {
    // (x:y) == (x':y')  iff  x y' - x' y == 0.
    return (x * o.y - o.x * y).is_zero();
}

namespace {

FieldElement pair_det(const LineParam& a, const LineParam& b) {
    return a.x * b.y - b.x * a.y;
}

}  // namespace

FieldElement cross_ratio(const LineParam& u, const LineParam& v, const LineParam& w, const LineParam& z) {
    const LineParam* pts[4] = {&u, &v, &w, &z};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (pts[i]->same_point(*pts[j]))
                throw std::invalid_argument("cross-ratio requires four distinct points");
        }
    }
    FieldElement num = pair_det(u, w) * pair_det(v, z);
    FieldElement den = pair_det(u, z) * pair_det(v, w);
    return num / den;
}

bool in_q_subline(const LineParam& u, const LineParam& v, const LineParam& w, const LineParam& z, u64 q) {
    return in_subfield(cross_ratio(u, v, w, z), q);
}

}  // namespace evgeom
