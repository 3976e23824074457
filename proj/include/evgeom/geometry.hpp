#pragma once

// Projective points of PG(n, q) in intrinsic GF(q)-coordinates, exact
// rank computation, hyperplane enumeration, bilinear forms, and the
// cross-ratio / subline machinery on PG(1, q^3).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evgeom/field.hpp"
#include "evgeom/gf.hpp"

namespace evgeom {

// Widest intrinsic coordinate vector in scope is PG(13, q) -> 14; one
// extra column keeps room for augmented rows.
inline constexpr int kMaxWidth = 16;

struct ProjectivePoint {
    std::vector<std::uint8_t> coords;  // length n+1, canonical GF(q) indices
    int ambient_dim() const { return static_cast<int>(coords.size()) - 1; }
    bool operator==(const ProjectivePoint& o) const { return coords == o.coords; }
    bool operator<(const ProjectivePoint& o) const { return coords < o.coords; }
};

// Scales so the first nonzero coordinate is 1. Throws on the zero vector.
ProjectivePoint normalize(const Gf& gf, std::vector<std::uint8_t> coords);

struct GfMatrix {
    int rows = 0, cols = 0;
    std::vector<std::uint8_t> data;  // row-major
    std::uint8_t at(int r, int c) const { return data[(std::size_t)r * cols + c]; }
    std::uint8_t& at(int r, int c) { return data[(std::size_t)r * cols + c]; }
};

std::vector<std::uint8_t> apply(const Gf& gf, const GfMatrix& m, const std::vector<std::uint8_t>& v);
bool is_invertible(const Gf& gf, const GfMatrix& m);

struct PointSet {
    std::uint32_t q = 0;
    int ambient_dim = 0;
    std::string label;
    std::vector<ProjectivePoint> points;             // distinct, insertion order
    std::vector<GfMatrix> group_generators;          // optional, act as v -> M v
    std::size_t size() const { return points.size(); }
    const Gf& gf() const { return Gf::of(q); }
};

// Projective subspace given by a row basis (linearly independent).
struct Flat {
    std::uint32_t q = 0;
    std::vector<std::vector<std::uint8_t>> basis;
    int projective_dim() const { return static_cast<int>(basis.size()) - 1; }
};

// Incremental row echelon over GF(q); rows are immutable once stored, so
// a depth-first subset scan can push and pop in O(1).
class Echelon {
public:
    Echelon(const Gf& gf, int width) : gf_(&gf), width_(width) {
        if (width < 1 || width > kMaxWidth) throw std::invalid_argument("unsupported row width");
    }

    int rank() const { return rank_; }
    int width() const { return width_; }

    // Reduces `row` against the stored pivots and stores the remainder if
    // it is nonzero. Returns true if the rank grew.
    bool push(const std::uint8_t* row);
    // Undoes the most recent rank-growing push.
    void pop() { --rank_; }

    // True iff `row` lies in the current row span (does not modify state).
    bool contains(const std::uint8_t* row) const;

private:
    const Gf* gf_;
    int width_;
    int rank_ = 0;
    std::uint8_t rows_[kMaxWidth][kMaxWidth];
    std::uint8_t pivot_[kMaxWidth];
};

// Rank over GF(q) of the matrix whose rows are the points' coordinates.
// Throws if the points do not share an ambient space.
int rank(const Gf& gf, const std::vector<ProjectivePoint>& points);
int rank_of(const PointSet& set);

// Every point of PG(n, q) in a fixed enumeration order (normalized reps).
void for_each_projective_point(int n, std::uint32_t q,
                               const std::function<void(const std::vector<std::uint8_t>&)>& fn);

// Every hyperplane of PG(n, q), as a normalized covector; a point lies on
// the hyperplane iff the dot product vanishes. `limit` guards runaway
// enumerations (0 = no limit). Returns the number visited.
u64 for_each_hyperplane(int n, std::uint32_t q,
                        const std::function<void(const std::vector<std::uint8_t>&)>& fn,
                        u64 limit = 0);

std::uint8_t dot(const Gf& gf, const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);

// Basis of the kernel of a covector, as a Flat of dimension n-1.
Flat hyperplane_flat(std::uint32_t q, const std::vector<std::uint8_t>& covector);

// Reduced row echelon basis of the kernel of M (acting on column
// vectors), in lexicographic pivot order.
std::vector<std::vector<std::uint8_t>> kernel_basis(const Gf& gf, const GfMatrix& m);

// Projects X \ {X[index]} from the point X[index] onto the coordinate
// hyperplane complementary to its pivot. Throws if two points collapse
// (three collinear points through the center).
PointSet project_from(const PointSet& set, std::size_t index);

// n+2 points of PG(n, q): the n+1 unit points plus the all-ones point.
PointSet frame(int n, std::uint32_t q);

// Bilinear form on intrinsic coordinates, given by a Gram matrix.
struct BilinearForm {
    std::uint32_t q = 0;
    GfMatrix gram;
    std::uint8_t eval(const Gf& gf, const ProjectivePoint& a, const ProjectivePoint& b) const;
    bool is_alternating(const Gf& gf) const;
};

// --- projective line PG(1, q^3): parameters for ovoid bookkeeping ---

// A point of a projective line over the ambient field, stored as a
// homogeneous pair; finite t is (t : 1) and infinity is (1 : 0).
struct LineParam {
    FieldElement x, y;
    static LineParam finite(const FieldElement& t);
    static LineParam infinity(const FieldContext& ctx);
    bool is_infinity() const { return y.is_zero(); }
    bool same_point(const LineParam& o) const;
};

// (u-w)(v-z) / ((u-z)(v-w)) with the usual conventions at infinity.
// Defined (and never 0, 1 or infinite) for four pairwise distinct points;
// throws std::invalid_argument on repeated inputs.
FieldElement cross_ratio(const LineParam& u, const LineParam& v, const LineParam& w, const LineParam& z);

// True iff the four distinct points lie in a common subline PG(1, q),
// i.e. their cross-ratio lies in GF(q).
bool in_q_subline(const LineParam& u, const LineParam& v, const LineParam& w, const LineParam& z, u64 q);

}  // namespace evgeom
