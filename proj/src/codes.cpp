#include "evgeom/codes.hpp"

#include <set>
#include <stdexcept>

#include "subset_scan.hpp"

namespace evgeom {

std::vector<std::uint8_t> CheckMatrix::column(int c) const {
    std::vector<std::uint8_t> v(rows);
    for (int r = 0; r < rows; ++r) v[r] = at(r, c);
    return v;
}

CheckMatrix export_check_matrix(const PointSet& set) {
    if (rank_of(set) != set.ambient_dim + 1)
        throw std::invalid_argument("point set does not span its ambient space");
    CheckMatrix m;
    m.q = set.q;
    m.rows = set.ambient_dim + 1;
    m.cols = static_cast<int>(set.size());
    m.data.assign((std::size_t)m.rows * m.cols, 0);
    for (int c = 0; c < m.cols; ++c) {
        for (int r = 0; r < m.rows; ++r) m.at(r, c) = set.points[c].coords[r];
    }
    return m;
}

PointSet pointset_from_columns(const CheckMatrix& m, const std::string& label) {
    PointSet out;
    out.q = m.q;
    out.ambient_dim = m.rows - 1;
    out.label = label;
    const Gf& gf = Gf::of(m.q);
    std::set<std::vector<std::uint8_t>> seen;
    for (int c = 0; c < m.cols; ++c) {
        ProjectivePoint p = normalize(gf, m.column(c));
        if (!seen.insert(p.coords).second)
            throw std::invalid_argument("check matrix has proportional columns");
        out.points.push_back(std::move(p));
    }
    return out;
}

MinDistanceResult min_distance(const CheckMatrix& m, const VerifyOptions& opts) {
    const Gf& gf = Gf::of(m.q);
    if (m.rows > kMaxWidth) throw std::invalid_argument("row count exceeds the supported width");

    std::vector<std::vector<std::uint8_t>> cols(m.cols);
    for (int c = 0; c < m.cols; ++c) cols[c] = m.column(c);

    MinDistanceResult res;
    {
        Echelon ech(gf, m.rows);
        for (const auto& c : cols) ech.push(c.data());
        res.work += m.cols;
        if (ech.rank() == m.cols)
            throw std::invalid_argument("code has dimension zero: no nonzero codewords");
    }
    for (int c = 0; c < m.cols; ++c) {
        bool zero = true;
        for (auto v : cols[c]) zero &= (v == 0);
        if (zero) {
            res.distance = 1;
            res.support = {c};
            return res;
        }
    }

    detail::ScanSpec spec;
    spec.gf = &gf;
    spec.width = m.rows;
    spec.circuit_mode = true;
    for (const auto& c : cols) spec.rows.push_back(c.data());

    // Increasing-cardinality layers: the first layer with a dependency
    // pins the distance exactly, because smaller dependent subsets would
    // have been found in an earlier layer.
    VerifyOptions scan_opts = opts;
    for (int d = 2; d <= m.cols; ++d) {
        spec.extra = d;
        if (res.work >= opts.budget) throw BudgetExceeded("minimum-distance scan exceeded the budget");
        scan_opts.budget = opts.budget - res.work;
        detail::ScanOutcome out = detail::run_scan(spec, scan_opts);
        res.work += out.nodes;
        if (out.found) {
            res.distance = static_cast<int>(out.witness.size());
            res.support = out.witness;
            return res;
        }
    }
    throw std::logic_error("no dependent column subset found despite positive code dimension");
}

CheckMatrix ternary_golay_check_matrix() {
    // Self-dual [12,6,6]_3 code: H = [I_6 | B], B the bordered circulant
    // with first row (0,1,1,1,1,1) and circulant core (0,1,2,2,1).
    static const std::uint8_t b[6][6] = {
        {0, 1, 1, 1, 1, 1},
        {1, 0, 1, 2, 2, 1},
        {1, 1, 0, 1, 2, 2},
        {1, 2, 1, 0, 1, 2},
        {1, 2, 2, 1, 0, 1},
        {1, 1, 2, 2, 1, 0},
    };
    CheckMatrix m;
    m.q = 3;
    m.rows = 6;
    m.cols = 12;
    m.data.assign(72, 0);
    for (int i = 0; i < 6; ++i) {
        m.at(i, i) = 1;
        for (int j = 0; j < 6; ++j) m.at(i, 6 + j) = b[i][j];
    }
    return m;
}

}  // namespace evgeom
