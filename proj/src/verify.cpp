#include "evgeom/verify.hpp"

#include "subset_scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace evgeom {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(const char* name, std::initializer_list<std::pair<const char*, long long>> args) {
    std::ostringstream os;
    os << name << '(';
    bool first = true;
    for (const auto& [k, v] : args) {
        if (!first) os << ',';
        os << k << '=' << v;
        first = false;
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------
// Group plumbing.
// ---------------------------------------------------------------------

struct OrbitResult {
    bool closed = true;            // generators keep the orbit inside X
    std::vector<char> in_orbit;    // per point of X
    std::size_t orbit_size = 0;
    ProjectivePoint escaped;       // set when !closed
    u64 work = 0;
};

OrbitResult orbit_of_first_point(const PointSet& set) {
    OrbitResult res;
    const Gf& gf = set.gf();
    std::map<std::vector<std::uint8_t>, int> index;
    for (std::size_t i = 0; i < set.points.size(); ++i) index.emplace(set.points[i].coords, (int)i);
    res.in_orbit.assign(set.points.size(), 0);
    std::vector<int> queue{0};
    res.in_orbit[0] = 1;
    res.orbit_size = 1;
    while (!queue.empty()) {
        int cur = queue.back();
        queue.pop_back();
        for (const auto& g : set.group_generators) {
            ++res.work;
            ProjectivePoint img = normalize(gf, apply(gf, g, set.points[cur].coords));
            auto it = index.find(img.coords);
            if (it == index.end()) {
                res.closed = false;
                res.escaped = img;
                return res;
            }
            if (!res.in_orbit[it->second]) {
                res.in_orbit[it->second] = 1;
                ++res.orbit_size;
                queue.push_back(it->second);
            }
        }
    }
    return res;
}

bool transitive_group_attached(const PointSet& set, u64& extra_work) {
    if (set.group_generators.empty()) return false;
    OrbitResult orb = orbit_of_first_point(set);
    extra_work += orb.work;
    return orb.closed && orb.orbit_size == set.points.size();
}

std::vector<const std::uint8_t*> row_pointers(const PointSet& set, std::size_t skip_index, bool skip) {
    std::vector<const std::uint8_t*> rows;
    rows.reserve(set.points.size());
    for (std::size_t i = 0; i < set.points.size(); ++i) {
        if (set.points[i].ambient_dim() != set.ambient_dim)
            throw std::invalid_argument("point set contains mixed ambient dimensions");
        if (skip && i == skip_index) continue;
        rows.push_back(set.points[i].coords.data());
    }
    return rows;
}

std::vector<ProjectivePoint> witness_points(const PointSet& set, const std::vector<int>& candidate_indices,
                                            bool reduced) {
    std::vector<ProjectivePoint> out;
    if (reduced) out.push_back(set.points[0]);
    for (int c : candidate_indices) out.push_back(set.points[reduced ? c + 1 : c]);
    return out;
}

}  // namespace

const char* reduction_name(Reduction r) {
    switch (r) {
        case Reduction::none: return "none";
        case Reduction::fix_one_point: return "fix_one_point";
        case Reduction::fix_three_points: return "fix_three_points";
    }
    return "?";
}

GfMatrix matmul(const Gf& gf, const GfMatrix& a, const GfMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    GfMatrix c;
    c.rows = a.rows;
    c.cols = b.cols;
    c.data.assign((std::size_t)a.rows * b.cols, 0);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            std::uint8_t f = a.at(i, k);
            if (!f) continue;
            for (int j = 0; j < b.cols; ++j)
                c.at(i, j) = gf.add(c.at(i, j), gf.mul(f, b.at(k, j)));
        }
    }
    return c;
}

u64 projective_order(const Gf& gf, const GfMatrix& m, u64 cap) {
    auto is_scalar = [&](const GfMatrix& x) {
        std::uint8_t d = x.at(0, 0);
        if (d == 0) return false;
        for (int i = 0; i < x.rows; ++i) {
            for (int j = 0; j < x.cols; ++j) {
                if (x.at(i, j) != (i == j ? d : 0)) return false;
            }
        }
        return true;
    };
    GfMatrix acc = m;
    for (u64 k = 1; k <= cap; ++k) {
        if (is_scalar(acc)) return k;
        acc = matmul(gf, acc, m);
    }
    throw std::runtime_error("projective order exceeds the iteration cap");
}

VerificationReport is_k_general(const PointSet& set, int k, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    rep.check = fmt("k_general", {{"k", k}, {"n", set.ambient_dim}, {"q", set.q}});
    if (k < 2 || k > set.ambient_dim + 1)
        throw std::invalid_argument("k must satisfy 2 <= k <= n+1");

    bool reduced = opts.allow_reduction && transitive_group_attached(set, rep.work);
    rep.reduction = reduced ? Reduction::fix_one_point : Reduction::none;
    rep.work += set.size();  // input validation pass

    detail::ScanSpec spec;
    spec.gf = &set.gf();
    spec.width = set.ambient_dim + 1;
    spec.circuit_mode = true;
    spec.rows = row_pointers(set, 0, reduced);
    if (reduced) {
        spec.seeds.push_back(set.points[0].coords.data());
        spec.extra = k - 1;
    } else {
        spec.extra = k;
    }
    detail::ScanOutcome out = detail::run_scan(spec, opts);
    rep.work += out.nodes;
    rep.passed = !out.found;
    if (out.found) {
        rep.witness = witness_points(set, out.witness, reduced);
        rep.witness_role = "violation";
    }
    rep.counts["points"] = (std::int64_t)set.size();
    if (opts.census) rep.counts["dependent_subsets"] = (std::int64_t)out.hits;
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport is_rs_set(const PointSet& set, int r, int s, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    rep.check = fmt("rs_set", {{"r", r}, {"s", s}, {"n", set.ambient_dim}, {"q", set.q}});
    if (s < 1 || s >= set.ambient_dim || r < 1)
        throw std::invalid_argument("require 1 <= s < n and r >= 1");

    bool reduced = opts.allow_reduction && transitive_group_attached(set, rep.work);
    rep.reduction = reduced ? Reduction::fix_one_point : Reduction::none;
    const Gf& gf = set.gf();

    // (ii) spanning.
    bool cond_ii = rank(gf, set.points) == set.ambient_dim + 1;
    rep.work += set.size();

    // (i) no r+1 points with rank <= s+1.
    detail::ScanSpec spec;
    spec.gf = &gf;
    spec.width = set.ambient_dim + 1;
    spec.rows = row_pointers(set, 0, reduced);
    spec.cap = s + 1;
    if (reduced) {
        spec.seeds.push_back(set.points[0].coords.data());
        spec.extra = r;
    } else {
        spec.extra = r + 1;
    }
    detail::ScanOutcome cond_i_scan = detail::run_scan(spec, opts);
    rep.work += cond_i_scan.nodes;
    bool cond_i = !cond_i_scan.found;

    // (iii) some r+2 points with rank <= s+2.
    spec.cap = s + 2;
    spec.extra = reduced ? r + 1 : r + 2;
    detail::ScanOutcome cond_iii_scan = detail::run_scan(spec, opts);
    rep.work += cond_iii_scan.nodes;
    bool cond_iii = cond_iii_scan.found;

    rep.counts["cond_i"] = cond_i;
    rep.counts["cond_ii"] = cond_ii;
    rep.counts["cond_iii"] = cond_iii;
    if (opts.census) rep.counts["cond_i_violations"] = (std::int64_t)cond_i_scan.hits;
    rep.passed = cond_i && cond_ii && cond_iii;
    if (!cond_i) {
        rep.witness = witness_points(set, cond_i_scan.witness, reduced);
        rep.witness_role = "violation";
    } else if (cond_iii) {
        rep.witness = witness_points(set, cond_iii_scan.witness, reduced);
        rep.witness_role = "certificate";
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport hyperplane_spectrum(const PointSet& set, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    rep.check = fmt("hyperplane_spectrum", {{"n", set.ambient_dim}, {"q", set.q}});
    const Gf& gf = set.gf();
    u64 total = 1;
    for (int i = 0; i <= set.ambient_dim; ++i) total *= set.q;
    total = (total - 1) / (set.q - 1);
    if (total * set.size() > opts.budget)
        throw BudgetExceeded("hyperplane spectrum enumeration exceeds the budget");

    std::map<u64, u64> histogram;
    for_each_hyperplane(set.ambient_dim, set.q, [&](const std::vector<std::uint8_t>& cov) {
        u64 count = 0;
        for (const auto& p : set.points) {
            if (dot(gf, cov, p.coords) == 0) ++count;
        }
        ++histogram[count];
    });
    rep.work = total * set.size();
    for (const auto& [value, count] : histogram) rep.counts[std::to_string(value)] = (std::int64_t)count;
    rep.counts["hyperplanes"] = (std::int64_t)total;
    rep.passed = true;  // the histogram is data; callers assert on it
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport ovoid_perp_condition(const OvoidModel& model, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    rep.check = fmt("ovoid_perp_condition", {{"q", model.q()}});
    const Gf& gf = Gf::of(model.q());
    const PointSet& o = model.set();
    std::set<std::vector<std::uint8_t>> members;
    for (const auto& p : o.points) members.insert(p.coords);

    u64 total_points = 1;
    for (int i = 0; i <= 7; ++i) total_points *= model.q();
    total_points = (total_points - 1) / (model.q() - 1);
    if (total_points * o.size() > opts.budget)
        throw BudgetExceeded("perp-condition enumeration exceeds the budget");

    bool ok = true;
    ProjectivePoint bad;
    u64 scanned = 0;
    for_each_projective_point(7, model.q(), [&](const std::vector<std::uint8_t>& coords) {
        if (!ok) return;
        ++scanned;
        ProjectivePoint p{coords};
        u64 perp_count = 0;
        for (const auto& q : o.points) {
            if (model.form().eval(gf, p, q) == 0) ++perp_count;
        }
        bool in_set = members.count(coords) != 0;
        if ((perp_count == 1) != in_set) {
            ok = false;
            bad = p;
        }
    });
    rep.work = scanned * o.size();
    rep.counts["ambient_points"] = (std::int64_t)total_points;
    rep.passed = ok;
    if (!ok) {
        rep.witness = {bad};
        rep.witness_role = "violation";
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

namespace {

// Shared conclusion check: the five points currently in `ech` (rank <= 4)
// must cut the ovoid in exactly q+1 points.
u64 span_intersection_count(const Echelon& ech, const PointSet& ovoid) {
    u64 count = 0;
    for (const auto& p : ovoid.points) {
        if (ech.contains(p.coords.data())) ++count;
    }
    return count;
}

}  // namespace

VerificationReport solid_cubic_lemma(const OvoidModel& model, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    const std::uint32_t q = model.q();
    rep.check = fmt("solid_cubic_lemma", {{"q", q}});
    const Gf& gf = Gf::of(q);
    const PointSet& o = model.set();
    const auto& params = model.params();
    const int n = static_cast<int>(o.size());
    const FieldContext& ctx = model.ctx();
    const LineParam zero = LineParam::finite(ctx.zero());
    const LineParam one = LineParam::finite(ctx.one());
    const LineParam inf = LineParam::infinity(ctx);

    u64 cases = 0, hypothesis = 0, failures = 0;
    std::vector<ProjectivePoint> first_failure;

    auto check_conclusion = [&](const Echelon& ech, const std::vector<int>& idx) {
        ++hypothesis;
        bool on_subline = true;
        if (rep.reduction == Reduction::fix_three_points) {
            // Canonical triple 0, 1, infinity pinned: the other two
            // parameters must land in the base subline, i.e. in GF(q).
            for (std::size_t j = 3; j < idx.size(); ++j) {
                on_subline &= in_q_subline(zero, one, inf, params[idx[j]], q);
            }
        } else {
            // The subline through the first three parameters must carry
            // the remaining two.
            for (std::size_t j = 3; j < idx.size(); ++j) {
                on_subline &=
                    in_q_subline(params[idx[0]], params[idx[1]], params[idx[2]], params[idx[j]], q);
            }
        }
        u64 meet = span_intersection_count(ech, o);
        rep.work += o.size();
        if (!(on_subline && meet == q + 1)) {
            ++failures;
            if (first_failure.empty()) {
                for (int i : idx) first_failure.push_back(o.points[i]);
            }
        }
    };

    if (opts.allow_reduction) {
        rep.reduction = Reduction::fix_three_points;
        // Point indices: t=0 is 0, t=1 is 1, infinity is last.
        const int idx0 = 0, idx1 = 1, idxinf = n - 1;
        Echelon ech(gf, 8);
        ech.push(o.points[idx0].coords.data());
        ech.push(o.points[idx1].coords.data());
        ech.push(o.points[idxinf].coords.data());
        rep.work += 3;
        for (int i = 2; i < n - 1; ++i) {
            bool grew_i = ech.push(o.points[i].coords.data());
            ++rep.work;
            for (int j = i + 1; j < n - 1; ++j) {
                ++cases;
                bool grew_j = ech.push(o.points[j].coords.data());
                ++rep.work;
                if (ech.rank() <= 4) check_conclusion(ech, {idx0, idx1, idxinf, i, j});
                if (grew_j) ech.pop();
                if (rep.work > opts.budget) throw BudgetExceeded("solid cubic lemma exceeded the budget");
            }
            if (grew_i) ech.pop();
        }
    } else {
        rep.reduction = Reduction::none;
        std::vector<int> idx;
        Echelon ech(gf, 8);
        // Depth-first over all 5-subsets.
        auto rec = [&](auto&& self, int start) -> void {
            if (idx.size() == 5) {
                ++cases;
                if (ech.rank() <= 4) check_conclusion(ech, idx);
                return;
            }
            for (int i = start; i < n; ++i) {
                bool grew = ech.push(o.points[i].coords.data());
                ++rep.work;
                if (rep.work > opts.budget) throw BudgetExceeded("solid cubic lemma exceeded the budget");
                idx.push_back(i);
                self(self, i + 1);
                idx.pop_back();
                if (grew) ech.pop();
            }
        };
        rec(rec, 0);
    }

    rep.counts["cases"] = (std::int64_t)cases;
    rep.counts["hypothesis_cases"] = (std::int64_t)hypothesis;
    rep.counts["conclusion_failures"] = (std::int64_t)failures;
    rep.counts["asserted"] = q >= 4;
    rep.passed = q >= 4 ? failures == 0 : true;
    if (failures) {
        rep.witness = first_failure;
        rep.witness_role = "violation";
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport solid_cubic_lemma(std::uint32_t q, const VerifyOptions& opts) {
    OvoidModel model(q);
    return solid_cubic_lemma(model, opts);
}

VerificationReport seven_point_lemma(const OvoidModel& model, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    const std::uint32_t q = model.q();
    rep.check = fmt("seven_point_lemma", {{"q", q}});
    rep.reduction = Reduction::fix_three_points;
    const Gf& gf = Gf::of(q);
    const PointSet& o = model.set();
    const auto& params = model.params();
    const int n = static_cast<int>(o.size());

    u64 hypothesis = 0, failures = 0;
    std::vector<ProjectivePoint> first_failure;

    const int idx0 = 0, idx1 = 1, idxinf = n - 1;
    Echelon ech(gf, 8);
    ech.push(o.points[idx0].coords.data());
    ech.push(o.points[idx1].coords.data());
    ech.push(o.points[idxinf].coords.data());
    rep.work += 3;

    std::vector<int> chosen;
    auto handle_case = [&](void) {
        ++hypothesis;
        std::vector<int> seven{idx0, idx1, idxinf, chosen[0], chosen[1], chosen[2], chosen[3]};
        bool some_cubic = false;
        for (int a = 0; a < 7 && !some_cubic; ++a)
            for (int b = a + 1; b < 7 && !some_cubic; ++b)
                for (int c = b + 1; c < 7 && !some_cubic; ++c)
                    for (int d = c + 1; d < 7 && !some_cubic; ++d)
                        some_cubic = in_q_subline(params[seven[a]], params[seven[b]], params[seven[c]],
                                                  params[seven[d]], q);
        if (!some_cubic) {
            ++failures;
            if (first_failure.empty()) {
                for (int i : seven) first_failure.push_back(o.points[i]);
            }
        }
    };

    // 4-subsets of the finite non-canonical parameters; prune once the
    // seven points cannot sit in a 4-flat (rank > 5).
    auto rec = [&](auto&& self, int start) -> void {
        const int remaining = 4 - static_cast<int>(chosen.size());
        for (int i = start; i <= n - 1 - remaining; ++i) {
            bool grew = ech.push(o.points[i].coords.data());
            ++rep.work;
            if (rep.work > opts.budget) throw BudgetExceeded("seven point lemma exceeded the budget");
            chosen.push_back(i);
            if (ech.rank() <= 5) {
                if (chosen.size() == 4)
                    handle_case();
                else
                    self(self, i + 1);
            }
            chosen.pop_back();
            if (grew) ech.pop();
        }
    };
    rec(rec, 2);

    rep.counts["cases"] = (std::int64_t)binomial(n - 3, 4);
    rep.counts["hypothesis_cases"] = (std::int64_t)hypothesis;
    rep.counts["conclusion_failures"] = (std::int64_t)failures;
    rep.passed = failures == 0;
    if (failures) {
        rep.witness = first_failure;
        rep.witness_role = "violation";
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport seven_point_lemma(std::uint32_t q, const VerifyOptions& opts) {
    OvoidModel model(q);
    return seven_point_lemma(model, opts);
}

VerificationReport is_transitive(const PointSet& set, const VerifyOptions& opts) {
    (void)opts;
    auto start = Clock::now();
    VerificationReport rep;
    rep.check = fmt("transitive", {{"n", set.ambient_dim}, {"q", set.q}});
    if (set.group_generators.empty())
        throw std::invalid_argument("transitivity check requires attached group generators");
    OrbitResult orb = orbit_of_first_point(set);
    rep.work = orb.work;
    rep.counts["orbit"] = (std::int64_t)orb.orbit_size;
    rep.counts["points"] = (std::int64_t)set.size();
    rep.counts["generators"] = (std::int64_t)set.group_generators.size();
    if (set.group_generators.size() == 1) {
        u64 order = projective_order(set.gf(), set.group_generators[0]);
        rep.counts["generator_order"] = (std::int64_t)order;
        rep.work += order;
    }
    rep.passed = orb.closed && orb.orbit_size == set.size();
    if (!orb.closed) {
        rep.witness = {orb.escaped};
        rep.witness_role = "violation";
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport completeness_check(const PointSet& set, int r, int s, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    rep.check = fmt("complete", {{"r", r}, {"s", s}, {"n", set.ambient_dim}, {"q", set.q}});
    const Gf& gf = set.gf();

    u64 total_points = 1;
    for (int i = 0; i <= set.ambient_dim; ++i) total_points *= set.q;
    total_points = (total_points - 1) / (set.q - 1);
    rep.counts["ambient_points"] = (std::int64_t)total_points;

    std::set<std::vector<std::uint8_t>> members;
    for (const auto& p : set.points) members.insert(p.coords);

    VerifyOptions scan_opts = opts;
    scan_opts.threads = 1;
    scan_opts.census = false;

    std::vector<ProjectivePoint> extendable;
    detail::ScanSpec spec;
    spec.gf = &gf;
    spec.width = set.ambient_dim + 1;
    spec.rows = row_pointers(set, 0, false);
    spec.extra = r;
    spec.cap = s + 1;
    for_each_projective_point(set.ambient_dim, set.q, [&](const std::vector<std::uint8_t>& coords) {
        if (members.count(coords)) return;
        if (rep.work >= opts.budget) throw BudgetExceeded("completeness check exceeded the budget");
        detail::ScanSpec local = spec;
        local.seeds.push_back(coords.data());
        scan_opts.budget = opts.budget - rep.work;
        detail::ScanOutcome out = detail::run_scan(local, scan_opts);
        rep.work += out.nodes + 1;
        if (!out.found) extendable.push_back(ProjectivePoint{coords});
    });

    rep.counts["extendable"] = (std::int64_t)extendable.size();
    rep.passed = extendable.empty();
    rep.witness = std::move(extendable);
    if (!rep.witness.empty()) rep.witness_role = "extendable_points";
    rep.elapsed_ms = ms_since(start);
    return rep;
}

std::optional<Flat> find_disjoint_hyperplane(const PointSet& set, const VerifyOptions& opts) {
    const Gf& gf = set.gf();
    u64 total = 1;
    for (int i = 0; i <= set.ambient_dim; ++i) total *= set.q;
    total = (total - 1) / (set.q - 1);
    if (total * set.size() > opts.budget)
        throw BudgetExceeded("disjoint-hyperplane search exceeds the budget");
    std::optional<Flat> found;
    for_each_hyperplane(set.ambient_dim, set.q, [&](const std::vector<std::uint8_t>& cov) {
        if (found) return;
        for (const auto& p : set.points) {
            if (dot(gf, cov, p.coords) == 0) return;
        }
        found = hyperplane_flat(set.q, cov);
    });
    return found;
}

VerificationReport affine_check(const PointSet& set, const VerifyOptions& opts) {
    auto start = Clock::now();
    VerificationReport rep;
    rep.check = fmt("affine", {{"n", set.ambient_dim}, {"q", set.q}});
    std::optional<Flat> flat = find_disjoint_hyperplane(set, opts);
    u64 total = 1;
    for (int i = 0; i <= set.ambient_dim; ++i) total *= set.q;
    rep.counts["hyperplanes"] = (std::int64_t)((total - 1) / (set.q - 1));
    rep.work = rep.counts["hyperplanes"] * set.size();
    rep.passed = flat.has_value();
    if (flat) {
        rep.witness_role = "certificate";
        for (const auto& b : flat->basis) rep.witness.push_back(normalize(set.gf(), b));
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

}  // namespace evgeom
