#include "evgeom/constructions.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace evgeom {

namespace {

std::string make_label(const char* family, std::uint32_t q) {
    std::ostringstream os;
    os << family << "(q=" << q << ")";
    return os.str();
}

void split_q(std::uint32_t q, std::uint32_t& p, std::uint32_t& e) {
    if (!split_prime_power(q, p, e)) throw std::invalid_argument("q must be a prime power");
}

void append(std::vector<std::uint8_t>& v, const std::vector<std::uint8_t>& tail) {
    v.insert(v.end(), tail.begin(), tail.end());
}

void check_distinct(const PointSet& set) {
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& pt : set.points) {
        if (!seen.insert(pt.coords).second)
            throw std::logic_error("constructed point set contains duplicates: " + set.label);
    }
}

// Multiplication by `mult` restricted to the GF(q)-space spanned by the
// expansion basis, as a d x d matrix over GF(q).
GfMatrix multiplication_block(const PowerBasisExpansion& ex, const FieldElement& mult) {
    const int d = static_cast<int>(ex.d());
    GfMatrix m;
    m.rows = m.cols = d;
    m.data.assign((std::size_t)d * d, 0);
    for (int j = 0; j < d; ++j) {
        std::vector<std::uint8_t> unit(d, 0);
        unit[j] = 1;
        auto col = ex.expand(mult * ex.compose(unit));
        for (int i = 0; i < d; ++i) m.at(i, j) = col[i];
    }
    return m;
}

void check_generator_order(const FieldElement& c, u64 d) {
    if (c.pow(d) != c.ctx().one()) throw std::logic_error("group generator order mismatch");
    for (u64 ell : prime_factors(d)) {
        if (c.pow(d / ell) == c.ctx().one()) throw std::logic_error("group generator order mismatch");
    }
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::ovoid7: return "ovoid7";
        case Family::cubic: return "cubic";
        case Family::hyp6: return "hyp6";
        case Family::aff5: return "aff5";
        case Family::proj5: return "proj5";
        case Family::pg13: return "pg13";
    }
    return "?";
}

bool parse_family(const std::string& s, Family& out) {
    for (Family f : {Family::ovoid7, Family::cubic, Family::hyp6, Family::aff5, Family::proj5, Family::pg13}) {
        if (s == family_name(f)) {
            out = f;
            return true;
        }
    }
    return false;
}

FieldElement tensor_form_eval(const std::vector<FieldElement>& u, const std::vector<FieldElement>& v) {
    if (u.size() != 8 || v.size() != 8) throw std::invalid_argument("tensor form expects 8-tuples");
    const FieldContext& ctx = u[0].ctx();
    // The triple tensor of [[0,1],[-1,0]] pairs slot s with slot 7-s and
    // carries sign (-1)^popcount(s).
    FieldElement acc = ctx.zero();
    for (int s = 0; s < 8; ++s) {
        FieldElement term = u[s] * v[7 - s];
        if (__builtin_popcount(s) & 1)
            acc = acc - term;
        else
            acc = acc + term;
    }
    return acc;
}

OvoidModel::OvoidModel(std::uint32_t q, std::uint32_t modulus_index) : q_(q) {
    std::uint32_t p, e;
    split_q(q, p, e);
    ctx_ = &make_context(p, 3 * e, modulus_index);
    const Gf& gf = Gf::of(q);
    emb_ = std::make_shared<SubfieldEmbedding>(*ctx_, gf);
    cubic_expand_ = std::make_shared<PowerBasisExpansion>(*emb_, 3);

    set_.q = q;
    set_.ambient_dim = 7;
    set_.label = make_label("ovoid7", q);
    const u64 qq = q;
    for (u64 tp = 0; tp < ctx_->size(); ++tp) {
        FieldElement t = ctx_->element(tp);
        FieldElement b = t;
        FieldElement c = t.pow(qq * qq + qq);
        FieldElement d = t.pow(qq * qq + qq + 1);
        std::vector<std::uint8_t> v;
        v.reserve(8);
        v.push_back(1);
        append(v, cubic_expand_->expand(b));
        append(v, cubic_expand_->expand(c));
        v.push_back(emb_->to_small(d));
        set_.points.push_back(ProjectivePoint{std::move(v)});
        params_.push_back(LineParam::finite(t));
    }
    std::vector<std::uint8_t> inf(8, 0);
    inf[7] = 1;
    set_.points.push_back(ProjectivePoint{std::move(inf)});
    params_.push_back(LineParam::infinity(*ctx_));
    check_distinct(set_);

    // Gram matrix of the tensor form on the intrinsic basis.
    auto tuple_of = [&](const FieldElement& a, const FieldElement& b, const FieldElement& c,
                        const FieldElement& d) {
        std::vector<FieldElement> t{a,
                                    frobenius(b, 2, q),
                                    frobenius(b, 1, q),
                                    c,
                                    b,
                                    frobenius(c, 1, q),
                                    frobenius(c, 2, q),
                                    d};
        return t;
    };
    std::vector<std::vector<FieldElement>> basis_tuples;
    const FieldElement zero = ctx_->zero(), one = ctx_->one();
    basis_tuples.push_back(tuple_of(one, zero, zero, zero));
    for (int j = 0; j < 3; ++j) {
        std::vector<std::uint8_t> unit(3, 0);
        unit[j] = 1;
        basis_tuples.push_back(tuple_of(zero, cubic_expand_->compose(unit), zero, zero));
    }
    for (int j = 0; j < 3; ++j) {
        std::vector<std::uint8_t> unit(3, 0);
        unit[j] = 1;
        basis_tuples.push_back(tuple_of(zero, zero, cubic_expand_->compose(unit), zero));
    }
    basis_tuples.push_back(tuple_of(zero, zero, zero, one));
    form_.q = q;
    form_.gram.rows = form_.gram.cols = 8;
    form_.gram.data.assign(64, 0);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            FieldElement val = tensor_form_eval(basis_tuples[i], basis_tuples[j]);
            form_.gram.at(i, j) = emb_->to_small(val);  // throws if not in GF(q)
        }
    }
    if (!form_.is_alternating(gf)) throw std::logic_error("tensor form is not alternating on the intrinsic basis");
}

std::vector<FieldElement> OvoidModel::ambient_tuple(const ProjectivePoint& pt) const {
    std::vector<std::uint8_t> bpart(pt.coords.begin() + 1, pt.coords.begin() + 4);
    std::vector<std::uint8_t> cpart(pt.coords.begin() + 4, pt.coords.begin() + 7);
    FieldElement a = emb_->embed(pt.coords[0]);
    FieldElement b = cubic_expand_->compose(bpart);
    FieldElement c = cubic_expand_->compose(cpart);
    FieldElement d = emb_->embed(pt.coords[7]);
    return {a, frobenius(b, 2, q_), frobenius(b, 1, q_), c, b, frobenius(c, 1, q_), frobenius(c, 2, q_), d};
}

PointSet desarguesian_ovoid(std::uint32_t q, std::uint32_t modulus_index) {
    return OvoidModel(q, modulus_index).set();
}

PointSet canonical_cubic(std::uint32_t q, std::uint32_t modulus_index) {
    std::uint32_t p, e;
    split_q(q, p, e);
    const FieldContext& ctx = make_context(p, 3 * e, modulus_index);
    const Gf& gf = Gf::of(q);
    SubfieldEmbedding emb(ctx, gf);
    PowerBasisExpansion ex3(emb, 3);

    PointSet out;
    out.q = q;
    out.ambient_dim = 7;
    out.label = make_label("cubic", q);
    for (std::uint32_t s = 0; s < q; ++s) {
        FieldElement t = emb.embed(static_cast<std::uint8_t>(s));
        std::vector<std::uint8_t> v;
        v.reserve(8);
        v.push_back(1);
        append(v, ex3.expand(t));
        append(v, ex3.expand(t * t));
        v.push_back(emb.to_small(t * t * t));
        out.points.push_back(ProjectivePoint{std::move(v)});
    }
    std::vector<std::uint8_t> inf(8, 0);
    inf[7] = 1;
    out.points.push_back(ProjectivePoint{std::move(inf)});
    check_distinct(out);
    return out;
}

u64 cubic_orbit_count(std::uint32_t q) {
    const u64 qq = q;
    return qq * qq * (qq * qq * qq * qq + qq * qq + 1);
}

namespace {

struct SectionTower {
    const FieldContext* ctx;
    std::shared_ptr<SubfieldEmbedding> emb;
    std::shared_ptr<PowerBasisExpansion> ex6;

    SectionTower(std::uint32_t q, std::uint32_t modulus_index) {
        std::uint32_t p, e;
        split_q(q, p, e);
        ctx = &make_context(p, 6 * e, modulus_index);
        emb = std::make_shared<SubfieldEmbedding>(*ctx, Gf::of(q));
        ex6 = std::make_shared<PowerBasisExpansion>(*emb, 6);
    }
};

}  // namespace

PointSet hyperplane_section(std::uint32_t q, std::uint32_t modulus_index) {
    SectionTower tw(q, modulus_index);
    const u64 qq = q;
    const u64 d = qq * qq - qq + 1;

    PointSet out;
    out.q = q;
    out.ambient_dim = 6;
    out.label = make_label("hyp6", q);
    for (const auto& t : subgroup(*tw.ctx, d)) {
        std::vector<std::uint8_t> v;
        v.reserve(7);
        v.push_back(1);
        append(v, tw.ex6->expand(t));
        out.points.push_back(ProjectivePoint{std::move(v)});
    }
    check_distinct(out);

    // Cyclic group of order q^2-q+1 acting as b -> c b on the extension
    // part; c = omega^((q+1)(q^2+q+1)(q-q^4)) with the exponent taken
    // modulo q^6-1.
    const u64 ord = tw.ctx->order();
    u64 epos = mulmod(mulmod((qq + 1) % ord, (qq * qq + qq + 1) % ord, ord), (qq * qq * qq * qq - qq) % ord, ord);
    FieldElement c = tw.ctx->generator().pow((ord - epos) % ord);
    check_generator_order(c, d);
    GfMatrix m;
    m.rows = m.cols = 7;
    m.data.assign(49, 0);
    m.at(0, 0) = 1;
    GfMatrix block = multiplication_block(*tw.ex6, c);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m.at(1 + i, 1 + j) = block.at(i, j);
    out.group_generators.push_back(std::move(m));
    return out;
}

PointSet projected_set(std::uint32_t q, std::uint32_t modulus_index) {
    SectionTower tw(q, modulus_index);
    const u64 qq = q;
    const Gf& gf = Gf::of(q);

    PointSet out;
    out.q = q;
    out.ambient_dim = 5;
    out.label = make_label("aff5", q);
    const FieldElement one = tw.ctx->one();
    for (const auto& t : subgroup(*tw.ctx, qq * qq - qq + 1)) {
        if (t == one) continue;
        out.points.push_back(normalize(gf, tw.ex6->expand(t - one)));
    }
    check_distinct(out);
    return out;
}

PointSet extended_projected_set(std::uint32_t q, std::uint32_t modulus_index) {
    SectionTower tw(q, modulus_index);
    const Gf& gf = Gf::of(q);
    PointSet out = projected_set(q, modulus_index);
    out.label = make_label("proj5", q);

    // Kernel of F(X) = X^{q^2} - X^q + X as a GF(q)-linear map.
    GfMatrix fm;
    fm.rows = fm.cols = 6;
    fm.data.assign(36, 0);
    for (int j = 0; j < 6; ++j) {
        std::vector<std::uint8_t> unit(6, 0);
        unit[j] = 1;
        FieldElement x = tw.ex6->compose(unit);
        FieldElement fx = frobenius(x, 2, q) - frobenius(x, 1, q) + x;
        auto col = tw.ex6->expand(fx);
        for (int i = 0; i < 6; ++i) fm.at(i, j) = col[i];
    }
    auto kernel = kernel_basis(gf, fm);
    if (kernel.size() != 2) throw std::logic_error("ker(X^{q^2}-X^q+X) does not have GF(q)-dimension 2");
    for (auto& kv : kernel) {
        ProjectivePoint pt = normalize(gf, kv);
        for (const auto& existing : out.points) {
            if (existing == pt) throw std::logic_error("kernel point already lies in the projected set");
        }
        out.points.push_back(std::move(pt));
    }
    return out;
}

PointSet pg13_set(std::uint32_t q, std::uint32_t modulus_index) {
    SectionTower tw(q, modulus_index);
    const Gf& gf = Gf::of(q);
    PowerBasisExpansion ex2(*tw.emb, 2);
    const u64 qq = q;
    const u64 e1 = qq * qq * qq * qq + qq * qq + 1;
    const u64 e2 = qq * qq * qq + qq + 1;
    const u64 e3 = qq * qq * qq * qq + qq + 1;

    PointSet out;
    out.q = q;
    out.ambient_dim = 13;
    out.label = make_label("pg13", q);
    std::set<std::vector<std::uint8_t>> seen;
    FieldElement x = tw.ctx->one();
    const FieldElement omega = tw.ctx->generator();
    for (u64 i = 0; i < tw.ctx->order(); ++i) {
        std::vector<std::uint8_t> v;
        v.reserve(14);
        append(v, ex2.expand(x.pow(e1)));
        append(v, tw.ex6->expand(x.pow(e2)));
        append(v, tw.ex6->expand(x.pow(e3)));
        ProjectivePoint pt = normalize(gf, std::move(v));
        if (seen.insert(pt.coords).second) out.points.push_back(std::move(pt));
        x = x * omega;
    }
    if (out.points.size() != tw.ctx->order() / (qq - 1))
        throw std::logic_error("orbit size differs from (q^6-1)/(q-1)");

    GfMatrix m;
    m.rows = m.cols = 14;
    m.data.assign(196, 0);
    GfMatrix a2 = multiplication_block(ex2, omega.pow(e1));
    GfMatrix b6 = multiplication_block(*tw.ex6, omega.pow(e2));
    GfMatrix c6 = multiplication_block(*tw.ex6, omega.pow(e3));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = a2.at(i, j);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m.at(2 + i, 2 + j) = b6.at(i, j);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m.at(8 + i, 8 + j) = c6.at(i, j);
    out.group_generators.push_back(std::move(m));
    return out;
}

QuotientQuadric quotient_quadric(std::uint32_t q, std::uint32_t modulus_index) {
    SectionTower tw(q, modulus_index);
    const Gf& gf = Gf::of(q);
    const u64 qq = q;

    // W = ker(z + z^q - z^{q^3} - z^{q^4}), a 4-dimensional GF(q)-space.
    GfMatrix lm;
    lm.rows = lm.cols = 6;
    lm.data.assign(36, 0);
    for (int j = 0; j < 6; ++j) {
        std::vector<std::uint8_t> unit(6, 0);
        unit[j] = 1;
        FieldElement z = tw.ex6->compose(unit);
        FieldElement img = z + frobenius(z, 1, q) - frobenius(z, 3, q) - frobenius(z, 4, q);
        auto col = tw.ex6->expand(img);
        for (int i = 0; i < 6; ++i) lm.at(i, j) = col[i];
    }
    auto wker = kernel_basis(gf, lm);
    if (wker.size() != 4) throw std::logic_error("quadric carrier space W does not have dimension 4");
    std::vector<FieldElement> wbasis;
    for (const auto& kv : wker) wbasis.push_back(tw.ex6->compose(kv));
    FqSolver wsolver(*tw.emb, wbasis);

    auto phi = [&](const FieldElement& z) {
        FieldElement zq = frobenius(z, 1, q);
        FieldElement zq2 = frobenius(z, 2, q);
        FieldElement zq3 = frobenius(z, 3, q);
        return zq2 * z + zq2 * zq + zq * zq3;
    };

    QuotientQuadric out;
    out.quadric.q = out.conic_section.q = q;
    out.quadric.ambient_dim = out.conic_section.ambient_dim = 3;
    out.quadric.label = make_label("quadric", q);
    out.conic_section.label = make_label("quadric-conic", q);
    for_each_projective_point(3, q, [&](const std::vector<std::uint8_t>& lambda) {
        std::vector<std::uint8_t> l(lambda);
        FieldElement z = wsolver.compose(l);
        if (!phi(z).is_zero()) return;
        out.quadric.points.push_back(ProjectivePoint{l});
        if (frobenius(z, 3, q) == z) out.conic_section.points.push_back(ProjectivePoint{l});
    });

    const FieldElement one = tw.ctx->one();
    for (const auto& b : subgroup(*tw.ctx, qq * qq - qq + 1)) {
        if (b == one) continue;
        FieldElement x = b - one;
        FieldElement z = frobenius(x, 2, q) - frobenius(x, 1, q) + x;
        if (z.is_zero()) throw std::logic_error("projected point fell into the projection vertex");
        out.projected.push_back(normalize(gf, wsolver.coords(z)));
    }
    return out;
}

BuildResult construct(const ConstructionSpec& spec) {
    BuildResult r;
    switch (spec.family) {
        case Family::ovoid7: r.set = desarguesian_ovoid(spec.q, spec.modulus_index); break;
        case Family::cubic: r.set = canonical_cubic(spec.q, spec.modulus_index); break;
        case Family::hyp6: r.set = hyperplane_section(spec.q, spec.modulus_index); break;
        case Family::aff5: r.set = projected_set(spec.q, spec.modulus_index); break;
        case Family::proj5: r.set = extended_projected_set(spec.q, spec.modulus_index); break;
        case Family::pg13: r.set = pg13_set(spec.q, spec.modulus_index); break;
    }
    if (!spec.with_group) r.set.group_generators.clear();
    if (spec.q < 4 &&
        (spec.family == Family::hyp6 || spec.family == Family::aff5 || spec.family == Family::proj5)) {
        r.warnings.push_back("the general-position guarantees for this family assume q >= 4");
    }
    return r;
}

}  // namespace evgeom
