#include "evgeom/tower.hpp"

#include <stdexcept>

namespace evgeom {

SubfieldEmbedding::SubfieldEmbedding(const FieldContext& ambient, const Gf& gf)
    : ambient_(&ambient), gf_(&gf) {
    const u64 q = gf.q();
    if (!ambient.is_subfield_size(q))
        throw std::invalid_argument("GF(q) is not a subfield of the ambient field");

    // Roots of the small modulus among the q subfield elements; the
    // packed-smallest root fixes the embedding.
    const auto& mod = gf.ctx().modulus();
    std::vector<FieldElement> candidates;
    candidates.push_back(ambient.zero());
    for (const auto& t : subgroup(ambient, q - 1)) candidates.push_back(t);
    u64 best = ~0ull;
    for (const auto& z : candidates) {
        FieldElement acc = ambient.zero();
        FieldElement pw = ambient.one();
        for (std::size_t i = 0; i < mod.size(); ++i) {
            if (mod[i] != 0) {
                FieldElement coeff = ambient.one();
                for (std::uint32_t rep = 1; rep < mod[i]; ++rep) coeff = coeff + ambient.one();
                acc = acc + coeff * pw;
            }
            pw = pw * z;
        }
        if (acc.is_zero() && z.packed() < best) best = z.packed();
    }
    if (best == ~0ull) throw std::logic_error("small modulus has no root in the ambient field");
    FieldElement root = ambient.element(best);

    small_to_big_.resize(q);
    const std::uint32_t p = gf.p(), e = gf.e();
    for (u64 s = 0; s < q; ++s) {
        FieldElement acc = ambient.zero();
        FieldElement pw = ambient.one();
        u64 digits = s;
        for (std::uint32_t i = 0; i < e; ++i) {
            std::uint32_t d = static_cast<std::uint32_t>(digits % p);
            digits /= p;
            if (d != 0) {
                FieldElement coeff = ambient.zero();
                for (std::uint32_t rep = 0; rep < d; ++rep) coeff = coeff + ambient.one();
                acc = acc + coeff * pw;
            }
            pw = pw * root;
        }
        small_to_big_[s] = acc.packed();
        big_to_small_[acc.packed()] = static_cast<std::uint8_t>(s);
    }
}

FieldElement SubfieldEmbedding::embed(std::uint8_t small_index) const {
    return ambient_->element(small_to_big_[small_index]);
}

std::uint8_t SubfieldEmbedding::to_small(const FieldElement& x) const {
    auto it = big_to_small_.find(x.packed());
    if (it == big_to_small_.end()) throw std::domain_error("element is not in the embedded GF(q)");
    return it->second;
}

bool SubfieldEmbedding::in_subfield_image(const FieldElement& x) const {
    return big_to_small_.count(x.packed()) != 0;
}

FqSolver::FqSolver(const SubfieldEmbedding& emb, std::vector<FieldElement> basis)
    : emb_(&emb), basis_(std::move(basis)) {
    const FieldContext& ambient = emb.ambient();
    const std::uint32_t p = ambient.p();
    m_ = ambient.m();
    const std::uint32_t e = emb.gf().e();
    const std::size_t k = basis_.size() * e;
    if (k > m_) throw std::invalid_argument("basis larger than the ambient GF(p)-dimension");

    // Columns of A: GF(p) digits of b_i * R^u, ordered i-major. R is the
    // image of the small structural root, whose packed small index is p.
    std::vector<std::vector<std::uint32_t>> cols;
    cols.reserve(k);
    for (const auto& b : basis_) {
        FieldElement cur = b;
        for (std::uint32_t u = 0; u < e; ++u) {
            cols.push_back(cur.coeffs());
            if (u + 1 < e) cur = cur * emb.embed(static_cast<std::uint8_t>(p));
        }
    }

    // Row reduce [A | I] over GF(p).
    const std::size_t width = k + m_;
    std::vector<std::uint32_t> w(m_ * width, 0);
    for (std::uint32_t r = 0; r < m_; ++r) {
        for (std::size_t c = 0; c < k; ++c) w[r * width + c] = cols[c][r];
        w[r * width + k + r] = 1;
    }
    auto modinv = [p](std::uint32_t a) { return static_cast<std::uint32_t>(powmod(a, p - 2, p)); };
    std::uint32_t rank = 0;
    pivot_rows_.assign(k, -1);
    for (std::size_t c = 0; c < k && rank < m_; ++c) {
        std::uint32_t sel = m_;
        for (std::uint32_t r = rank; r < m_; ++r) {
            if (w[r * width + c] != 0) { sel = r; break; }
        }
        if (sel == m_) throw std::invalid_argument("basis elements are GF(q)-dependent");
        if (sel != rank) {
            for (std::size_t j = 0; j < width; ++j) std::swap(w[sel * width + j], w[rank * width + j]);
        }
        std::uint32_t inv = modinv(w[rank * width + c]);
        for (std::size_t j = 0; j < width; ++j)
            w[rank * width + j] = static_cast<std::uint32_t>((u64)w[rank * width + j] * inv % p);
        for (std::uint32_t r = 0; r < m_; ++r) {
            if (r == rank) continue;
            std::uint32_t f = w[r * width + c];
            if (f) {
                for (std::size_t j = 0; j < width; ++j) {
                    u64 v = w[r * width + j] + (u64)(p - 1) * f % p * w[rank * width + j];
                    w[r * width + j] = static_cast<std::uint32_t>(v % p);
                }
            }
        }
        pivot_rows_[c] = static_cast<int>(rank);
        ++rank;
    }
    // With full column rank and RREF shape, solving A c = x amounts to
    // c_j = (E x)[pivot_rows_[j]] and (E x)[r] = 0 for the other rows.
    transform_.assign(m_ * m_, 0);
    for (std::uint32_t r = 0; r < m_; ++r) {
        for (std::uint32_t j = 0; j < m_; ++j) transform_[r * m_ + j] = w[r * width + k + j];
    }
}

std::vector<std::uint8_t> FqSolver::coords(const FieldElement& x) const {
    const std::uint32_t p = emb_->ambient().p();
    const std::uint32_t e = emb_->gf().e();
    auto digits = x.coeffs();
    std::vector<std::uint32_t> y(m_, 0);
    for (std::uint32_t r = 0; r < m_; ++r) {
        u64 acc = 0;
        for (std::uint32_t j = 0; j < m_; ++j) acc += (u64)transform_[r * m_ + j] * digits[j];
        y[r] = static_cast<std::uint32_t>(acc % p);
    }
    const std::size_t k = basis_.size() * e;
    std::vector<bool> used(m_, false);
    for (std::size_t c = 0; c < k; ++c) used[pivot_rows_[c]] = true;
    for (std::uint32_t r = 0; r < m_; ++r) {
        if (!used[r] && y[r] != 0) throw std::domain_error("element is outside the GF(q)-span of the basis");
    }
    std::vector<std::uint8_t> out(basis_.size(), 0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        u64 packed = 0;
        for (std::uint32_t u = e; u-- > 0;) packed = packed * p + y[pivot_rows_[i * e + u]];
        out[i] = static_cast<std::uint8_t>(packed);
    }
    return out;
}

bool FqSolver::in_span(const FieldElement& x) const {
    try {
        coords(x);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

FieldElement FqSolver::compose(const std::vector<std::uint8_t>& lambda) const {
    if (lambda.size() != basis_.size()) throw std::invalid_argument("coordinate count mismatch");
    FieldElement acc = emb_->ambient().zero();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (lambda[i] != 0) acc = acc + emb_->embed(lambda[i]) * basis_[i];
    }
    return acc;
}

PowerBasisExpansion::PowerBasisExpansion(const SubfieldEmbedding& emb, std::uint32_t d)
    : d_(d), solver_(emb, [&] {
          const FieldContext& ambient = emb.ambient();
          const u64 q = emb.gf().q();
          u64 qd = 1;
          for (std::uint32_t i = 0; i < d; ++i) qd *= q;
          if ((ambient.size() - 1) % (qd - 1) != 0)
              throw std::invalid_argument("GF(q^d) is not a subfield of the ambient field");
          FieldElement g = ambient.generator().pow((ambient.size() - 1) / (qd - 1));
          std::vector<FieldElement> basis;
          FieldElement cur = ambient.one();
          for (std::uint32_t j = 0; j < d; ++j) {
              basis.push_back(cur);
              cur = cur * g;
          }
          return basis;
      }()) {}

std::vector<std::uint8_t> PowerBasisExpansion::expand(const FieldElement& x) const {
    return solver_.coords(x);
}

FieldElement PowerBasisExpansion::compose(const std::vector<std::uint8_t>& coords) const {
    return solver_.compose(coords);
}

}  // namespace evgeom
