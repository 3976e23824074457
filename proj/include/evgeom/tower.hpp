#pragma once

// Coordinate bookkeeping between an ambient field GF(p^m), its subfield
// GF(q) with q = p^e, and GF(q)-subspaces of the ambient field. This is
// what turns extension-field parametrizations into intrinsic GF(q)
// coordinate vectors.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "evgeom/field.hpp"
#include "evgeom/gf.hpp"

namespace evgeom {

// Identifies the copy of GF(q) inside the ambient field with the
// canonical small-field model: the embedding sends the small structural
// root to the packed-smallest root of the small modulus in the ambient
// field, which pins the isomorphism deterministically.
class SubfieldEmbedding {
public:
    SubfieldEmbedding(const FieldContext& ambient, const Gf& gf);

    const FieldContext& ambient() const { return *ambient_; }
    const Gf& gf() const { return *gf_; }

    FieldElement embed(std::uint8_t small_index) const;
    // Inverse; throws if x is not in the embedded subfield.
    std::uint8_t to_small(const FieldElement& x) const;
    bool in_subfield_image(const FieldElement& x) const;

private:
    const FieldContext* ambient_;
    const Gf* gf_;
    std::vector<u64> small_to_big_;
    std::unordered_map<u64, std::uint8_t> big_to_small_;
};

// Solves x = sum_i lambda_i b_i with lambda_i in GF(q), for a fixed
// GF(q)-independent list (b_1, ..., b_k) of ambient elements. Used both
// for power-basis expansion of subfields and for coordinates within
// GF(q)-subspaces such as quadric models.
class FqSolver {
public:
    FqSolver(const SubfieldEmbedding& emb, std::vector<FieldElement> basis);

    std::size_t dim() const { return basis_.size(); }

    // GF(q) coordinates of x; throws std::domain_error if x is outside
    // the span.
    std::vector<std::uint8_t> coords(const FieldElement& x) const;
    bool in_span(const FieldElement& x) const;
    FieldElement compose(const std::vector<std::uint8_t>& lambda) const;

private:
    const SubfieldEmbedding* emb_;
    std::vector<FieldElement> basis_;
    // Row-reduction transform over GF(p): transform_ * A is in reduced
    // row echelon form, where A's columns are the GF(p)-coordinate
    // vectors of b_i * R^u.
    std::vector<std::uint32_t> transform_;  // m x m, row-major
    std::vector<int> pivot_rows_;           // k*e entries; solution c_j = y[pivot_rows_[j]]
    std::uint32_t m_ = 0;
};

// Expansion of the subfield GF(q^d) over GF(q) with respect to the power
// basis {1, g, ..., g^{d-1}} of the canonical primitive element
// g = omega^((p^m-1)/(q^d-1)) of that subfield.
class PowerBasisExpansion {
public:
    PowerBasisExpansion(const SubfieldEmbedding& emb, std::uint32_t d);

    std::uint32_t d() const { return d_; }
    // d GF(q) coordinates; throws if x is not in GF(q^d).
    std::vector<std::uint8_t> expand(const FieldElement& x) const;
    FieldElement compose(const std::vector<std::uint8_t>& coords) const;

private:
    std::uint32_t d_;
    FqSolver solver_;
};

}  // namespace evgeom
