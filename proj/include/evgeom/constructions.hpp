#pragma once

// The point-set families: the Desarguesian partial ovoid of PG(7, q) and
// its canonical twisted cubic, the transitive hyperplane-section set in
// PG(6, q), its projection into PG(5, q) with the two-point extension,
// the orbit set in PG(13, q), and the quotient elliptic-quadric model.
// All sets are produced in intrinsic GF(q) coordinates.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "evgeom/geometry.hpp"
#include "evgeom/tower.hpp"

namespace evgeom {

enum class Family { ovoid7, cubic, hyp6, aff5, proj5, pg13 };

const char* family_name(Family f);
bool parse_family(const std::string& s, Family& out);

struct ConstructionSpec {
    Family family = Family::ovoid7;
    std::uint32_t q = 2;
    bool with_group = true;
    std::uint32_t modulus_index = 0;
};

struct BuildResult {
    PointSet set;
    std::vector<std::string> warnings;
};

BuildResult construct(const ConstructionSpec& spec);

// q^3 + 1 points of PG(7, q): the orbit {(1,t) x (1,t^q) x (1,t^{q^2})}
// plus the point at infinity, in intrinsic coordinates
// (a | b over GF(q^3) | c over GF(q^3) | d) of the defining 8-dimensional
// GF(q)-subspace of GF(q^3)^8.
PointSet desarguesian_ovoid(std::uint32_t q, std::uint32_t modulus_index = 0);

// The q+1 points {(1, t, t^2, t^3) : t in GF(q)} plus infinity; a twisted
// cubic inside the ovoid, parametrized by the canonical q-order subline.
PointSet canonical_cubic(std::uint32_t q, std::uint32_t modulus_index = 0);

// Number of twisted cubics contained in the ovoid: q^2 (q^4 + q^2 + 1).
u64 cubic_orbit_count(std::uint32_t q);

// q^2 - q + 1 points of PG(6, q): {u(1, t) : t^{q^2-q+1} = 1} in intrinsic
// coordinates (a | b over GF(q^6)); carries the order-(q^2-q+1) cyclic
// group generator as a 7x7 matrix.
PointSet hyperplane_section(std::uint32_t q, std::uint32_t modulus_index = 0);

// q^2 - q points of PG(5, q): {u(0, b-1) : b^{q^2-q+1} = 1, b != 1}, the
// projection of the hyperplane section from u(1,1).
PointSet projected_set(std::uint32_t q, std::uint32_t modulus_index = 0);

// The projected set plus two points of the line PG(V), V = ker(F),
// F(X) = X^{q^2} - X^q + X; size q^2 - q + 2.
PointSet extended_projected_set(std::uint32_t q, std::uint32_t modulus_index = 0);

// (q^6-1)/(q-1) points of PG(13, q), the cyclic orbit of v(1,1,1); the
// generator is attached as a 14x14 matrix.
PointSet pg13_set(std::uint32_t q, std::uint32_t modulus_index = 0);

struct QuotientQuadric {
    PointSet quadric;        // E in PG(3, q) coordinates over the kernel basis of W
    PointSet conic_section;  // E intersected with the GF(q^3)-plane
    // projected[i] is the image in PG(W) of the i-th point of
    // projected_set(q), i.e. the class of F(b-1).
    std::vector<ProjectivePoint> projected;
};

QuotientQuadric quotient_quadric(std::uint32_t q, std::uint32_t modulus_index = 0);

// Ovoid bundle with parameter bookkeeping and the symplectic form; this
// is what the twisted-cubic lemma checks run on.
class OvoidModel {
public:
    OvoidModel(std::uint32_t q, std::uint32_t modulus_index = 0);

    std::uint32_t q() const { return q_; }
    const FieldContext& ctx() const { return *ctx_; }
    const PointSet& set() const { return set_; }
    // params[i] is the PG(1, q^3) parameter of set().points[i]; the point
    // at infinity comes last.
    const std::vector<LineParam>& params() const { return params_; }
    const BilinearForm& form() const { return form_; }

    // Reconstructs the ambient GF(q^3)^8 vector of an intrinsic point.
    std::vector<FieldElement> ambient_tuple(const ProjectivePoint& p) const;

private:
    std::uint32_t q_;
    const FieldContext* ctx_;
    PointSet set_;
    std::vector<LineParam> params_;
    BilinearForm form_;
    std::shared_ptr<SubfieldEmbedding> emb_;
    std::shared_ptr<PowerBasisExpansion> cubic_expand_;  // GF(q^3) over GF(q)
};

// The triple tensor power of [[0,1],[-1,0]] evaluated on ambient
// 8-tuples; the Gram matrix of OvoidModel::form() is this form expressed
// on the intrinsic basis. Exposed for cross-checks.
FieldElement tensor_form_eval(const std::vector<FieldElement>& u, const std::vector<FieldElement>& v);

}  // namespace evgeom
