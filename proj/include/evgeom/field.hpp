#pragma once

// Exact arithmetic in GF(p^m) for p^m below 2^64, with subfield towers,
// Frobenius maps and multiplicative subgroup enumeration.
//
// Elements are stored packed: the coefficient vector (c_0, ..., c_{m-1})
// of the residue modulo the context modulus is encoded as the integer
// sum c_i * p^i. Two equal elements therefore always have the same
// representation, and the packed value doubles as a canonical index in
// [0, p^m). Contexts with at most 2^22 elements carry log/exp tables, so
// multiplication, inversion and powering are O(1) there.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "evgeom/intmath.hpp"

namespace evgeom {

class FieldElement;

class FieldContext {
public:
    // Builds GF(p^m) with an explicit monic modulus (ascending
    // coefficients, length m+1). Throws if the modulus is not
    // irreducible over GF(p). The generator is the packed-smallest
    // element of full multiplicative order.
    FieldContext(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;

    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    u64 size() const { return size_; }        // p^m
    u64 order() const { return size_ - 1; }   // |GF(p^m)^*|
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    const std::vector<u64>& order_prime_factors() const { return order_factors_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement generator() const;
    FieldElement element(u64 packed) const;            // packed < p^m
    FieldElement from_coeffs(const std::vector<std::uint32_t>& coeffs) const;

    // True iff k = p^e with e | m, i.e. GF(k) sits inside this field.
    bool is_subfield_size(u64 k) const;

    // Serialization header "p,m,c0,c1,...,cm".
    std::string header() const;

    bool has_log_tables() const { return !log_.empty(); }

private:
    friend class FieldElement;

    u64 add_packed(u64 a, u64 b) const;
    u64 sub_packed(u64 a, u64 b) const;
    u64 mul_packed(u64 a, u64 b) const;
    u64 inv_packed(u64 a) const;
    u64 pow_packed(u64 a, u64 e) const;
    u64 mul_generic(u64 a, u64 b) const;   // polynomial multiply + reduce
    u64 shift_reduce(u64 a) const;         // a * x mod modulus

    void unpack(u64 a, std::uint32_t* c) const;  // m coefficients
    u64 pack(const std::uint32_t* c) const;

    std::uint32_t p_ = 0, m_ = 0;
    std::vector<std::uint32_t> modulus_;
    u64 size_ = 0;
    u64 generator_ = 0;
    std::vector<u64> pow_p_;          // p^i, i <= m
    std::vector<u64> order_factors_;  // distinct primes of p^m - 1
    // log/exp tables for small contexts. exp_[i] = g^i, log_[x] for x != 0.
    std::vector<u64> exp_;
    std::vector<std::uint32_t> log_;
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldContext* ctx, u64 packed) : ctx_(ctx), rep_(packed) {}

    const FieldContext& ctx() const { return *ctx_; }
    u64 packed() const { return rep_; }
    bool is_zero() const { return rep_ == 0; }
    std::vector<std::uint32_t> coeffs() const;

    FieldElement operator+(const FieldElement& o) const { return make(ctx_->add_packed(rep_, o.rep_)); }
    FieldElement operator-(const FieldElement& o) const { return make(ctx_->sub_packed(rep_, o.rep_)); }
    FieldElement operator*(const FieldElement& o) const { return make(ctx_->mul_packed(rep_, o.rep_)); }
    FieldElement operator/(const FieldElement& o) const { return make(ctx_->mul_packed(rep_, ctx_->inv_packed(o.rep_))); }
    FieldElement operator-() const { return make(ctx_->sub_packed(0, rep_)); }
    bool operator==(const FieldElement& o) const { return ctx_ == o.ctx_ && rep_ == o.rep_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement inverse() const { return make(ctx_->inv_packed(rep_)); }
    FieldElement pow(u64 e) const { return make(ctx_->pow_packed(rep_, e)); }

private:
    FieldElement make(u64 r) const { return FieldElement(ctx_, r); }
    const FieldContext* ctx_ = nullptr;
    u64 rep_ = 0;
};

// Deterministic context registry. modulus_index = 0 gives the canonical
// modulus (the packed-smallest irreducible monic polynomial of degree m);
// higher indices walk the same search order, which is how the
// representation-independence tests obtain an alternative model of the
// same field. Returned references stay valid for the process lifetime.
const FieldContext& make_context(std::uint32_t p, std::uint32_t m, std::uint32_t modulus_index = 0);

// x^(q^k) where q = p^e, e | m. Additive and GF(q)-linear.
FieldElement frobenius(const FieldElement& x, std::uint32_t k, u64 q);

// True iff x lies in the subfield of size k, i.e. x^k == x.
bool in_subfield(const FieldElement& x, u64 k);

// The d elements of the order-d multiplicative subgroup; d | p^m - 1.
std::vector<FieldElement> subgroup(const FieldContext& ctx, u64 d);

// "c0,c1,...,c{m-1}" ascending-degree coefficients.
std::string to_string(const FieldElement& x);
FieldElement parse_element(const FieldContext& ctx, const std::string& s);

}  // namespace evgeom
