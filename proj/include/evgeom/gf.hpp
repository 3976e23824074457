#pragma once

// Table-driven arithmetic for the intrinsic coordinate field GF(q),
// q = p^e <= 256. A coordinate value is the canonical packed index of a
// field element (base-p digit vector), so for p = 2 addition is XOR of
// indices. The tables are built once per q from the canonical
// FieldContext and shared process-wide.

#include <cstdint>
#include <vector>

#include "evgeom/field.hpp"

namespace evgeom {

class Gf {
public:
    static constexpr std::uint32_t kMaxQ = 256;

    // Cached lookup; builds on first use. Throws for q that is not a
    // prime power or exceeds kMaxQ.
    static const Gf& of(std::uint32_t q);

    std::uint32_t q() const { return q_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    const FieldContext& ctx() const { return *ctx_; }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[(std::size_t)a * q_ + b]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add_[(std::size_t)a * q_ + neg_[b]]; }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[(std::size_t)a * q_ + b]; }
    std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
    std::uint8_t inv(std::uint8_t a) const;

    // row[i] += c * other[i] over width entries.
    void axpy(std::uint8_t* row, const std::uint8_t* other, std::uint8_t c, int width) const {
        if (c == 0) return;
        const std::uint8_t* mrow = &mul_[(std::size_t)c * q_];
        for (int i = 0; i < width; ++i) row[i] = add(row[i], mrow[other[i]]);
    }

private:
    explicit Gf(std::uint32_t q);

    std::uint32_t q_ = 0, p_ = 0, e_ = 0;
    const FieldContext* ctx_ = nullptr;
    std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

// Splits a prime power q into (p, e); returns false if q is not one.
bool split_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& e);

}  // namespace evgeom
