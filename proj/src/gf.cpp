#include "evgeom/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace evgeom {

bool split_prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& e) {
    if (q < 2) return false;
    std::uint32_t base = 2;
    while (base * base <= q) {
        if (q % base == 0) break;
        ++base;
    }
    if (base * base > q) {  // q itself is prime
        p = q;
        e = 1;
        return true;
    }
    p = base;
    e = 0;
    std::uint32_t v = q;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return v == 1;
}

Gf::Gf(std::uint32_t q) : q_(q) {
    if (!split_prime_power(q, p_, e_) || q > kMaxQ)
        throw std::invalid_argument("intrinsic field size must be a prime power <= 256");
    ctx_ = &make_context(p_, e_);
    add_.resize((std::size_t)q * q);
    mul_.resize((std::size_t)q * q);
    neg_.resize(q);
    inv_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
        FieldElement ea = ctx_->element(a);
        neg_[a] = static_cast<std::uint8_t>((-ea).packed());
        inv_[a] = a ? static_cast<std::uint8_t>(ea.inverse().packed()) : 0;
        for (std::uint32_t b = 0; b < q; ++b) {
            FieldElement eb = ctx_->element(b);
            add_[(std::size_t)a * q + b] = static_cast<std::uint8_t>((ea + eb).packed());
            mul_[(std::size_t)a * q + b] = static_cast<std::uint8_t>((ea * eb).packed());
        }
    }
}

std::uint8_t Gf::inv(std::uint8_t a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(q)");
    return inv_[a];
}

const Gf& Gf::of(std::uint32_t q) {
    static std::mutex mu;
    static std::map<std::uint32_t, std::unique_ptr<Gf>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) {
        it = cache.emplace(q, std::unique_ptr<Gf>(new Gf(q))).first;
    }
    return *it->second;
}

}  // namespace evgeom
