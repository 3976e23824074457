#pragma once

// Exact unsigned integer helpers: primality, factorization, modular
// arithmetic and integer roots. Everything here is deterministic.

#include <cstdint>
#include <vector>

namespace evgeom {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// (a * b) mod m without overflow, m < 2^64.
inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128)a * b % m);
}

u64 powmod(u64 base, u64 exp, u64 mod);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(u64 n);

// Prime factorization by trial division + Pollard rho.
// Returns the distinct prime factors in increasing order.
std::vector<u64> prime_factors(u64 n);

// Multiplicative order of a modulo... not needed; order checks are done
// against the factored group order directly. See FieldContext.

// floor(sqrt(x)) for 128-bit x.
u64 isqrt(u128 x);

// floor(x^(1/k)), k >= 1.
u64 iroot(u128 x, unsigned k);

// C(n, k) without overflow checks beyond 64 bits; intended for the
// small subset counts reported by the verifier.
u64 binomial(u64 n, u64 k);

}  // namespace evgeom
