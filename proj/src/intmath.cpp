#include "evgeom/intmath.hpp"

#include <algorithm>
#include <numeric>

namespace evgeom {

u64 powmod(u64 base, u64 exp, u64 mod) {
    if (mod == 1) return 0;
    u64 r = 1;
    base %= mod;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // This witness set is deterministic for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    // Brent's variant with a deterministic sequence of offsets.
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// true iff base^k <= limit, evaluated without overflow.
bool pow_leq(u64 base, unsigned k, u128 limit) {
    u128 r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (base != 0 && r > limit / base) return false;
        r *= base;
    }
    return r <= limit;
}

}  // namespace

u64 iroot(u128 x, unsigned k) {
    if (k == 0) return 1;
    if (k == 1) return static_cast<u64>(std::min<u128>(x, ~0ull));
    if (x == 0) return 0;
    u64 lo = 1, hi = 2;
    while (pow_leq(hi, k, x)) {
        lo = hi;
        if (hi > (1ull << 62)) { hi = ~0ull; break; }
        hi <<= 1;
    }
    // Invariant: lo^k <= x < hi^k.
    while (hi - lo > 1) {
        u64 mid = lo + (hi - lo) / 2;
        if (pow_leq(mid, k, x))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

u64 isqrt(u128 x) { return iroot(x, 2); }

u64 binomial(u64 n, u64 k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return static_cast<u64>(r);
}

}  // namespace evgeom
