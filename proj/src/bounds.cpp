#include "evgeom/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace evgeom {

namespace {

u128 checked_mul(u128 a, u128 b) {
    if (a != 0 && b > ~(u128)0 / a) throw std::overflow_error("bound evaluation exceeds 128 bits");
    return a * b;
}

u128 pow_u128(u64 base, int e) {
    u128 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.insert(s.begin(), static_cast<char>('0' + (int)(v % 10)));
        v /= 10;
    }
    return s;
}

}  // namespace

BoundResult bound_n_minus2(int n, std::uint32_t q) {
    if (n < 2 || q < 2) throw std::invalid_argument("require n >= 2 and q >= 2");
    BoundResult r;
    r.kind = "n2";
    r.n = n;
    r.q = q;
    u128 a = (pow_u128(q, n + 1) - 1) / (q - 1);
    u128 b = (pow_u128(q, n) - 1) / (q - 1);
    // One of the two geometric sums has an even number of terms and is
    // divisible by q+1.
    if (b % (q + 1) == 0)
        b /= q + 1;
    else
        a /= q + 1;
    u128 fact = 1;
    for (int i = 2; i <= n; ++i) fact = checked_mul(fact, i);
    u128 radicand = checked_mul(checked_mul(fact, a), b);
    u64 root = iroot(radicand, n - 1);
    r.value = root + n - 2;
    std::ostringstream os;
    os << "(" << u128_str(radicand) << ")^(1/" << (n - 1) << ") + " << (n - 2);
    r.exact_expression = os.str();
    r.real_value = std::pow((double)radicand, 1.0 / (n - 1)) + (n - 2);
    return r;
}

namespace {

BoundResult sqrt_bound(const char* kind, int n, std::uint32_t q, int pow_exp, long shift_num) {
    BoundResult r;
    r.kind = kind;
    r.n = n;
    r.q = q;
    u128 d = pow_u128(q, pow_exp) * 8 + (u128)q * q - 6 * (u64)q + 1;
    u64 s = isqrt(d);
    long long num_shift = shift_num;  // 3q-5 or q-3, both >= -1 for q >= 2
    u64 denom = 2 * ((u64)q - 1);
    long long numerator = (long long)s + num_shift;
    if (numerator < 0) numerator = 0;
    r.value = (u64)numerator / denom;
    std::ostringstream os;
    os << "(sqrt(" << u128_str(d) << ") + " << num_shift << ")/" << denom;
    r.exact_expression = os.str();
    r.real_value = (std::sqrt((double)d) + num_shift) / denom;
    return r;
}

}  // namespace

BoundResult bound_5general(int n, std::uint32_t q) {
    if (n < 2 || q < 2) throw std::invalid_argument("require n >= 2 and q >= 2");
    return sqrt_bound("g5", n, q, n, 3L * q - 5);
}

BoundResult bound_4general(int n, std::uint32_t q) {
    if (n < 2 || q < 2) throw std::invalid_argument("require n >= 2 and q >= 2");
    return sqrt_bound("g4", n, q, n + 1, (long)q - 3);
}

}  // namespace evgeom
