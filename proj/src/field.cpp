#include "evgeom/field.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace evgeom {

namespace {

constexpr u64 kLogTableLimit = 1ull << 20;

// --- dense polynomial arithmetic over GF(p), used only for context setup ---

using Poly = std::vector<std::uint32_t>;  // ascending coefficients, no trailing zeros enforced by trim()

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

// a mod f, f monic.
Poly pmod(Poly a, const Poly& f, std::uint32_t p) {
    trim(a);
    const int df = degree(f);
    while (degree(a) >= df) {
        std::uint32_t lead = a.back();
        int shift = degree(a) - df;
        for (int i = 0; i <= df; ++i) {
            u64 v = a[i + shift] + (u64)(p - 1) * lead % p * f[i];
            a[i + shift] = static_cast<std::uint32_t>(v % p);
        }
        trim(a);
    }
    return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + (u64)a[i] * b[j]) % p);
        }
    }
    return pmod(std::move(prod), f, p);
}

// x^e mod f.
Poly pxpowmod(u64 e, const Poly& f, std::uint32_t p) {
    Poly result{1};
    Poly base{0, 1};
    base = pmod(base, f, p);
    while (e) {
        if (e & 1) result = pmulmod(result, base, f, p);
        base = pmulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly psub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        a[i] = static_cast<std::uint32_t>((a[i] + (u64)(p - b[i] % p)) % p);
    }
    trim(a);
    return a;
}

Poly pgcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // Make b monic before using it as a divisor.
        std::uint32_t lead = b.back();
        if (lead != 1) {
            u64 inv = powmod(lead, p - 2, p);
            for (auto& c : b) c = static_cast<std::uint32_t>(c * inv % p);
        }
        Poly r = pmod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin irreducibility test for a monic polynomial of degree m over GF(p).
bool is_irreducible(const Poly& f, std::uint32_t p) {
    const int m = degree(f);
    if (m <= 0) return false;
    if (m == 1) return true;
    u64 pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    Poly x{0, 1};
    if (psub(pxpowmod(pm, f, p), x, p) != Poly{}) return false;
    for (u64 ell : prime_factors(static_cast<u64>(m))) {
        u64 pk = 1;
        for (u64 i = 0; i < m / ell; ++i) pk *= p;
        Poly h = psub(pxpowmod(pk, f, p), x, p);
        Poly g = pgcd(h, f, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

}  // namespace

FieldContext::FieldContext(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m == 0) throw std::invalid_argument("extension degree must be positive");
    if (modulus_.size() != m + 1 || modulus_.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree m");
    for (auto& c : modulus_) {
        if (c >= p) throw std::invalid_argument("modulus coefficients must be reduced mod p");
    }
    if (!is_irreducible(modulus_, p))
        throw std::invalid_argument("modulus is not irreducible over GF(p)");

    pow_p_.resize(m + 1);
    pow_p_[0] = 1;
    for (std::uint32_t i = 1; i <= m; ++i) {
        if (pow_p_[i - 1] > ~0ull / p)
            throw std::invalid_argument("field too large: p^m must fit in 64 bits");
        pow_p_[i] = pow_p_[i - 1] * p;
    }
    size_ = pow_p_[m];
    order_factors_ = prime_factors(size_ - 1);

    // Smallest element of full multiplicative order, in packed order.
    for (u64 a = 1; a < size_; ++a) {
        bool full = true;
        for (u64 ell : order_factors_) {
            if (pow_packed(a, (size_ - 1) / ell) == 1) { full = false; break; }
        }
        if (full) { generator_ = a; break; }
    }
    if (generator_ == 0) throw std::logic_error("no primitive element found");

    if (size_ <= kLogTableLimit) {
        exp_.resize(size_ - 1);
        log_.assign(size_, 0);
        // Walk powers of the generator with coefficient arrays; each step
        // is an O(m^2) multiply without pack/unpack churn.
        std::vector<std::uint32_t> cur(m_, 0), g(m_, 0), tmp(m_, 0), acc(m_, 0);
        cur[0] = 1;
        unpack(generator_, g.data());
        for (u64 i = 0; i < size_ - 1; ++i) {
            u64 packed = pack(cur.data());
            exp_[i] = packed;
            log_[packed] = static_cast<std::uint32_t>(i);
            // cur *= g
            std::fill(acc.begin(), acc.end(), 0);
            tmp = cur;
            for (std::uint32_t j = 0; j < m_; ++j) {
                if (g[j] != 0) {
                    for (std::uint32_t t = 0; t < m_; ++t)
                        acc[t] = static_cast<std::uint32_t>((acc[t] + (u64)g[j] * tmp[t]) % p_);
                }
                if (j + 1 < m_) {
                    // tmp *= x  (shift and reduce by the monic modulus)
                    std::uint32_t carry = tmp[m_ - 1];
                    for (std::uint32_t t = m_ - 1; t > 0; --t) tmp[t] = tmp[t - 1];
                    tmp[0] = 0;
                    if (carry != 0) {
                        for (std::uint32_t t = 0; t < m_; ++t) {
                            u64 v = tmp[t] + (u64)(p_ - 1) * carry % p_ * modulus_[t];
                            tmp[t] = static_cast<std::uint32_t>(v % p_);
                        }
                    }
                }
            }
            cur = acc;
        }
    }
}

void FieldContext::unpack(u64 a, std::uint32_t* c) const {
    if (p_ == 2) {
        for (std::uint32_t i = 0; i < m_; ++i) c[i] = (a >> i) & 1;
        return;
    }
    for (std::uint32_t i = 0; i < m_; ++i) {
        c[i] = static_cast<std::uint32_t>(a % p_);
        a /= p_;
    }
}

u64 FieldContext::pack(const std::uint32_t* c) const {
    u64 a = 0;
    for (std::uint32_t i = m_; i-- > 0;) a = a * p_ + c[i];
    return a;
}

u64 FieldContext::add_packed(u64 a, u64 b) const {
    if (p_ == 2) return a ^ b;
    u64 r = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
        u64 da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        r += (da + db) % p_ * pow_p_[i];
    }
    return r;
}

u64 FieldContext::sub_packed(u64 a, u64 b) const {
    if (p_ == 2) return a ^ b;
    u64 r = 0;
    for (std::uint32_t i = 0; i < m_; ++i) {
        u64 da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        r += (da + p_ - db) % p_ * pow_p_[i];
    }
    return r;
}

u64 FieldContext::shift_reduce(u64 a) const {
    std::array<std::uint32_t, 64> c{};
    unpack(a, c.data());
    std::uint32_t carry = c[m_ - 1];
    for (std::uint32_t t = m_ - 1; t > 0; --t) c[t] = c[t - 1];
    c[0] = 0;
    if (carry != 0) {
        for (std::uint32_t t = 0; t < m_; ++t) {
            u64 v = c[t] + (u64)(p_ - 1) * carry % p_ * modulus_[t];
            c[t] = static_cast<std::uint32_t>(v % p_);
        }
    }
    return pack(c.data());
}

u64 FieldContext::mul_generic(u64 a, u64 b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return mulmod(a, b, p_);
    std::array<std::uint32_t, 64> ca{}, cb{};
    std::array<u128, 128> prod{};
    unpack(a, ca.data());
    unpack(b, cb.data());
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (ca[i] == 0) continue;
        for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] += (u64)ca[i] * cb[j];
    }
    // Reduce degrees 2m-2 .. m by the monic modulus.
    for (std::uint32_t d = 2 * m_ - 2; d + 1 > m_; --d) {
        u64 lead = static_cast<u64>(prod[d] % p_);
        if (lead == 0) continue;
        u64 neg = (u64)(p_ - 1) * lead % p_;
        for (std::uint32_t t = 0; t <= m_; ++t) prod[d - m_ + t] += (u128)neg * modulus_[t];
        prod[d] = 0;
    }
    std::array<std::uint32_t, 64> out{};
    for (std::uint32_t i = 0; i < m_; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p_);
    return pack(out.data());
}

u64 FieldContext::mul_packed(u64 a, u64 b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) {
        u64 s = log_[a] + (u64)log_[b];
        if (s >= size_ - 1) s -= size_ - 1;
        return exp_[s];
    }
    return mul_generic(a, b);
}

u64 FieldContext::inv_packed(u64 a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(p^m)");
    if (!exp_.empty()) {
        u64 l = log_[a];
        return l == 0 ? 1 : exp_[size_ - 1 - l];
    }
    return pow_packed(a, size_ - 2);
}

u64 FieldContext::pow_packed(u64 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    u64 ord = size_ - 1;
    e %= ord;
    if (!exp_.empty()) {
        return exp_[mulmod(log_[a], e, ord)];
    }
    u64 r = 1, base = a;
    while (e) {
        if (e & 1) r = mul_generic(r, base);
        base = mul_generic(base, base);
        e >>= 1;
    }
    return r;
}

FieldElement FieldContext::zero() const { return FieldElement(this, 0); }
FieldElement FieldContext::one() const { return FieldElement(this, 1); }
FieldElement FieldContext::generator() const { return FieldElement(this, generator_); }

FieldElement FieldContext::element(u64 packed) const {
    if (packed >= size_) throw std::out_of_range("packed representation out of field range");
    return FieldElement(this, packed);
}

FieldElement FieldContext::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() > m_) throw std::invalid_argument("coefficient vector longer than extension degree");
    std::array<std::uint32_t, 64> c{};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] >= p_) throw std::invalid_argument("coefficient not reduced mod p");
        c[i] = coeffs[i];
    }
    return FieldElement(this, pack(c.data()));
}

bool FieldContext::is_subfield_size(u64 k) const {
    if (k < 2) return false;
    std::uint32_t e = 0;
    u64 v = 1;
    while (v < k) {
        v *= p_;
        ++e;
        if (e > m_) return false;
    }
    return v == k && m_ % e == 0;
}

std::string FieldContext::header() const {
    std::ostringstream os;
    os << p_ << ',' << m_;
    for (auto c : modulus_) os << ',' << c;
    return os.str();
}

std::vector<std::uint32_t> FieldElement::coeffs() const {
    std::vector<std::uint32_t> c(ctx_->m());
    ctx_->unpack(rep_, c.data());
    return c;
}

namespace {

struct ContextKey {
    std::uint32_t p, m, index;
    bool operator<(const ContextKey& o) const {
        return std::tie(p, m, index) < std::tie(o.p, o.m, o.index);
    }
};

}  // namespace

const FieldContext& make_context(std::uint32_t p, std::uint32_t m, std::uint32_t modulus_index) {
    static std::mutex mu;
    static std::map<ContextKey, std::unique_ptr<FieldContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, m, modulus_index});
    if (it != cache.end()) return *it->second;

    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m == 0) throw std::invalid_argument("extension degree must be positive");

    // Scan monic degree-m polynomials: the non-leading part is the base-p
    // expansion of an ascending counter, so the choice is deterministic.
    u64 pm = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (pm > ~0ull / p) throw std::invalid_argument("field too large: p^m must fit in 64 bits");
        pm *= p;
    }
    std::uint32_t remaining = modulus_index;
    for (u64 counter = 0; counter < pm; ++counter) {
        Poly f(m + 1, 0);
        u64 c = counter;
        for (std::uint32_t i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[m] = 1;
        if (!is_irreducible(f, p)) continue;
        if (remaining-- == 0) {
            auto ctx = std::make_unique<FieldContext>(p, m, std::vector<std::uint32_t>(f.begin(), f.end()));
            const FieldContext& ref = *ctx;
            cache.emplace(ContextKey{p, m, modulus_index}, std::move(ctx));
            return ref;
        }
    }
    throw std::invalid_argument("no irreducible modulus with the requested index");
}

FieldElement frobenius(const FieldElement& x, std::uint32_t k, u64 q) {
    const FieldContext& ctx = x.ctx();
    if (!ctx.is_subfield_size(q)) throw std::invalid_argument("q is not a subfield size of this context");
    if (x.is_zero()) return x;
    u64 ord = ctx.order();
    u64 e = 1;
    for (std::uint32_t i = 0; i < k; ++i) e = mulmod(e, q % ord, ord);
    return x.pow(e);
}

bool in_subfield(const FieldElement& x, u64 k) {
    const FieldContext& ctx = x.ctx();
    if (!ctx.is_subfield_size(k)) throw std::invalid_argument("k is not a subfield size of this context");
    return frobenius(x, 1, k) == x;
}

std::vector<FieldElement> subgroup(const FieldContext& ctx, u64 d) {
    if (d == 0 || ctx.order() % d != 0) throw std::invalid_argument("subgroup order must divide p^m - 1");
    u64 step = ctx.order() / d;
    FieldElement g = ctx.generator().pow(step);
    std::vector<FieldElement> out;
    out.reserve(d);
    FieldElement cur = ctx.one();
    for (u64 i = 0; i < d; ++i) {
        out.push_back(cur);
        cur = cur * g;
    }
    return out;
}

std::string to_string(const FieldElement& x) {
    std::ostringstream os;
    auto c = x.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
    }
    return os.str();
}

FieldElement parse_element(const FieldContext& ctx, const std::string& s) {
    std::vector<std::uint32_t> coeffs;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        coeffs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    }
    return ctx.from_coeffs(coeffs);
}

}  // namespace evgeom
