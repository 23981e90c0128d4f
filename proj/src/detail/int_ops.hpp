#pragma once

// Arithmetic shared by the elimination engines: overflow-checked int64 and
// GMP integers behind one set of overloads.

#include <cstdint>
#include <exception>

#include "pdpair/bigint.hpp"

namespace pdpair::detail {

struct Overflow : std::exception {
    const char* what() const noexcept override { return "int64 overflow"; }
};

// Values are kept below 2^62 so that xgcd and negation never overflow.
inline constexpr std::int64_t kInt64Bound = std::int64_t(1) << 62;

inline std::int64_t bounded(std::int64_t x) {
    if (x >= kInt64Bound || x <= -kInt64Bound) throw Overflow{};
    return x;
}

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return bounded(r);
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return bounded(r);
}
inline std::int64_t abs_value(std::int64_t a) { return a < 0 ? -a : a; }
inline bool divides(std::int64_t p, std::int64_t a) { return a % p == 0; }
inline std::int64_t exact_quotient(std::int64_t a, std::int64_t p) { return a / p; }

// g = s a + t b, g = gcd(a, b) > 0
inline void xgcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
    std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        std::int64_t t2 = t0 - q * t1;
        r0 = r1; r1 = r2; s0 = s1; s1 = s2; t0 = t1; t1 = t2;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    g = r0; s = s0; t = t0;
}

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt abs_value(const BigInt& a) { return abs(a); }
inline bool divides(const BigInt& p, const BigInt& a) { return mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) != 0; }
inline BigInt exact_quotient(const BigInt& a, const BigInt& p) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return q;
}
inline void xgcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// q with |a - q p| <= |p| / 2
inline std::int64_t nearest_quotient(std::int64_t a, std::int64_t p) {
    std::int64_t q = a / p, r = a % p;
    if (2 * abs_value(r) > abs_value(p)) q += ((r < 0) == (p < 0)) ? 1 : -1;
    return q;
}
inline BigInt nearest_quotient(const BigInt& a, const BigInt& p) {
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (2 * abs(r) > abs(p)) q += ((r < 0) == (p < 0)) ? 1 : -1;
    return q;
}

template <class Int> Int from_big(const BigInt& x);
template <> inline std::int64_t from_big<std::int64_t>(const BigInt& x) {
    if (!x.fits_slong_p()) throw Overflow{};
    return bounded(x.get_si());
}
template <> inline BigInt from_big<BigInt>(const BigInt& x) { return x; }

inline BigInt to_big(std::int64_t x) { return BigInt(static_cast<long>(x)); }
inline const BigInt& to_big(const BigInt& x) { return x; }

}  // namespace pdpair::detail
