#pragma once

#include <gmpxx.h>

#include <limits>
#include <string>
#include <vector>

namespace phitower {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Sentinel for "valuation of zero" / "congruent to everything".
inline constexpr long kValInfinity = std::numeric_limits<long>::max() / 4;

inline BigInt pow_int(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

/// Exponent of p in n (n != 0); kValInfinity for n == 0.
inline long val_int(const BigInt& n, const BigInt& p) {
    if (n == 0) return kValInfinity;
    BigInt rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

/// p-adic valuation of a rational (val(num) - val(den)); kValInfinity for 0.
inline long val_rat(const Rational& x, const BigInt& p) {
    if (x == 0) return kValInfinity;
    return val_int(x.get_num(), p) - val_int(x.get_den(), p);
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

/// Denominator coprime to p, i.e. the rational lies in Z_(p).
inline bool is_p_integral(const Rational& x, const BigInt& p) {
    return val_int(x.get_den(), p) == 0;
}

/// Canonical representative of n modulo m in [0, m).
inline BigInt mod_canonical(const BigInt& n, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Deterministic trial-division primality test; inputs at desk scale.
inline bool is_prime_int(const BigInt& n) {
    if (n < 2) return false;
    if (n == 2) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    for (BigInt d = 3; d * d <= n; d += 2) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) return false;
    }
    return true;
}

inline std::string to_string(const BigInt& n) { return n.get_str(); }

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& text);
BigInt parse_bigint(const std::string& text);

} // namespace phitower
