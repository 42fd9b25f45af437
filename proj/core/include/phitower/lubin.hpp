#pragma once

#include <vector>

#include "phitower/series.hpp"

namespace phitower {

enum class LogMethod { recursion, product };

struct LogarithmResult {
    RatSeries series;
    LogMethod method;
    /// min p-adic valuation of the coefficients of L(P) - P'(0) L up to the truncation
    /// order; kValInfinity when the functional equation holds exactly there.
    long functional_residual_val = kValInfinity;
    /// Per-coefficient certified p-adic precision (product method; recursion is exact).
    std::vector<long> coeff_precision;
};

/// The normalized linearizer of P: the unique L = T + O(T^2) with L(P) = P'(0) L,
/// solved coefficient-by-coefficient over exact rationals. The degree-m denominator
/// P'(0)(P'(0)^{m-1} - 1) never vanishes since P'(0) is a nonzero non-unit.
/// Throws zero_linear_term, unit_linear_term.
LogarithmResult lubin_log_recursive(const BigInt& p, const RatSeries& P, long order);

/// The same series by partial products of T * prod Q(P^n(T))/Q(0), P = T Q(T), run in
/// exact rational arithmetic until the tail factors are 1 modulo p^target deep enough
/// to certify every reported coefficient modulo p^padic_precision.
LogarithmResult lubin_log_product(const BigInt& p, const RatSeries& P, long order,
                                  long padic_precision);

struct CommutingResult {
    RatSeries series;
    bool p_integral = false;
};

/// The unique F = eta0 T + O(T^2) over the fraction field with F(P) = P(F) mod
/// T^(order+1), solved degree-by-degree; reports whether all coefficients are
/// p-integral rather than failing on a fractional solution.
CommutingResult solve_commuting(const BigInt& p, const RatSeries& P, const Rational& eta0,
                                long order);

/// f(g) = g(f) mod T^(N+1); both must vanish at 0.
template <class C>
bool commutes(const TruncSeries<C>& f, const TruncSeries<C>& g, long order) {
    if (!cf_is_zero(f[0]) || !cf_is_zero(g[0]))
        raise(errc::nonzero_constant_term, "commutation check needs f(0) = g(0) = 0");
    TruncSeries<C> a = f.truncated(order).as_series_tail_unknown();
    TruncSeries<C> b = g.truncated(order).as_series_tail_unknown();
    return series_equal(compose(a, b), compose(b, a), order);
}

/// The character value eta(F) = F'(0).
template <class C>
C eta_value(const TruncSeries<C>& f) {
    if (!cf_is_zero(f[0])) raise(errc::nonzero_constant_term, "eta needs f(0) = 0");
    if (f.trunc() < 1) return cf_zero_like(f[0]);
    return f[1];
}

/// L(F) = F'(0) L modulo (T^(order+1), p^padic_precision), for F commuting with P.
bool log_equivariance(const BigInt& p, const RatSeries& P, const RatSeries& F, long order,
                      long padic_precision);

} // namespace phitower
