#include "phitower/lubin.hpp"

#include <algorithm>

namespace phitower {

namespace {

Rational check_linear_term(const BigInt& p, const RatSeries& P) {
    if (!cf_is_zero(P[0]))
        raise(errc::nonzero_constant_term, "P must vanish at 0");
    if (P.trunc() < 1 || P[1] == 0)
        raise(errc::zero_linear_term, "P'(0) must be nonzero");
    if (val_rat(P[1], p) < 1)
        raise(errc::unit_linear_term, "val(P'(0)) >= 1 required");
    return P[1];
}

void check_order(long order) {
    if (order < 1) raise(errc::invalid_argument, "order must be >= 1");
}

} // namespace

LogarithmResult lubin_log_recursive(const BigInt& p, const RatSeries& P, long order) {
    check_order(order);
    Rational pi1 = check_linear_term(p, P);
    RatSeries Pn = at_order(P, order).as_series_tail_unknown();

    // powers of P up to T^order
    std::vector<RatSeries> pk{RatSeries::identity(Rational(0), order).as_series_tail_unknown(), Pn};
    for (long k = 2; k <= order; ++k) pk.push_back(pk.back() * Pn);

    std::vector<Rational> c(static_cast<size_t>(order) + 1, Rational(0));
    if (order >= 1) c[1] = 1;
    std::vector<Rational> pi_pow{Rational(1), pi1};
    for (long m = 2; m <= order; ++m) pi_pow.push_back(pi_pow.back() * pi1);
    for (long m = 2; m <= order; ++m) {
        Rational rhs(0);
        for (long k = 1; k < m; ++k)
            if (c[static_cast<size_t>(k)] != 0) rhs += c[static_cast<size_t>(k)] * pk[static_cast<size_t>(k)][m];
        c[static_cast<size_t>(m)] = -rhs / (pi_pow[static_cast<size_t>(m)] - pi1);
    }

    LogarithmResult out{RatSeries(std::move(c), order, false), LogMethod::recursion,
                        kValInfinity, {}};
    RatSeries residual = compose(out.series, Pn) - scale(out.series, pi1);
    out.functional_residual_val = min_coeff_val(residual, p, order);
    out.coeff_precision.assign(static_cast<size_t>(order) + 1, kValInfinity);
    return out;
}

LogarithmResult lubin_log_product(const BigInt& p, const RatSeries& P, long order,
                                  long padic_precision) {
    check_order(order);
    Rational pi1 = check_linear_term(p, P);
    if (P.degree() < 2)
        raise(errc::invalid_argument, "product formula needs a nonlinear P");
    if (!is_p_integral(P, p))
        raise(errc::invalid_argument, "product formula needs p-integral coefficients");
    RatSeries Pn = at_order(P, order).as_series_tail_unknown();

    // Q with P = T Q(T), known to the same order
    std::vector<Rational> qc;
    qc.reserve(static_cast<size_t>(order) + 1);
    for (long i = 1; i <= std::min(order + 1, P.polynomial() ? P.degree() : P.trunc()); ++i)
        qc.push_back(P.polynomial() ? (i <= P.degree() ? P[i] : Rational(0)) : P[i]);
    RatSeries Q(std::move(qc), order, false);

    RatSeries partial = RatSeries::identity(Rational(0), order).as_series_tail_unknown();
    RatSeries iter = partial; // P^0 = T
    long tail_val = 0;
    const long max_factors = 4 * (padic_precision + order) + 64;
    bool certified = false;
    for (long n = 0; n < max_factors; ++n) {
        RatSeries factor = scale(compose(Q, iter), Rational(Rational(1) / pi1));
        // factor - 1: constant term cancels exactly
        RatSeries fm1 = factor - RatSeries::polynomial_from({Rational(1)}, order);
        tail_val = min_coeff_val(fm1, p, order);
        long partial_floor = std::min<long>(0, min_coeff_val(partial, p, order));
        if (tail_val >= padic_precision - partial_floor && tail_val >= 1) {
            // tail factors only improve: P^n = T^(d^n) mod p forces their valuations
            // to grow by at least one per extra factor
            certified = true;
            break;
        }
        partial = partial * factor;
        iter = compose(Pn, iter);
    }
    if (!certified)
        raise(errc::precision_exhausted, "product formula did not converge in the factor budget");

    LogarithmResult out{partial, LogMethod::product, kValInfinity, {}};
    RatSeries residual = compose(partial, Pn) - scale(partial, pi1);
    out.functional_residual_val = min_coeff_val(residual, p, order);
    out.coeff_precision.reserve(static_cast<size_t>(order) + 1);
    long prefix_min = kValInfinity;
    for (long j = 0; j <= order; ++j) {
        prefix_min = std::min(prefix_min, val_rat(partial[j], p));
        out.coeff_precision.push_back(tail_val + std::min<long>(prefix_min, 0));
    }
    return out;
}

CommutingResult solve_commuting(const BigInt& p, const RatSeries& P, const Rational& eta0,
                                long order) {
    check_order(order);
    Rational pi1 = check_linear_term(p, P);
    RatSeries Pn = at_order(P, order).as_series_tail_unknown();

    std::vector<Rational> c(static_cast<size_t>(order) + 1, Rational(0));
    if (order >= 1) c[1] = eta0;
    std::vector<Rational> pi_pow{Rational(1), pi1};
    for (long m = 2; m <= order; ++m) pi_pow.push_back(pi_pow.back() * pi1);
    for (long m = 2; m <= order; ++m) {
        RatSeries partial(std::vector<Rational>(c.begin(), c.begin() + m), m, false);
        RatSeries lhs = compose(Pn.truncated(m), partial);
        RatSeries rhs = compose(partial, Pn.truncated(m));
        c[static_cast<size_t>(m)] = (lhs[m] - rhs[m]) / (pi_pow[static_cast<size_t>(m)] - pi1);
    }
    RatSeries F(std::move(c), order, false);
    return CommutingResult{F, is_p_integral(F, p)};
}

bool log_equivariance(const BigInt& p, const RatSeries& P, const RatSeries& F, long order,
                      long padic_precision) {
    RatSeries Pn = at_order(P, order);
    RatSeries Fn = at_order(F, order);
    if (!commutes(Fn, Pn, order)) return false;
    LogarithmResult log = lubin_log_recursive(p, P, order);
    RatSeries diff = compose(log.series, Fn.as_series_tail_unknown()) - scale(log.series, Fn[1]);
    return min_coeff_val(diff, p, order) >= padic_precision;
}

} // namespace phitower
