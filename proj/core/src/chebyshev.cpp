#include "phitower/chebyshev.hpp"

#include <algorithm>

#include "phitower/lubin.hpp"
#include "phitower/tower.hpp"

namespace phitower {

namespace {

// plain coefficient vectors, constant first; avoids truncation bookkeeping
using Vec = std::vector<Rational>;

Vec vec_c(long k) {
    Vec prev{Rational(1)};          // C_0 = 1
    Vec cur{Rational(0), Rational(1)}; // C_1 = T
    if (k == 0) return prev;
    for (long i = 1; i < k; ++i) {
        Vec next(cur.size() + 1, Rational(0));
        for (size_t j = 0; j < cur.size(); ++j) next[j + 1] = 2 * cur[j];
        for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Vec vec_mul(const Vec& a, const Vec& b) {
    Vec r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Vec vec_p(long k) {
    // 2 (C_k(T/2 + 1) - 1), by Horner over the argument T/2 + 1
    Vec ck = vec_c(k);
    Vec arg{Rational(1), Rational(1, 2)};
    Vec acc{Rational(0)};
    for (auto it = ck.rbegin(); it != ck.rend(); ++it) {
        acc = vec_mul(acc, arg);
        acc[0] += *it;
    }
    acc[0] -= 1;
    for (auto& q : acc) q *= 2;
    return acc;
}

// ---------------------------------------------------------------------------
// arithmetic in Z[x] / Phi_{3^(n+1)}, Phi = x^(2a) + x^a + 1 with a = 3^n
// ---------------------------------------------------------------------------

struct CycloRing {
    long a; // dimension 2a

    explicit CycloRing(long n) : a(1) {
        for (long i = 0; i < n; ++i) a *= 3;
    }

    std::vector<BigInt> zero() const { return std::vector<BigInt>(2 * a, BigInt(0)); }

    std::vector<BigInt> reduce(std::vector<BigInt> v) const {
        for (long i = static_cast<long>(v.size()) - 1; i >= 2 * a; --i) {
            if (v[i] == 0) continue;
            // x^i = x^(i-2a) * x^(2a) = -x^(i-a) - x^(i-2a)
            v[static_cast<size_t>(i - a)] -= v[static_cast<size_t>(i)];
            v[static_cast<size_t>(i - 2 * a)] -= v[static_cast<size_t>(i)];
            v[static_cast<size_t>(i)] = 0;
        }
        v.resize(static_cast<size_t>(2 * a), BigInt(0));
        return v;
    }

    std::vector<BigInt> mul(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
        std::vector<BigInt> r(x.size() + y.size() - 1, BigInt(0));
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
        }
        return reduce(std::move(r));
    }

    std::vector<BigInt> x_power(long e) const {
        // e may be negative: x^(-1) = -x^(a-1) - x^(2a-1)
        std::vector<BigInt> xe = zero();
        xe[1] = 1;
        std::vector<BigInt> xinv = zero();
        xinv[static_cast<size_t>(a - 1)] = -1;
        xinv[static_cast<size_t>(2 * a - 1)] = -1;
        std::vector<BigInt> acc = zero();
        acc[0] = 1;
        const std::vector<BigInt>& base = (e >= 0) ? xe : xinv;
        for (long i = 0; i < std::max(e, -e); ++i) acc = mul(acc, base);
        return acc;
    }
};

} // namespace

ChebyshevFamily::ChebyshevFamily(long k_max) : k_max_(k_max) {
    if (k_max_ < 1) raise(errc::invalid_argument, "family needs k_max >= 1");
    c_.reserve(static_cast<size_t>(k_max_) + 1);
    p_.reserve(static_cast<size_t>(k_max_) + 1);
    for (long k = 0; k <= k_max_; ++k) c_.push_back(RatSeries::polynomial_from(vec_c(k)));
    p_.push_back(RatSeries::zero(Rational(0), 0)); // placeholder at index 0
    for (long k = 1; k <= k_max_; ++k) {
        RatSeries pk = RatSeries::polynomial_from(vec_p(k));
        if (!is_integral(pk))
            raise(errc::invalid_argument, "shifted polynomial has a fractional coefficient");
        p_.push_back(std::move(pk));
    }
}

const RatSeries& ChebyshevFamily::c(long k) const {
    if (k < 0 || k > k_max_) raise(errc::invalid_argument, "index out of range");
    return c_[static_cast<size_t>(k)];
}

const RatSeries& ChebyshevFamily::p(long k) const {
    if (k < 1 || k > k_max_) raise(errc::invalid_argument, "index out of range");
    return p_[static_cast<size_t>(k)];
}

RatSeries chebyshev_c(long k) {
    if (k < 0) raise(errc::invalid_argument, "k must be >= 0");
    return RatSeries::polynomial_from(vec_c(k));
}

RatSeries chebyshev_p(long k) {
    if (k < 1) raise(errc::invalid_argument, "k must be >= 1");
    ChebyshevFamily fam(k);
    return fam.p(k);
}

LaurentCheck laurent_identity(long k, long n) {
    if (k < 1 || n < 0) raise(errc::invalid_argument, "need k >= 1, n >= 0");
    LaurentCheck out;
    RatSeries pk = chebyshev_p(k);

    // multiply through by x^k: sum_j p_j (x-1)^(2j) x^(k-j) = x^(2k) - 2x^k + 1
    std::vector<Rational> lhs(static_cast<size_t>(2 * k) + 1, Rational(0));
    Vec xm1_sq{Rational(1), Rational(-2), Rational(1)}; // (x-1)^2
    Vec power{Rational(1)};
    for (long j = 0; j <= k; ++j) {
        if (pk[j] != 0)
            for (size_t i = 0; i < power.size(); ++i)
                lhs[i + static_cast<size_t>(k - j)] += pk[j] * power[i];
        if (j < k) power = vec_mul(power, xm1_sq);
    }
    std::vector<Rational> rhs(static_cast<size_t>(2 * k) + 1, Rational(0));
    rhs[0] = 1;
    rhs[static_cast<size_t>(k)] = -2;
    rhs[static_cast<size_t>(2 * k)] = 1;
    out.exact_identity = (lhs == rhs);

    // reduction mod Phi_{3^(n+1)}: evaluate both sides inside the quotient ring
    CycloRing ring(n);
    std::vector<BigInt> value = shifted_value_mod_cyclotomic(k, n);
    std::vector<BigInt> expect = ring.x_power(k);
    std::vector<BigInt> xmk = ring.x_power(-k);
    for (size_t i = 0; i < expect.size(); ++i) expect[i] += xmk[i];
    expect[0] -= 2;
    out.cyclotomic_identity = (value == expect);
    return out;
}

std::vector<BigInt> shifted_value_mod_cyclotomic(long k, long n) {
    RatSeries pk = chebyshev_p(k);
    CycloRing ring(n);
    std::vector<BigInt> u = ring.x_power(1);
    std::vector<BigInt> xinv = ring.x_power(-1);
    for (size_t i = 0; i < u.size(); ++i) u[i] += xinv[i];
    u[0] -= 2;

    std::vector<BigInt> acc = ring.zero();
    for (long j = pk.trunc(); j >= 0; --j) {
        acc = ring.mul(acc, u);
        if (pk[j] != 0) {
            if (!is_integer(pk[j])) raise(errc::invalid_argument, "non-integer coefficient");
            acc[0] += pk[j].get_num();
        }
    }
    return acc;
}

bool ChebyshevReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

ChebyshevReport chebyshev_demo_report(long pi_precision, long depth) {
    if (pi_precision < 0 || depth < 0) raise(errc::invalid_argument, "negative parameter");
    const long j = pi_precision;
    ChebyshevReport report;
    ChebyshevFamily fam(10);

    {
        RatSeries expect = RatSeries::polynomial_from(
            {Rational(0), Rational(9), Rational(6), Rational(1)});
        bool ok = series_equal(fam.p(3), expect);
        report.items.push_back({"cubic-shape", ok, "P3 = T^3 + 6T^2 + 9T"});
    }

    {
        bool ok = true;
        for (long k = 1; k <= 10; ++k)
            ok = ok && commutes(fam.p(k).extended(30), fam.p(3).extended(30), 30);
        report.items.push_back({"commuting-family", ok, "P_k commutes with P_3, k <= 10"});
    }

    {
        bool ok = true;
        for (long k = 1; k <= 10; ++k) ok = ok && (eta_value(fam.p(k)) == Rational(k * k));
        report.items.push_back({"eta-squares", ok, "P_k'(0) = k^2, k <= 10"});
    }

    {
        int precision = static_cast<int>(std::max<long>(j + 2, 8));
        auto z3 = Ring::zp(3, precision);
        RPoly P = RPoly::from_integers(z3, {BigInt(0), BigInt(9), BigInt(6), BigInt(1)});
        TowerContext ctx(z3, P, z3->from_integer(-3), std::max(2 * j, depth));

        NormCompatibleSequence useq = sequence_from_poly(
            ctx, RPoly::from_integers(z3, {BigInt(0), BigInt(1)}), 2 * j);
        ColemanRecovery urec = coleman_series(ctx, useq, j);
        bool uok = urec.certificate_ok && urec.series[0].is_zero() &&
                   urec.series[1].congruent(z3->one(), static_cast<int>(j + 1));
        for (long i = 2; i <= urec.series.trunc(); ++i)
            uok = uok && urec.series[i].valuation().value >= j + 1;
        report.items.push_back({"recovery-identity", uok, "limit of {u_n} is T"});

        NormCompatibleSequence qseq = sequence_from_poly(
            ctx, RPoly::from_integers(z3, {BigInt(0), BigInt(4), BigInt(1)}), 2 * j);
        ColemanRecovery qrec = coleman_series(ctx, qseq, j);
        bool qok = qrec.certificate_ok && qrec.series[0].is_zero() &&
                   qrec.series[1].congruent(z3->from_integer(4), static_cast<int>(j + 1)) &&
                   qrec.series[2].congruent(z3->one(), static_cast<int>(j + 1));
        for (long i = 3; i <= qrec.series.trunc(); ++i)
            qok = qok && qrec.series[i].valuation().value >= j + 1;
        report.items.push_back({"recovery-quadratic", qok, "limit of {P2(u_n)} is T^2 + 4T"});

        bool eok = true;
        for (long nlevel = 0; nlevel <= std::min(depth, j); ++nlevel) {
            TowerElement at_u = evaluate(ctx, qrec.series, tower_uniformizer(ctx, nlevel));
            eok = eok && tower_congruent(at_u, qseq.elems[static_cast<size_t>(nlevel)],
                                         static_cast<int>(j + 1));
        }
        report.items.push_back(
            {"evaluation-congruences", eok, "Col(u_n) = x_n mod 3^(j+1), n <= depth"});
    }

    {
        bool ok = true;
        for (long k : {2L, 3L}) ok = ok && log_equivariance(3, fam.p(3), fam.p(k), 8, 5);
        report.items.push_back({"log-equivariance", ok, "L(P_k) = k^2 L for k in {2,3}"});
    }

    return report;
}

} // namespace phitower
