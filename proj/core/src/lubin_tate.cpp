#include "phitower/lubin_tate.hpp"

#include <algorithm>

namespace phitower {

namespace {

// reinterpret representatives in a compatible ring, usually at higher working
// precision; balanced coordinates so small negative data stays small negative
Elt lift_to(const Elt& x, const RingPtr& target) {
    if (!target->compatible_with(*x.ring()))
        raise(errc::mode_mismatch, "lift between incompatible rings");
    const BigInt& pk = x.ring()->p_power(x.precision());
    std::vector<BigInt> coords = x.coords();
    for (auto& c : coords)
        if (2 * c > pk) c -= pk;
    return target->from_coords(std::move(coords));
}

PadicSeries lift_series(const PadicSeries& f, const RingPtr& target) {
    std::vector<Elt> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(lift_to(a, target));
    return PadicSeries(std::move(c), f.trunc(), f.polynomial());
}

PadicSeries lower_series(const PadicSeries& f, const RingPtr& target) {
    std::vector<Elt> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(a.transport(target));
    return PadicSeries(std::move(c), f.trunc(), f.polynomial());
}

// univariate f evaluated on a bivariate argument (Horner, total-degree truncated)
BivariateTrunc<Elt> compose_bivariate(const PadicSeries& f, const BivariateTrunc<Elt>& s) {
    const Elt zero = cf_zero_like(s.at(0, 0));
    BivariateTrunc<Elt> acc(s.trunc(), zero);
    for (long k = f.trunc(); k >= 0; --k) {
        acc = acc * s;
        BivariateTrunc<Elt> c(s.trunc(), zero);
        c.set(0, 0, f[k]);
        acc = acc + c;
    }
    return acc;
}

BivariateTrunc<Elt> twist_bivariate(const BivariateTrunc<Elt>& s) {
    return s.map_coeffs([](const Elt& c) { return c.frobenius_map(); });
}

// S^phi(f(X), f(Y)) as a bivariate series
BivariateTrunc<Elt> twisted_substitution(const PadicSeries& f, const BivariateTrunc<Elt>& s) {
    const Elt zero = cf_zero_like(s.at(0, 0));
    const long n = s.trunc();
    BivariateTrunc<Elt> fx(n, zero), fy(n, zero), one(n, zero);
    for (long i = 0; i <= std::min(n, f.trunc()); ++i) {
        fx.set(i, 0, f[i]);
        fy.set(0, i, f[i]);
    }
    one.set(0, 0, cf_one_like(zero));
    return subst_into(twist_bivariate(s), fx, fy, one);
}

BivariateTrunc<Elt> defining_defect(const PadicSeries& f, const BivariateTrunc<Elt>& s) {
    return compose_bivariate(f, s) - twisted_substitution(f, s);
}

// ---------------------------------------------------------------------------
// minimal trivariate algebra for the associativity check
// ---------------------------------------------------------------------------

struct TriTrunc {
    long trunc;
    std::vector<Elt> c;

    static size_t size_for(long n) {
        return static_cast<size_t>((n + 1) * (n + 2) * (n + 3) / 6);
    }
    static size_t index(long i, long j, long k) {
        long m = i + j + k, s = j + k;
        return static_cast<size_t>(m * (m + 1) * (m + 2) / 6 + s * (s + 1) / 2 + k);
    }

    TriTrunc(long n, const Elt& zero) : trunc(n), c(size_for(n), zero) {}

    const Elt& at(long i, long j, long k) const { return c[index(i, j, k)]; }
    void set(long i, long j, long k, Elt v) { c[index(i, j, k)] = std::move(v); }

    TriTrunc operator+(const TriTrunc& rhs) const {
        TriTrunc r = *this;
        for (size_t t = 0; t < c.size(); ++t) r.c[t] = r.c[t] + rhs.c[t];
        return r;
    }

    TriTrunc operator*(const TriTrunc& rhs) const {
        TriTrunc r(trunc, cf_zero_like(c[0]));
        for (long m1 = 0; m1 <= trunc; ++m1)
            for (long j1 = 0; j1 <= m1; ++j1)
                for (long k1 = 0; k1 <= j1; ++k1) {
                    const Elt& a = at(m1 - j1, j1 - k1, k1);
                    if (a.is_zero()) continue;
                    for (long m2 = 0; m1 + m2 <= trunc; ++m2)
                        for (long j2 = 0; j2 <= m2; ++j2)
                            for (long k2 = 0; k2 <= j2; ++k2) {
                                const Elt& b = rhs.at(m2 - j2, j2 - k2, k2);
                                if (b.is_zero()) continue;
                                size_t idx = index(m1 - j1 + m2 - j2, j1 - k1 + j2 - k2, k1 + k2);
                                r.c[idx] = r.c[idx] + a * b;
                            }
                }
        return r;
    }

    bool congruent(const TriTrunc& rhs, int prec) const {
        for (size_t t = 0; t < c.size(); ++t)
            if (!c[t].congruent(rhs.c[t], prec)) return false;
        return true;
    }
};

TriTrunc scale(const TriTrunc& t, const Elt& a) {
    TriTrunc r = t;
    for (auto& v : r.c) v = v * a;
    return r;
}

TriTrunc tri_variable(long n, const RingPtr& ring, int which) {
    TriTrunc t(n, ring->zero());
    t.set(which == 0 ? 1 : 0, which == 1 ? 1 : 0, which == 2 ? 1 : 0, ring->one());
    return t;
}

TriTrunc tri_one(long n, const RingPtr& ring) {
    TriTrunc t(n, ring->zero());
    t.set(0, 0, 0, ring->one());
    return t;
}

} // namespace

// ---------------------------------------------------------------------------
// data validation
// ---------------------------------------------------------------------------

Elt norm_to_base(const Elt& x) {
    Elt acc = x;
    Elt cur = x;
    for (int i = 1; i < x.ring()->degree(); ++i) {
        cur = cur.frobenius_map();
        acc = acc * cur;
    }
    for (size_t i = 1; i < acc.coords().size(); ++i)
        if (acc.coords()[i] != 0)
            raise(errc::not_in_base_field, "norm has a nonzero extension coordinate");
    return acc;
}

namespace {

const char* admissibility_defect(const RingPtr& E, const Elt& alpha, const PadicSeries& f) {
    const BigInt& q = E->p(); // residue cardinality of the base
    if (!q.fits_slong_p()) return "prime too large";
    long ql = q.get_si();
    if (f.trunc() < ql) return "f needs coefficients up to degree q";
    if (!f[0].is_zero()) return "f(0) must vanish";
    for (size_t i = 1; i < alpha.coords().size(); ++i)
        if (alpha.coords()[i] != 0) return "alpha must lie in the base";
    Valuation va = alpha.valuation();
    if (!va.finite() || va.value != E->degree()) return "val(alpha) must equal h";
    for (long i = 0; i <= f.trunc(); ++i) {
        Elt residual = (i == ql) ? f[i] - E->one().capped(f[i].precision()) : f[i];
        if (!residual.is_zero() && residual.valuation().value < 1)
            return "f must reduce to T^q mod pi";
    }
    Elt pi = f[1];
    Valuation vpi = pi.valuation();
    if (!vpi.finite() || vpi.value != 1) return "f'(0) must be a uniformizer";
    Elt norm = norm_to_base(pi);
    if (!(norm == alpha)) return "N(f'(0)) must equal alpha";
    return nullptr;
}

} // namespace

bool is_admissible(const RingPtr& E, const Elt& alpha, const PadicSeries& f) {
    return admissibility_defect(E, alpha, f) == nullptr;
}

LubinTateData make_lubin_tate(RingPtr E, Elt alpha, PadicSeries f) {
    if (const char* defect = admissibility_defect(E, alpha, f))
        raise(errc::invalid_argument, defect);
    Elt pi = f[1];
    return LubinTateData{std::move(E), std::move(alpha), std::move(f), std::move(pi)};
}

// ---------------------------------------------------------------------------
// group law and endomorphisms
// ---------------------------------------------------------------------------

FormalGroup group_law(const LubinTateData& data, long degree, PhiLinearSeed seed) {
    if (degree < 1) raise(errc::invalid_argument, "degree must be >= 1");
    const RingPtr& E = data.E;
    RingPtr work = Ring::make(E->p(), E->precision() + static_cast<int>(degree), E->modulus());
    PadicSeries fw = lift_series(at_order(data.f, degree), work);
    Elt pi = lift_to(data.pi, work);

    BivariateTrunc<Elt> s = BivariateTrunc<Elt>::x_plus_y(degree, work->zero());
    std::vector<Elt> pi_pow{work->one(), pi};
    for (long m = 2; m <= degree; ++m) pi_pow.push_back(pi_pow.back() * pi);

    for (long m = 2; m <= degree; ++m) {
        BivariateTrunc<Elt> defect = defining_defect(fw, s);
        for (long j = 0; j <= m; ++j) {
            const Elt& e = defect.at(m - j, j);
            if (e.is_zero()) continue;
            if (e.valuation().value < 1)
                raise(errc::obstruction_not_divisible,
                      "homogeneous obstruction is a unit: f is not admissible");
            Elt c = solve_phi_linear(pi, -pi_pow[static_cast<size_t>(m)], -e, seed);
            s.set(m - j, j, c);
        }
    }

    BivariateTrunc<Elt> final_defect = defining_defect(fw, s);
    for (const auto& c : final_defect.raw())
        if (!c.is_zero())
            raise(errc::precision_exhausted, "defining identity fails at working precision");

    BivariateTrunc<Elt> out(degree, E->zero());
    for (long m = 0; m <= degree; ++m)
        for (long j = 0; j <= m; ++j) out.set(m - j, j, s.at(m - j, j).transport(E));
    return FormalGroup{data, std::move(out), degree};
}

PadicSeries endomorphism(const LubinTateData& data, const Elt& a, long order) {
    if (order < 1) raise(errc::invalid_argument, "order must be >= 1");
    for (size_t i = 1; i < a.coords().size(); ++i)
        if (a.coords()[i] != 0) raise(errc::invalid_argument, "a must lie in the base");
    const RingPtr& E = data.E;
    RingPtr work = Ring::make(E->p(), E->precision() + static_cast<int>(order), E->modulus());
    PadicSeries fw = lift_series(at_order(data.f, order), work).as_series_tail_unknown();
    Elt pi = lift_to(data.pi, work);
    Elt aw = lift_to(a, work);

    std::vector<Elt> c(static_cast<size_t>(order) + 1, work->zero());
    c[1] = aw;
    std::vector<Elt> pi_pow{work->one(), pi};
    for (long m = 2; m <= order; ++m) pi_pow.push_back(pi_pow.back() * pi);

    for (long m = 2; m <= order; ++m) {
        PadicSeries part(std::vector<Elt>(c.begin(), c.begin() + m), m, false);
        PadicSeries lhs = compose(fw.truncated(m), part);
        PadicSeries rhs = compose(twist(part), fw.truncated(m));
        Elt e = lhs[m] - rhs[m];
        if (e.is_zero()) continue;
        if (e.valuation().value < 1)
            raise(errc::obstruction_not_divisible, "endomorphism obstruction is a unit");
        c[static_cast<size_t>(m)] = solve_phi_linear(pi, -pi_pow[static_cast<size_t>(m)], -e);
    }

    PadicSeries out(std::move(c), order, false);
    PadicSeries defect = compose(fw, out) - compose(twist(out), fw);
    for (long i = 0; i <= order; ++i)
        if (!defect[i].is_zero())
            raise(errc::precision_exhausted, "endomorphism identity fails at working precision");
    return lower_series(out, E);
}

PadicSeries group_inverse(const FormalGroup& g) {
    const RingPtr& E = g.data.E;
    long n = g.certified_degree;
    std::vector<Elt> c(static_cast<size_t>(n) + 1, E->zero());
    if (n >= 1) c[1] = -E->one();
    PadicSeries t = PadicSeries::identity(E->zero(), n);
    for (long m = 2; m <= n; ++m) {
        PadicSeries part(std::vector<Elt>(c.begin(), c.begin() + m), n, false);
        PadicSeries err = g.S.subst(t, part);
        c[static_cast<size_t>(m)] = -err[m];
    }
    return PadicSeries(std::move(c), n, false);
}

PadicSeries twist(const PadicSeries& f) {
    std::vector<Elt> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(a.frobenius_map());
    return PadicSeries(std::move(c), f.trunc(), f.polynomial());
}

PadicSeries twisted_iterate(const LubinTateData& data, long order) {
    PadicSeries acc = at_order(data.f, order);
    PadicSeries fi = acc;
    for (int i = 1; i < data.E->degree(); ++i) {
        fi = twist(fi);
        acc = compose(fi.as_series_tail_unknown(), acc.as_series_tail_unknown());
    }
    return acc;
}

// ---------------------------------------------------------------------------
// axiom verification
// ---------------------------------------------------------------------------

bool AxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

AxiomReport verify_group_axioms(const FormalGroup& g,
                                const std::vector<std::pair<long, long>>& pairs) {
    AxiomReport report;
    const RingPtr& E = g.data.E;
    const long n = g.certified_degree;
    const int prec = E->precision();

    PadicSeries t = PadicSeries::identity(E->zero(), n);
    PadicSeries zero = PadicSeries::zero(E->zero(), n);
    report.checks.push_back({"identity-section", series_congruent(g.S.subst(t, zero), t, prec)});
    report.checks.push_back({"commutativity", g.S.symmetric()});

    {
        TriTrunc x = tri_variable(n, E, 0), y = tri_variable(n, E, 1), z = tri_variable(n, E, 2);
        TriTrunc one = tri_one(n, E);
        TriTrunc sxy = subst_into(g.S, x, y, one);
        TriTrunc syz = subst_into(g.S, y, z, one);
        TriTrunc lhs = subst_into(g.S, sxy, z, one);
        TriTrunc rhs = subst_into(g.S, x, syz, one);
        report.checks.push_back({"associativity", lhs.congruent(rhs, prec)});
    }

    {
        BivariateTrunc<Elt> defect = defining_defect(at_order(g.data.f, n), g.S);
        bool ok = true;
        for (const auto& c : defect.raw()) ok = ok && c.is_zero();
        report.checks.push_back({"twisted-defining-identity", ok});
    }

    {
        PadicSeries iota = group_inverse(g);
        PadicSeries back = g.S.subst(t, iota);
        report.checks.push_back({"inverse-section", back.is_zero()});
    }

    for (const auto& [a, b] : pairs) {
        PadicSeries ea = endomorphism(g.data, E->from_integer(a), n);
        PadicSeries eb = endomorphism(g.data, E->from_integer(b), n);
        PadicSeries esum = endomorphism(g.data, E->from_integer(a + b), n);
        PadicSeries eprod = endomorphism(g.data, E->from_integer(a * b), n);
        bool add_ok = series_congruent(g.S.subst(ea, eb), esum, prec);
        bool mul_ok = series_congruent(compose(ea, eb), eprod, prec);
        std::string tag = "[" + std::to_string(a) + "," + std::to_string(b) + "]";
        report.checks.push_back({"add-homomorphism" + tag, add_ok});
        report.checks.push_back({"mul-homomorphism" + tag, mul_ok});
    }

    return report;
}

} // namespace phitower
