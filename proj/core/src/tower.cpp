#include "phitower/tower.hpp"

#include <algorithm>

namespace phitower {

namespace {

bool is_power_of(long d, const BigInt& q) {
    BigInt n = d;
    if (n < q) return false;
    while (n > 1) {
        if (!mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) return false;
        n /= q;
    }
    return true;
}

long pow_long(long b, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// determinant by dynamic programming over column subsets (exact, division-free)
RPoly det_subsets(const std::vector<std::vector<RPoly>>& m, const RingPtr& ring) {
    const size_t n = m.size();
    std::vector<RPoly> dp(static_cast<size_t>(1) << n, RPoly::zero(ring));
    dp[0] = RPoly(ring, {ring->one()});
    for (size_t mask = 1; mask < dp.size(); ++mask) {
        size_t row = static_cast<size_t>(__builtin_popcountll(mask)) - 1;
        RPoly acc = RPoly::zero(ring);
        size_t pos = 0;
        for (size_t j = 0; j < n; ++j) {
            if (!(mask & (size_t(1) << j))) continue;
            RPoly term = m[row][j] * dp[mask ^ (size_t(1) << j)];
            acc = ((row + pos) % 2 == 0) ? acc + term : acc - term;
            ++pos;
        }
        dp[mask] = std::move(acc);
    }
    return dp.back();
}

} // namespace

// ---------------------------------------------------------------------------
// TowerContext
// ---------------------------------------------------------------------------

TowerContext::TowerContext(RingPtr ring, RPoly P, Elt u0, long max_level)
    : ring_(std::move(ring)), P_(P.trimmed()), d_(P_.formal_degree()), u0_(std::move(u0)),
      max_level_(max_level) {
    if (max_level_ < 0) raise(errc::invalid_argument, "tower needs max_level >= 0");
    if (!P_.ring()->same_as(*ring_) || !u0_.ring()->same_as(*ring_))
        raise(errc::mode_mismatch, "tower data from another ring");
    if (d_ < 2) raise(errc::invalid_argument, "iterate polynomial must have degree >= 2");
    if (d_ % 2 == 0) raise(errc::invalid_argument, "iterate degree must be odd");
    if (!is_power_of(d_, ring_->residue_cardinality()))
        raise(errc::invalid_argument, "iterate degree must be a power of the residue cardinality");
    if (!(P_.coeff(d_) - ring_->one()).is_zero())
        raise(errc::invalid_argument, "iterate polynomial must be monic");
    if (!P_.coeff(0).is_zero())
        raise(errc::invalid_argument, "iterate polynomial must have zero constant term");
    for (long i = 1; i < d_; ++i) {
        if (P_.coeff(i).is_zero()) continue;
        if (P_.coeff(i).valuation().value < 1)
            raise(errc::invalid_argument, "lower coefficients of P must have valuation >= 1");
    }
    Valuation v0 = u0_.valuation();
    if (!v0.finite() || v0.value != 1)
        raise(errc::inconsistent_valuation, "u0 must have valuation exactly 1");

    Q_.reserve(static_cast<size_t>(max_level_) + 1);
    RPoly iter = RPoly::from_integers(ring_, {BigInt(0), BigInt(1)}); // P^0 = T
    for (long n = 0; n <= max_level_; ++n) {
        if (n > 0) iter = P_.compose(iter).trimmed();
        RPoly qn = (iter - RPoly(ring_, {u0_})).trimmed();
        if (!newton_polygon(qn).eisenstein(pow_long(d_, n)))
            raise(errc::invalid_argument, "level modulus is not Eisenstein");
        Q_.push_back(std::move(qn));
    }
}

const RPoly& TowerContext::level_modulus(long n) const {
    if (n < 0 || n > max_level_) raise(errc::invalid_argument, "level out of range");
    return Q_[static_cast<size_t>(n)];
}

long TowerContext::level_degree(long n) const { return pow_long(d_, n); }

// ---------------------------------------------------------------------------
// TowerElement
// ---------------------------------------------------------------------------

int TowerElement::precision() const {
    int k = rep.ring()->precision();
    for (const auto& c : rep.coeffs()) k = std::min(k, c.precision());
    return k;
}

TowerElement tower_element(const TowerContext& ctx, long level, const RPoly& rep) {
    if (level < 0 || level > ctx.max_level()) raise(errc::invalid_argument, "level out of range");
    RPoly reduced = RPoly::divmod_monic(rep, ctx.level_modulus(level)).second;
    return TowerElement{level, std::move(reduced)};
}

TowerElement tower_constant(const TowerContext& ctx, long level, const Elt& c) {
    return tower_element(ctx, level, RPoly(ctx.ring(), {c}));
}

TowerElement tower_uniformizer(const TowerContext& ctx, long level) {
    return tower_element(ctx, level,
                         RPoly(ctx.ring(), {ctx.ring()->zero(), ctx.ring()->one()}));
}

Valuation tower_valuation(const TowerContext& ctx, const TowerElement& x) {
    // val(sum c_i u_n^i) = min_i (d^n val(c_i) + i): the terms have pairwise distinct
    // valuations (distinct residues mod d^n), so the minimum is attained exactly.
    long D = ctx.level_degree(x.level);
    long exact = kValInfinity;
    long bound = kValInfinity;
    for (long i = 0; i <= x.rep.formal_degree(); ++i) {
        Valuation v = x.rep.coeff(i).valuation();
        if (v.finite())
            exact = std::min(exact, D * v.value + i);
        else
            bound = std::min(bound, D * v.value + i);
    }
    if (exact <= bound) return Valuation{exact, false};
    return Valuation{bound, true};
}

bool tower_congruent(const TowerElement& a, const TowerElement& b, int k) {
    if (a.level != b.level) return false;
    return a.rep.congruent(b.rep, k);
}

TowerElement tower_add(const TowerContext& ctx, const TowerElement& a, const TowerElement& b) {
    if (a.level != b.level) raise(errc::mode_mismatch, "levels differ");
    return tower_element(ctx, a.level, a.rep + b.rep);
}

TowerElement tower_mul(const TowerContext& ctx, const TowerElement& a, const TowerElement& b) {
    if (a.level != b.level) raise(errc::mode_mismatch, "levels differ");
    return tower_element(ctx, a.level, a.rep * b.rep);
}

TowerElement tower_divide_by_uniformizer(const TowerContext& ctx, const TowerElement& x) {
    const RPoly& q = ctx.level_modulus(x.level);
    long D = ctx.level_degree(x.level);
    if (x.level == 0) {
        return TowerElement{0, RPoly(ctx.ring(), {x.rep.coeff(0).divide_by(ctx.u0())})};
    }
    // T y = x mod Q_n with Q_n = T^D + q_{D-1} T^{D-1} + ... + q_1 T - u0
    Elt top = x.rep.coeff(0).divide_by(ctx.u0());
    std::vector<Elt> y(static_cast<size_t>(D), ctx.ring()->zero());
    y[static_cast<size_t>(D - 1)] = top;
    for (long i = 1; i <= D - 1; ++i)
        y[static_cast<size_t>(i - 1)] = x.rep.coeff(i) + top * q.coeff(i);
    return TowerElement{x.level, RPoly(ctx.ring(), std::move(y))};
}

TowerElement evaluate(const TowerContext& ctx, const PadicSeries& f, const TowerElement& x) {
    TowerElement acc = tower_constant(ctx, x.level, ctx.ring()->zero());
    long cap = 0;
    if (!f.polynomial()) {
        Valuation w = tower_valuation(ctx, x);
        if (w.value < 1)
            raise(errc::divergent_evaluation, "series evaluation needs val(x) >= 1");
        cap = ((f.trunc() + 1) * w.value) / ctx.level_degree(x.level);
        cap = std::min<long>(cap, ctx.ring()->precision());
        if (cap < 1) raise(errc::precision_exhausted, "truncation tail swallows every digit");
    }
    for (long i = f.trunc(); i >= 0; --i) {
        acc = tower_mul(ctx, acc, x);
        acc = tower_add(ctx, acc, tower_constant(ctx, x.level, f[i]));
    }
    if (cap > 0) {
        std::vector<Elt> capped;
        capped.reserve(acc.rep.coeffs().size());
        for (const auto& c : acc.rep.coeffs()) capped.push_back(c.capped(static_cast<int>(cap)));
        acc.rep = RPoly(ctx.ring(), std::move(capped));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// norm and trace operators
// ---------------------------------------------------------------------------

namespace {

// digits of f in base P: f = sum digits[k] * P^k with deg(digits[k]) < d
std::vector<RPoly> base_p_digits(const TowerContext& ctx, const RPoly& f) {
    std::vector<RPoly> digits;
    RPoly cur = f;
    while (true) {
        if (cur.formal_degree() < ctx.degree()) {
            digits.push_back(cur);
            break;
        }
        auto [q, r] = RPoly::divmod_monic(cur, ctx.iterate_poly());
        digits.push_back(r);
        cur = q;
    }
    return digits;
}

// multiplication-by-f matrix on the basis 1, T, ..., T^{d-1}; entries in O_K[U]
std::vector<std::vector<RPoly>> multiplication_matrix(const TowerContext& ctx, const RPoly& f) {
    const long d = ctx.degree();
    const RingPtr& ring = ctx.ring();
    std::vector<std::vector<RPoly>> m(static_cast<size_t>(d),
                                      std::vector<RPoly>(static_cast<size_t>(d), RPoly::zero(ring)));
    RPoly shifted = f;
    for (long i = 0; i < d; ++i) {
        auto digits = base_p_digits(ctx, shifted);
        for (long j = 0; j < d; ++j) {
            std::vector<Elt> entry;
            entry.reserve(digits.size());
            for (const auto& dig : digits) entry.push_back(dig.coeff(j));
            m[static_cast<size_t>(j)][static_cast<size_t>(i)] = RPoly(ring, std::move(entry));
        }
        if (i + 1 < d)
            shifted = RPoly::monomial(ring, 1, ring->one()) * shifted;
    }
    return m;
}

RPoly representative_polynomial(const TowerContext& ctx, const PadicSeries& f, long out_order) {
    if (!f.polynomial() && f.trunc() < ctx.degree() * out_order)
        raise(errc::insufficient_truncation,
              "norm operator needs the input modulo T^(d*N+1)");
    long upto = f.polynomial() ? f.trunc() : ctx.degree() * out_order;
    std::vector<Elt> c;
    c.reserve(static_cast<size_t>(upto) + 1);
    for (long i = 0; i <= upto; ++i) c.push_back(f[i]);
    return RPoly(ctx.ring(), std::move(c));
}

PadicSeries poly_to_series(const RPoly& g, long out_order, bool polynomial) {
    std::vector<Elt> c;
    c.reserve(static_cast<size_t>(out_order) + 1);
    for (long i = 0; i <= out_order; ++i) c.push_back(g.coeff(i));
    bool poly = polynomial && g.degree() <= out_order;
    return PadicSeries(std::move(c), out_order, poly);
}

} // namespace

RPoly norm_poly(const TowerContext& ctx, const RPoly& f) {
    return det_subsets(multiplication_matrix(ctx, f), ctx.ring());
}

RPoly trace_poly(const TowerContext& ctx, const RPoly& f) {
    auto m = multiplication_matrix(ctx, f);
    RPoly acc = RPoly::zero(ctx.ring());
    for (size_t i = 0; i < m.size(); ++i) acc = acc + m[i][i];
    return acc;
}

PadicSeries norm_operator(const TowerContext& ctx, const PadicSeries& f, long out_order) {
    RPoly rep = representative_polynomial(ctx, f, out_order);
    return poly_to_series(norm_poly(ctx, rep), out_order, f.polynomial());
}

PadicSeries trace_operator(const TowerContext& ctx, const PadicSeries& f, long out_order) {
    RPoly rep = representative_polynomial(ctx, f, out_order);
    return poly_to_series(trace_poly(ctx, rep), out_order, f.polynomial());
}

TowerElement tower_norm(const TowerContext& ctx, const TowerElement& x) {
    if (x.level == 0) raise(errc::level_zero, "cannot norm below the base");
    return tower_element(ctx, x.level - 1, norm_poly(ctx, x.rep));
}

// ---------------------------------------------------------------------------
// Coleman recovery
// ---------------------------------------------------------------------------

NormCompatibleSequence sequence_from_poly(const TowerContext& ctx, const RPoly& g, long m) {
    NormCompatibleSequence s;
    s.elems.reserve(static_cast<size_t>(m) + 1);
    for (long n = 0; n <= m; ++n) s.elems.push_back(tower_element(ctx, n, g));
    return s;
}

bool is_norm_compatible(const TowerContext& ctx, const NormCompatibleSequence& x) {
    for (size_t n = 0; n + 1 < x.elems.size(); ++n) {
        TowerElement down = tower_norm(ctx, x.elems[n + 1]);
        int k = std::min(down.precision(), x.elems[n].precision());
        if (!tower_congruent(down, x.elems[n], k)) return false;
    }
    return true;
}

ColemanRecovery coleman_recover(const TowerContext& ctx, const NormCompatibleSequence& x, long j) {
    if (j < 0) raise(errc::invalid_argument, "negative certificate depth");
    if (x.top_level() < 2 * j) raise(errc::tower_too_shallow, "recovery needs levels 0..2j");
    if (j + 1 > ctx.ring()->precision())
        raise(errc::precision_exhausted, "ring precision below the requested certificate");
    for (size_t n = 0; n < x.elems.size(); ++n) {
        if (static_cast<long>(n) != x.elems[n].level)
            raise(errc::invalid_argument, "sequence levels must be 0..m in order");
        Valuation v = tower_valuation(ctx, x.elems[n]);
        if (!v.finite() || v.value != 0) raise(errc::not_unit, "recovery needs unit terms");
    }
    if (!is_norm_compatible(ctx, x))
        raise(errc::not_norm_compatible, "norms do not telescope");

    RPoly f = x.elems[static_cast<size_t>(2 * j)].rep;
    for (long k = 0; k < j; ++k) f = norm_poly(ctx, f);

    ColemanRecovery out{
        poly_to_series(f, std::max<long>(f.degree(), 1), true),
        j + 1,
        j,
        true,
        0,
    };
    for (long n = 0; n <= j; ++n) {
        TowerElement val = evaluate(ctx, out.series, tower_uniformizer(ctx, n));
        if (!tower_congruent(val, x.elems[static_cast<size_t>(n)], static_cast<int>(j + 1)))
            out.certificate_ok = false;
    }
    return out;
}

std::pair<long, NormCompatibleSequence> factor_by_uniformizer(const TowerContext& ctx,
                                                              const NormCompatibleSequence& x) {
    long e = -1;
    for (const auto& el : x.elems) {
        Valuation v = tower_valuation(ctx, el);
        if (!v.finite()) raise(errc::invalid_argument, "zero term in sequence");
        if (e < 0)
            e = v.value;
        else if (e != v.value)
            raise(errc::inconsistent_valuation, "uniformizer exponent differs across levels");
    }
    NormCompatibleSequence units;
    units.elems.reserve(x.elems.size());
    for (const auto& el : x.elems) {
        TowerElement u = el;
        for (long k = 0; k < e; ++k) u = tower_divide_by_uniformizer(ctx, u);
        units.elems.push_back(std::move(u));
    }
    return {e, std::move(units)};
}

ColemanRecovery coleman_series(const TowerContext& ctx, const NormCompatibleSequence& x, long j) {
    auto [e, units] = factor_by_uniformizer(ctx, x);
    ColemanRecovery rec = coleman_recover(ctx, units, j);
    if (e > 0) {
        PadicSeries shift = PadicSeries::polynomial_from(
            std::vector<Elt>(static_cast<size_t>(e) + 1, ctx.ring()->zero()), e)
                                .with_coeff(e, ctx.ring()->one());
        long order = rec.series.trunc() + e;
        rec.series = shift.extended(order) * rec.series.extended(order);
        // re-certify against the original sequence
        rec.certificate_ok = true;
        for (long n = 0; n <= j; ++n) {
            TowerElement val = evaluate(ctx, rec.series, tower_uniformizer(ctx, n));
            if (!tower_congruent(val, x.elems[static_cast<size_t>(n)],
                                 static_cast<int>(j + 1)))
                rec.certificate_ok = false;
        }
    }
    rec.uniformizer_exponent = e;
    return rec;
}

} // namespace phitower
