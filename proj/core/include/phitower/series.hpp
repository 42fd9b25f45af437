#pragma once

#include <algorithm>
#include <vector>

#include "phitower/padic.hpp"

namespace phitower {

// Coefficient operations shared by the two modes (exact rationals, p-adic elements).
inline Rational cf_zero_like(const Rational&) { return Rational(0); }
inline Elt cf_zero_like(const Elt& x) { return x.ring()->zero(); }
inline Rational cf_one_like(const Rational&) { return Rational(1); }
inline Elt cf_one_like(const Elt& x) { return x.ring()->one(); }
inline bool cf_is_zero(const Rational& x) { return x == 0; }
inline bool cf_is_zero(const Elt& x) { return x.is_zero(); }
inline Rational cf_from_long(const Rational&, long n) { return Rational(n); }
inline Elt cf_from_long(const Elt& like, long n) { return like.ring()->from_integer(n); }
inline bool cf_is_unit(const Rational& x) { return x != 0; }
inline bool cf_is_unit(const Elt& x) { return x.is_unit(); }
inline Rational cf_div(const Rational& a, const Rational& b) {
    if (b == 0) raise(errc::not_divisible, "rational division by zero");
    return a / b;
}
inline Elt cf_div(const Elt& a, const Elt& b) { return a.divide_by(b); }

/// Power series truncated at T^(N+1): the object represents a class modulo T^(N+1).
/// When `polynomial()` is true there is no hidden tail: the stored coefficients are the
/// whole series exactly, which sharpens evaluation and norm-operator contracts.
///
/// Operations never fabricate coefficients beyond the minimum of the operand truncation
/// orders. Values are immutable; concurrent use is unrestricted.
template <class C>
class TruncSeries {
  public:
    TruncSeries(std::vector<C> coeffs, long trunc, bool polynomial)
        : coeffs_(std::move(coeffs)), trunc_(trunc), polynomial_(polynomial) {
        if (trunc_ < 0) raise(errc::invalid_argument, "negative truncation order");
        if (coeffs_.empty()) raise(errc::invalid_argument, "series needs a sample coefficient");
        const C like = coeffs_.front();
        // a shorter target order is a truncation: surviving nonzero tail kills the flag
        for (size_t i = static_cast<size_t>(trunc_) + 1; i < coeffs_.size(); ++i)
            if (!cf_is_zero(coeffs_[i])) {
                polynomial_ = false;
                break;
            }
        coeffs_.resize(static_cast<size_t>(trunc_) + 1, cf_zero_like(like));
    }

    /// The polynomial with these coefficients, truncated at max(trunc, degree).
    static TruncSeries polynomial_from(std::vector<C> coeffs, long trunc = -1) {
        long deg = static_cast<long>(coeffs.size()) - 1;
        return TruncSeries(std::move(coeffs), std::max(deg, trunc), true);
    }

    static TruncSeries zero(const C& like, long trunc) {
        return TruncSeries({cf_zero_like(like)}, trunc, true);
    }

    static TruncSeries identity(const C& like, long trunc) {
        std::vector<C> c{cf_zero_like(like), cf_one_like(like)};
        return TruncSeries(std::move(c), trunc, true);
    }

    long trunc() const { return trunc_; }
    bool polynomial() const { return polynomial_; }
    const std::vector<C>& coeffs() const { return coeffs_; }

    const C& operator[](long i) const { return coeffs_[static_cast<size_t>(i)]; }

    /// Last index with a nonzero coefficient; -1 when all vanish.
    long degree() const {
        for (long i = trunc_; i >= 0; --i)
            if (!cf_is_zero(coeffs_[static_cast<size_t>(i)])) return i;
        return -1;
    }

    bool is_zero() const { return degree() < 0; }

    TruncSeries with_coeff(long i, C v) const {
        TruncSeries r = *this;
        r.coeffs_[static_cast<size_t>(i)] = std::move(v);
        return r;
    }

    TruncSeries truncated(long n) const {
        if (n >= trunc_) return *this;
        std::vector<C> c(coeffs_.begin(), coeffs_.begin() + n + 1);
        bool poly = polynomial_ && degree() <= n;
        return TruncSeries(std::move(c), n, poly);
    }

    /// Raise the truncation order; legitimate only for polynomials, whose tail is
    /// known to vanish.
    TruncSeries extended(long n) const {
        if (n <= trunc_) return *this;
        if (!polynomial_)
            raise(errc::insufficient_truncation, "cannot extend a truncated series");
        return TruncSeries(coeffs_, n, true);
    }

    TruncSeries as_series_tail_unknown() const { return TruncSeries(coeffs_, trunc_, false); }

  private:
    std::vector<C> coeffs_;
    long trunc_;
    bool polynomial_;
};

using RatSeries = TruncSeries<Rational>;
using PadicSeries = TruncSeries<Elt>;

template <class C>
TruncSeries<C> operator-(const TruncSeries<C>& f) {
    std::vector<C> c;
    c.reserve(f.coeffs().size());
    for (const auto& a : f.coeffs()) c.push_back(-a);
    return TruncSeries<C>(std::move(c), f.trunc(), f.polynomial());
}

template <class C>
TruncSeries<C> operator+(const TruncSeries<C>& f, const TruncSeries<C>& g) {
    long n = std::min(f.trunc(), g.trunc());
    std::vector<C> c;
    c.reserve(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) c.push_back(f[i] + g[i]);
    bool poly = f.polynomial() && g.polynomial() && f.degree() <= n && g.degree() <= n;
    return TruncSeries<C>(std::move(c), n, poly);
}

template <class C>
TruncSeries<C> operator-(const TruncSeries<C>& f, const TruncSeries<C>& g) { return f + (-g); }

template <class C>
TruncSeries<C> operator*(const TruncSeries<C>& f, const TruncSeries<C>& g) {
    long n = std::min(f.trunc(), g.trunc());
    const C like = cf_zero_like(f[0]);
    std::vector<C> c(static_cast<size_t>(n) + 1, like);
    for (long i = 0; i <= std::min(n, f.trunc()); ++i) {
        if (cf_is_zero(f[i])) continue;
        for (long j = 0; i + j <= n && j <= g.trunc(); ++j) {
            if (cf_is_zero(g[j])) continue;
            c[static_cast<size_t>(i + j)] = c[static_cast<size_t>(i + j)] + f[i] * g[j];
        }
    }
    bool poly = f.polynomial() && g.polynomial() && f.degree() + g.degree() <= n;
    return TruncSeries<C>(std::move(c), n, poly);
}

template <class C>
TruncSeries<C> scale(const TruncSeries<C>& f, const C& a) {
    std::vector<C> c;
    c.reserve(f.coeffs().size());
    for (const auto& b : f.coeffs()) c.push_back(b * a);
    return TruncSeries<C>(std::move(c), f.trunc(), f.polynomial());
}

template <class C>
bool series_equal(const TruncSeries<C>& f, const TruncSeries<C>& g, long upto = -1) {
    long n = (upto >= 0) ? upto : std::min(f.trunc(), g.trunc());
    for (long i = 0; i <= n; ++i)
        if (!cf_is_zero(f[i] - g[i])) return false;
    return true;
}

/// Formal derivative; truncation drops to N-1.
template <class C>
TruncSeries<C> derivative(const TruncSeries<C>& f) {
    if (f.trunc() == 0) return TruncSeries<C>::zero(f[0], 0);
    std::vector<C> c;
    c.reserve(static_cast<size_t>(f.trunc()));
    for (long i = 1; i <= f.trunc(); ++i) c.push_back(f[i] * cf_from_long(f[i], i));
    return TruncSeries<C>(std::move(c), f.trunc() - 1, f.polynomial());
}

namespace detail {

inline long substitution_tail_val(const Rational& g0) {
    if (g0 != 0) raise(errc::nonzero_constant_term, "compose needs g(0) = 0 in exact mode");
    return 0;
}

inline long substitution_tail_val(const Elt& g0) {
    Valuation v = g0.valuation();
    if (v.value < 1)
        raise(errc::nonzero_constant_term, "compose needs val(g(0)) >= 1 in p-adic mode");
    return v.value; // precision bound when g(0) is indistinguishable from zero
}

inline Rational cap_precision(const Rational& c, long) { return c; }
inline Elt cap_precision(const Elt& c, long k) { return c.capped(static_cast<int>(k)); }

} // namespace detail

/// f composed with g modulo T^(min(Nf, Ng)+1). g must vanish at 0 (exact mode); in
/// p-adic mode a constant term of valuation w >= 1 is admitted, with the coefficient of
/// T^j reported only modulo p^((N+1-j) w) since the unknown tail of f contributes there.
template <class C>
TruncSeries<C> compose(const TruncSeries<C>& f, const TruncSeries<C>& g) {
    long n = std::min(f.trunc(), g.trunc());
    long w = f.polynomial() ? 0 : detail::substitution_tail_val(g[0]);
    TruncSeries<C> acc = TruncSeries<C>::zero(f[0], n);
    TruncSeries<C> gt = g.truncated(n);
    for (long k = f.trunc(); k >= 0; --k) {
        acc = acc * gt;
        acc = acc + TruncSeries<C>::polynomial_from({f[k]}, n);
    }
    bool poly = f.polynomial() && g.polynomial() &&
                (f.degree() <= 0 || g.degree() <= 0 ||
                 f.degree() * std::max<long>(g.degree(), 0) <= n);
    if (w > 0) {
        std::vector<C> c;
        c.reserve(static_cast<size_t>(n) + 1);
        for (long j = 0; j <= n; ++j) c.push_back(detail::cap_precision(acc[j], (n + 1 - j) * w));
        return TruncSeries<C>(std::move(c), n, false);
    }
    return TruncSeries<C>(acc.coeffs(), n, poly);
}

/// Compositional inverse: the unique g with f(g) = g(f) = T mod T^(N+1).
/// Requires f(0) = 0 and a unit linear coefficient.
template <class C>
TruncSeries<C> reversion(const TruncSeries<C>& f) {
    if (!cf_is_zero(f[0])) raise(errc::nonzero_constant_term, "reversion needs f(0) = 0");
    if (f.trunc() < 1 || !cf_is_unit(f[1]))
        raise(errc::non_unit_linear_term, "reversion needs a unit linear coefficient");
    const C like = f[0];
    long n = f.trunc();
    C inv1 = cf_div(cf_one_like(like), f[1]);
    std::vector<C> g{cf_zero_like(like), inv1};
    for (long m = 2; m <= n; ++m) {
        TruncSeries<C> partial(std::vector<C>(g), m, false);
        TruncSeries<C> err = compose(f.truncated(m).as_series_tail_unknown(), partial);
        g.push_back(cf_div(-err[m], f[1]));
    }
    return TruncSeries<C>(std::move(g), n, false);
}

/// Horner evaluation of an exact-mode series; requires a polynomial (there is no
/// archimedean convergence story for rational arguments).
inline Rational evaluate(const RatSeries& f, const Rational& x) {
    if (!f.polynomial())
        raise(errc::divergent_evaluation, "exact-mode evaluation needs a polynomial");
    Rational acc(0);
    for (long i = f.trunc(); i >= 0; --i) acc = acc * x + f[i];
    return acc;
}

/// Horner evaluation at a p-adic point. Polynomials evaluate exactly; a truncated
/// series needs val(x) >= 1 and the result precision accounts for the unknown tail,
/// whose valuation is at least (N+1) val(x).
inline Elt evaluate(const PadicSeries& f, const Elt& x) {
    Elt acc = x.ring()->zero();
    if (f.polynomial()) {
        for (long i = f.trunc(); i >= 0; --i) acc = acc * x + f[i];
        return acc;
    }
    long w = x.valuation_bound();
    if (w < 1)
        raise(errc::divergent_evaluation, "series evaluation needs val(x) >= 1");
    for (long i = f.trunc(); i >= 0; --i) acc = acc * x + f[i];
    long cap = std::min<long>((f.trunc() + 1) * w, acc.precision());
    return acc.capped(static_cast<int>(cap));
}

/// Exact-to-p-adic coefficient conversion (never the reverse). Coefficients must be
/// p-integral.
inline PadicSeries to_padic(const RatSeries& f, const RingPtr& ring) {
    std::vector<Elt> c;
    c.reserve(f.coeffs().size());
    for (const auto& q : f.coeffs()) {
        if (!is_p_integral(q, ring->p()))
            raise(errc::not_divisible, "coefficient is not p-integral");
        Elt num = ring->from_integer(q.get_num());
        Elt den = ring->from_integer(q.get_den());
        c.push_back(num.divide_by(den));
    }
    return PadicSeries(std::move(c), f.trunc(), f.polynomial());
}

inline bool is_integral(const RatSeries& f) {
    for (const auto& q : f.coeffs())
        if (!is_integer(q)) return false;
    return true;
}

inline bool is_p_integral(const RatSeries& f, const BigInt& p) {
    for (const auto& q : f.coeffs())
        if (!is_p_integral(q, p)) return false;
    return true;
}

/// min p-adic valuation over coefficients up to T^upto (kValInfinity when all vanish).
inline long min_coeff_val(const RatSeries& f, const BigInt& p, long upto = -1) {
    long n = (upto >= 0) ? std::min(upto, f.trunc()) : f.trunc();
    long v = kValInfinity;
    for (long i = 0; i <= n; ++i) v = std::min(v, val_rat(f[i], p));
    return v;
}

/// f usable at exactly the given truncation order: polynomials extend freely, genuine
/// truncated series must already be known that far.
template <class C>
TruncSeries<C> at_order(const TruncSeries<C>& f, long order) {
    if (f.polynomial()) return f.extended(order).truncated(order);
    if (f.trunc() < order)
        raise(errc::insufficient_truncation, "series known to too low an order");
    return f.truncated(order);
}

/// Coefficientwise congruence mod p^k up to T^upto (default: common truncation).
inline bool series_congruent(const PadicSeries& f, const PadicSeries& g, int k, long upto = -1) {
    long n = (upto >= 0) ? upto : std::min(f.trunc(), g.trunc());
    for (long i = 0; i <= n; ++i)
        if (!f[i].congruent(g[i], k)) return false;
    return true;
}

/// Bivariate series truncated by total degree: coefficients c_{ij} for i+j <= N,
/// stored in homogeneous blocks (the order a degree-by-degree solve consumes them).
template <class C>
class BivariateTrunc {
  public:
    BivariateTrunc(long trunc, const C& like)
        : trunc_(trunc), coeffs_(size_for(trunc), cf_zero_like(like)) {
        if (trunc_ < 0) raise(errc::invalid_argument, "negative truncation order");
    }

    static size_t size_for(long n) { return static_cast<size_t>((n + 1) * (n + 2) / 2); }
    static size_t index(long i, long j) {
        long m = i + j;
        return static_cast<size_t>(m * (m + 1) / 2 + j);
    }

    long trunc() const { return trunc_; }
    const C& at(long i, long j) const { return coeffs_[index(i, j)]; }
    void set(long i, long j, C v) { coeffs_[index(i, j)] = std::move(v); }
    const std::vector<C>& raw() const { return coeffs_; }

    /// X + Y, the seed of every group-law construction.
    static BivariateTrunc x_plus_y(long trunc, const C& like) {
        BivariateTrunc s(trunc, like);
        s.set(1, 0, cf_one_like(like));
        s.set(0, 1, cf_one_like(like));
        return s;
    }

    BivariateTrunc operator-() const {
        BivariateTrunc r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    BivariateTrunc operator+(const BivariateTrunc& rhs) const {
        require_same_trunc(rhs);
        BivariateTrunc r = *this;
        for (size_t k = 0; k < coeffs_.size(); ++k) r.coeffs_[k] = r.coeffs_[k] + rhs.coeffs_[k];
        return r;
    }

    BivariateTrunc operator-(const BivariateTrunc& rhs) const { return *this + (-rhs); }

    BivariateTrunc operator*(const BivariateTrunc& rhs) const {
        require_same_trunc(rhs);
        BivariateTrunc r(trunc_, cf_zero_like(coeffs_[0]));
        for (long m1 = 0; m1 <= trunc_; ++m1)
            for (long j1 = 0; j1 <= m1; ++j1) {
                const C& a = at(m1 - j1, j1);
                if (cf_is_zero(a)) continue;
                for (long m2 = 0; m1 + m2 <= trunc_; ++m2)
                    for (long j2 = 0; j2 <= m2; ++j2) {
                        const C& b = rhs.at(m2 - j2, j2);
                        if (cf_is_zero(b)) continue;
                        size_t k = index(m1 + m2 - j1 - j2, j1 + j2);
                        r.coeffs_[k] = r.coeffs_[k] + a * b;
                    }
            }
        return r;
    }

    template <class F>
    BivariateTrunc map_coeffs(F&& fn) const {
        BivariateTrunc r = *this;
        for (auto& c : r.coeffs_) c = fn(c);
        return r;
    }

    bool symmetric() const {
        for (long m = 0; m <= trunc_; ++m)
            for (long j = 0; j <= m; ++j)
                if (!cf_is_zero(at(m - j, j) - at(j, m - j))) return false;
        return true;
    }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return cf_is_zero(c); });
    }

    /// Substitute univariate series for X and Y; the usual shape checks apply
    /// (arguments must vanish at 0). Result truncation: min of all orders.
    TruncSeries<C> subst(const TruncSeries<C>& x, const TruncSeries<C>& y) const;

  private:
    void require_same_trunc(const BivariateTrunc& rhs) const {
        if (trunc_ != rhs.trunc_) raise(errc::mode_mismatch, "bivariate truncation mismatch");
    }

    long trunc_;
    std::vector<C> coeffs_;
};

template <class C>
BivariateTrunc<C> scale(const BivariateTrunc<C>& s, const C& a) {
    return s.map_coeffs([&](const C& c) { return c * a; });
}

/// sum of c_ij A^i B^j over an algebra with +, * and scale-by-coefficient.
template <class Alg, class C>
Alg subst_into(const BivariateTrunc<C>& s, const Alg& a, const Alg& b, const Alg& one_alg) {
    long n = s.trunc();
    std::vector<Alg> apow{one_alg}, bpow{one_alg};
    for (long i = 1; i <= n; ++i) apow.push_back(apow.back() * a);
    for (long j = 1; j <= n; ++j) bpow.push_back(bpow.back() * b);
    Alg acc = scale(one_alg, cf_zero_like(s.at(0, 0)));
    for (long m = 0; m <= n; ++m)
        for (long j = 0; j <= m; ++j) {
            const C& c = s.at(m - j, j);
            if (cf_is_zero(c)) continue;
            acc = acc + scale(apow[static_cast<size_t>(m - j)] * bpow[static_cast<size_t>(j)], c);
        }
    return acc;
}

template <class C>
TruncSeries<C> BivariateTrunc<C>::subst(const TruncSeries<C>& x, const TruncSeries<C>& y) const {
    if (!cf_is_zero(x[0]) || !cf_is_zero(y[0]))
        raise(errc::nonzero_constant_term, "bivariate substitution needs arguments with x(0) = 0");
    long n = std::min({trunc_, x.trunc(), y.trunc()});
    TruncSeries<C> one = TruncSeries<C>::polynomial_from({cf_one_like(coeffs_[0])}, n);
    return subst_into(*this, x.truncated(n), y.truncated(n), one);
}

} // namespace phitower
