#include "phitower/padic_poly.hpp"

#include <algorithm>

namespace phitower {

RPoly::RPoly(RingPtr ring, std::vector<Elt> coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(ring_->zero());
    for (const auto& c : coeffs_)
        if (!c.ring()->same_as(*ring_)) raise(errc::mode_mismatch, "coefficient from another ring");
}

RPoly RPoly::zero(RingPtr ring) {
    auto z = ring->zero();
    return RPoly(std::move(ring), {z});
}

RPoly RPoly::monomial(RingPtr ring, long k, const Elt& c) {
    std::vector<Elt> v(static_cast<size_t>(k) + 1, ring->zero());
    v[static_cast<size_t>(k)] = c;
    return RPoly(std::move(ring), std::move(v));
}

RPoly RPoly::from_integers(RingPtr ring, const std::vector<BigInt>& coeffs) {
    std::vector<Elt> v;
    v.reserve(coeffs.size());
    for (const auto& n : coeffs) v.push_back(ring->from_integer(n));
    return RPoly(std::move(ring), std::move(v));
}

long RPoly::degree() const {
    for (long i = formal_degree(); i >= 0; --i)
        if (!coeffs_[static_cast<size_t>(i)].is_zero()) return i;
    return -1;
}

Elt RPoly::coeff(long i) const {
    if (i < 0 || i > formal_degree()) return ring_->zero();
    return coeffs_[static_cast<size_t>(i)];
}

Elt RPoly::eval(const Elt& x) const {
    Elt acc = ring_->zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RPoly RPoly::operator-() const {
    std::vector<Elt> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(-c);
    return RPoly(ring_, std::move(v));
}

RPoly RPoly::operator+(const RPoly& rhs) const {
    std::vector<Elt> v;
    size_t n = std::max(coeffs_.size(), rhs.coeffs_.size());
    v.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < coeffs_.size() && i < rhs.coeffs_.size())
            v.push_back(coeffs_[i] + rhs.coeffs_[i]);
        else if (i < coeffs_.size())
            v.push_back(coeffs_[i]);
        else
            v.push_back(rhs.coeffs_[i]);
    }
    return RPoly(ring_, std::move(v));
}

RPoly RPoly::operator-(const RPoly& rhs) const { return *this + (-rhs); }

RPoly RPoly::operator*(const RPoly& rhs) const {
    std::vector<Elt> v(coeffs_.size() + rhs.coeffs_.size() - 1, ring_->zero());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j)
            v[i + j] = v[i + j] + coeffs_[i] * rhs.coeffs_[j];
    }
    return RPoly(ring_, std::move(v));
}

RPoly RPoly::scaled(const Elt& c) const {
    std::vector<Elt> v;
    v.reserve(coeffs_.size());
    for (const auto& a : coeffs_) v.push_back(a * c);
    return RPoly(ring_, std::move(v));
}

RPoly RPoly::derivative() const {
    if (coeffs_.size() <= 1) return RPoly::zero(ring_);
    std::vector<Elt> v;
    v.reserve(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        v.push_back(coeffs_[i] * ring_->from_integer(static_cast<long>(i)));
    return RPoly(ring_, std::move(v));
}

RPoly RPoly::compose(const RPoly& inner) const {
    RPoly acc = RPoly::zero(ring_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * inner;
        acc = acc + RPoly(ring_, {*it});
    }
    return acc;
}

RPoly RPoly::truncated(long deg) const {
    if (deg >= formal_degree()) return *this;
    std::vector<Elt> v(coeffs_.begin(), coeffs_.begin() + deg + 1);
    return RPoly(ring_, std::move(v));
}

RPoly RPoly::trimmed() const {
    long d = degree();
    return truncated(std::max<long>(d, 0));
}

std::pair<RPoly, RPoly> RPoly::divmod_monic(const RPoly& num, const RPoly& den) {
    if (!num.ring()->same_as(*den.ring())) raise(errc::mode_mismatch, "divmod across rings");
    long dd = den.formal_degree();
    const Elt& lead = den.coeffs()[static_cast<size_t>(dd)];
    if (!(lead - num.ring()->one().capped(lead.precision())).is_zero())
        raise(errc::invalid_argument, "divmod requires a monic divisor");

    std::vector<Elt> rem = num.coeffs();
    long dn = num.formal_degree();
    if (dn < dd) return {RPoly::zero(num.ring()), num};
    std::vector<Elt> quo(static_cast<size_t>(dn - dd) + 1, num.ring()->zero());
    for (long i = dn; i >= dd; --i) {
        Elt q = rem[static_cast<size_t>(i)];
        if (q.is_zero()) continue;
        quo[static_cast<size_t>(i - dd)] = q;
        for (long j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(i - dd + j)] =
                rem[static_cast<size_t>(i - dd + j)] - q * den.coeffs()[static_cast<size_t>(j)];
    }
    rem.erase(rem.begin() + dd, rem.end());
    if (rem.empty()) rem.push_back(num.ring()->zero());
    return {RPoly(num.ring(), std::move(quo)), RPoly(num.ring(), std::move(rem))};
}

bool RPoly::congruent(const RPoly& rhs, int k) const {
    long n = std::max(formal_degree(), rhs.formal_degree());
    for (long i = 0; i <= n; ++i)
        if (!coeff(i).congruent(rhs.coeff(i), k)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Newton polygons
// ---------------------------------------------------------------------------

long NewtonPolygon::total_length() const {
    long n = zero_order;
    for (const auto& s : segments) n += s.length;
    return n;
}

bool NewtonPolygon::single_slope(const Rational& s, long length) const {
    return zero_order == 0 && segments.size() == 1 && segments[0].slope == s &&
           segments[0].length == length;
}

bool NewtonPolygon::eisenstein(long deg) const {
    return single_slope(Rational(BigInt(1), BigInt(deg)), deg);
}

NewtonPolygon newton_polygon(const RPoly& f) {
    struct Point {
        long i;
        long v;
    };
    std::vector<Point> pts;
    for (long i = 0; i <= f.formal_degree(); ++i) {
        Valuation v = f.coeff(i).valuation();
        if (v.finite()) pts.push_back({i, v.value});
    }
    if (pts.empty()) raise(errc::zero_polynomial, "newton polygon of zero polynomial");

    NewtonPolygon np;
    np.zero_order = pts.front().i;

    // lower convex hull, left to right (monotone chain)
    std::vector<Point> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const Point& a = hull[hull.size() - 2];
            const Point& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a->pt
            if ((b.v - a.v) * (pt.i - a.i) < (pt.v - a.v) * (b.i - a.i)) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }

    // hull slopes increase left to right; root valuations are their negatives,
    // so reverse to list slopes in increasing order
    for (size_t k = hull.size(); k >= 2; --k) {
        const Point& a = hull[k - 2];
        const Point& b = hull[k - 1];
        Rational slope(BigInt(a.v - b.v), BigInt(b.i - a.i));
        slope.canonicalize();
        np.segments.push_back({slope, b.i - a.i});
    }
    return np;
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

Elt hensel_lift_root(const RPoly& f, const Elt& x0) {
    RPoly fp = f.derivative();
    Elt d0 = fp.eval(x0);
    Valuation vd = d0.valuation();
    if (!vd.finite())
        raise(errc::hensel_condition_failed, "f'(x0) indistinguishable from zero");
    long vf = f.eval(x0).valuation_bound();
    if (vf <= 2 * vd.value)
        raise(errc::hensel_condition_failed, "val f(x0) must exceed 2 val f'(x0)");

    Elt x = x0;
    for (int iter = 0; iter < 64; ++iter) {
        Elt fx = f.eval(x);
        if (fx.is_zero()) return x;
        x = x - fx.divide_by(fp.eval(x));
    }
    Elt fx = f.eval(x);
    if (!fx.is_zero()) raise(errc::hensel_condition_failed, "newton iteration did not converge");
    return x;
}

} // namespace phitower
