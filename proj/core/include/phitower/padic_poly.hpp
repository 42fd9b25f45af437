#pragma once

#include <utility>
#include <vector>

#include "phitower/padic.hpp"

namespace phitower {

/// Dense polynomial over a Ring, constant term first. Coefficients keep their own
/// known precision; all operations are coefficientwise-exact ring arithmetic.
class RPoly {
  public:
    RPoly(RingPtr ring, std::vector<Elt> coeffs);
    static RPoly zero(RingPtr ring);
    static RPoly monomial(RingPtr ring, long k, const Elt& c);
    static RPoly from_integers(RingPtr ring, const std::vector<BigInt>& coeffs);

    const RingPtr& ring() const { return ring_; }
    /// Formal degree (size - 1); stored zero coefficients count.
    long formal_degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    /// Last index with a coefficient not indistinguishable from zero; -1 for zero.
    long degree() const;
    const std::vector<Elt>& coeffs() const { return coeffs_; }
    /// Coefficient access, zero beyond the stored range.
    Elt coeff(long i) const;

    bool is_zero() const { return degree() < 0; }

    Elt eval(const Elt& x) const;

    RPoly operator-() const;
    RPoly operator+(const RPoly& rhs) const;
    RPoly operator-(const RPoly& rhs) const;
    RPoly operator*(const RPoly& rhs) const;
    RPoly scaled(const Elt& c) const;

    RPoly derivative() const;
    RPoly compose(const RPoly& inner) const;

    /// Drop stored coefficients beyond index deg.
    RPoly truncated(long deg) const;
    /// Drop exactly-zero leading coefficients.
    RPoly trimmed() const;

    /// Quotient and remainder by a monic divisor (leading coefficient exactly 1).
    static std::pair<RPoly, RPoly> divmod_monic(const RPoly& num, const RPoly& den);

    bool congruent(const RPoly& rhs, int k) const;

  private:
    RingPtr ring_;
    std::vector<Elt> coeffs_;
};

struct NewtonSegment {
    Rational slope; // valuation of the corresponding roots (positive slope convention)
    long length;    // number of roots, with multiplicity

    friend bool operator==(const NewtonSegment& a, const NewtonSegment& b) {
        return a.length == b.length && cmp(a.slope, b.slope) == 0;
    }
};

/// Newton polygon of a polynomial: zero_order copies of the root 0, then segments with
/// strictly increasing slopes. Slopes are the negatives of the lower-convex-hull slopes
/// of {(i, val(c_i)) : c_i != 0}, so a segment of slope s and length L certifies L roots
/// of valuation s.
struct NewtonPolygon {
    long zero_order = 0;
    std::vector<NewtonSegment> segments;

    long total_length() const;
    bool single_slope(const Rational& s, long length) const;
    /// Monic, one slope 1/deg of full length: the Eisenstein shape.
    bool eisenstein(long deg) const;

    friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) {
        return a.zero_order == b.zero_order && a.segments == b.segments;
    }
};

/// Coefficients indistinguishable from zero are treated as zero; throws zero_polynomial
/// when nothing nonzero remains.
NewtonPolygon newton_polygon(const RPoly& f);

/// Single-slope / simple-root lifting: from val(f(x0)) > 2 val(f'(x0)), Newton-iterate
/// to a root at ring precision, congruent to x0 modulo p^(val f(x0) - val f'(x0)).
/// Throws hensel_condition_failed.
Elt hensel_lift_root(const RPoly& f, const Elt& x0);

} // namespace phitower
