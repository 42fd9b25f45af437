#pragma once

#include <memory>
#include <string>
#include <vector>

#include "phitower/bigint.hpp"
#include "phitower/errors.hpp"

namespace phitower {

class Ring;
class Elt;
using RingPtr = std::shared_ptr<const Ring>;

/// Result of valuation(): either an exact value, or a lower bound ("the element is
/// congruent to 0 at its known precision, so val >= bound").
struct Valuation {
    long value = 0;
    bool is_lower_bound = false;

    bool finite() const { return !is_lower_bound; }

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// Coefficient ring Z_p or an unramified extension Z_p[x]/(modulus), with all arithmetic
/// exact modulo p^M. Immutable and freely shareable across threads.
///
/// The modulus is a monic integer polynomial irreducible modulo p (degree 1 selects the
/// base ring). Elements are written on the power basis of the modulus root.
class Ring : public std::enable_shared_from_this<Ring> {
  public:
    /// p an odd prime, precision M >= 1, modulus monic and irreducible mod p.
    /// Throws: even_prime, composite_p, reducible_modulus, invalid_argument.
    static RingPtr make(const BigInt& p, int precision, const std::vector<BigInt>& modulus);

    /// Base ring Z_p at precision p^M (modulus x).
    static RingPtr zp(const BigInt& p, int precision);

    const BigInt& p() const { return p_; }
    int precision() const { return precision_; }
    int degree() const { return degree_; } // h
    const std::vector<BigInt>& modulus() const { return modulus_; }
    BigInt residue_cardinality() const { return pow_int(p_, static_cast<unsigned long>(degree_)); }

    /// Cached p^k for 0 <= k <= M.
    const BigInt& p_power(int k) const;

    /// Structural identity: same p, same precision, same modulus.
    bool same_as(const Ring& other) const;
    /// Same p and modulus; precisions may differ (canonical transport allowed).
    bool compatible_with(const Ring& other) const;

    Elt zero() const;
    Elt one() const;
    Elt from_integer(const BigInt& n) const;
    Elt from_integer(long n) const;
    Elt from_coords(std::vector<BigInt> coords, int prec = -1) const;
    /// Class of x modulo the modulus (the power-basis generator).
    Elt generator() const;

    /// Power-basis coordinates of phi(generator)^i for i = 0..h-1 (identity row first).
    const std::vector<std::vector<BigInt>>& frobenius_powers() const { return frob_powers_; }

  private:
    Ring() = default;

    BigInt p_;
    int precision_ = 0;
    int degree_ = 0;
    std::vector<BigInt> modulus_;
    std::vector<BigInt> p_powers_;
    std::vector<std::vector<BigInt>> frob_powers_;
};

/// Element of a Ring with tracked absolute precision: the element is known modulo
/// p^knownPrecision, coordinates kept canonical in [0, p^knownPrecision).
class Elt {
  public:
    Elt(RingPtr ring, std::vector<BigInt> coords, int prec);

    const RingPtr& ring() const { return ring_; }
    int precision() const { return prec_; }
    const std::vector<BigInt>& coords() const { return coords_; }

    /// True when every coordinate vanishes at the known precision
    /// ("indistinguishable from zero").
    bool is_zero() const;
    bool is_unit() const;

    Valuation valuation() const;
    /// Valuation for ultrametric bookkeeping: the exact value, or the precision bound.
    long valuation_bound() const;

    Elt operator-() const;
    Elt operator+(const Elt& rhs) const;
    Elt operator-(const Elt& rhs) const;
    Elt operator*(const Elt& rhs) const;
    Elt& operator+=(const Elt& rhs) { return *this = *this + rhs; }
    Elt& operator-=(const Elt& rhs) { return *this = *this - rhs; }
    Elt& operator*=(const Elt& rhs) { return *this = *this * rhs; }

    /// Multiplicative inverse of a unit. Throws not_unit / indistinguishable_from_zero.
    Elt inverse() const;

    /// Division with valuation-loss precision tracking: dividing by an element of
    /// valuation w costs w digits of absolute precision.
    /// Throws not_divisible when val(*this) < val(rhs), indistinguishable_from_zero
    /// when rhs cannot be certified nonzero, precision_exhausted when nothing is left.
    Elt divide_by(const Elt& rhs) const;

    Elt pow(unsigned long e) const;

    /// The Frobenius lift applied to this element (see frobenius()).
    Elt frobenius_map() const;

    /// Reduce the known precision to min(k, current).
    Elt capped(int k) const;
    /// Reinterpret the canonical representative as exact data known mod p^k, k >= current
    /// precision. Only meaningful when the representative itself is the intended value.
    Elt lifted_exact(int k) const;
    /// Canonical transport into a structurally compatible ring (same p and modulus,
    /// possibly different precision cap).
    Elt transport(const RingPtr& target) const;

    /// a == b modulo p^k. Requires both operands known to at least k digits.
    bool congruent(const Elt& rhs, int k) const;

    /// Equality at the common known precision.
    bool operator==(const Elt& rhs) const;
    bool operator!=(const Elt& rhs) const { return !(*this == rhs); }

    std::string str() const;

  private:
    void reduce();

    RingPtr ring_;
    std::vector<BigInt> coords_;
    int prec_ = 0;
};

/// min over power-basis coordinates of their p-adic valuations; equals the normalized
/// valuation of the element since the extension is unramified.
inline Valuation valuation(const Elt& x) { return x.valuation(); }

/// The unique ring automorphism fixing Z_p and congruent to y -> y^p modulo p,
/// computed once per ring by Hensel-lifting the image of the modulus root. Its order
/// is h; on the base ring it is the identity.
inline Elt frobenius(const Elt& x) { return x.frobenius_map(); }

enum class PhiLinearSeed { quotient, zero };

/// The unique c with a*c + b*phi(c) = e, given the contraction val(a) < val(b) and
/// val(e) >= val(a), found by fixpoint iteration c <- (e - b*phi(c)) / a. The residual
/// is checked to vanish at full precision before returning.
/// Throws no_contraction, not_divisible.
Elt solve_phi_linear(const Elt& a, const Elt& b, const Elt& e,
                     PhiLinearSeed seed = PhiLinearSeed::quotient);

} // namespace phitower
