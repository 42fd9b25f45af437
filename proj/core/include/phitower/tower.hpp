#pragma once

#include <utility>
#include <vector>

#include "phitower/padic_poly.hpp"
#include "phitower/series.hpp"

namespace phitower {

/// The iterate tower K_n = K(u_n) cut out by P(u_{n+1}) = u_n, P(u_1) = u_0.
///
/// P is monic of degree d (a power of the residue cardinality, d odd), with all lower
/// coefficients in the maximal ideal and zero constant term. Each Q_n = P^n(T) - u_0 is
/// verified Eisenstein at construction, so O_{K_n} = O_K[u_n] and elements of level n
/// are residue polynomials of degree < d^n.
class TowerContext {
  public:
    /// Throws invalid_argument for a malformed P or u0, inconsistent_valuation when
    /// val(u0) != 1, and invalid_argument when some Q_n fails the Eisenstein check.
    TowerContext(RingPtr ring, RPoly P, Elt u0, long max_level);

    const RingPtr& ring() const { return ring_; }
    const RPoly& iterate_poly() const { return P_; }
    long degree() const { return d_; }
    const Elt& u0() const { return u0_; }
    long max_level() const { return max_level_; }
    /// Q_n = P^n(T) - u_0 (Q_0 = T - u_0), the minimal polynomial of u_n over K.
    const RPoly& level_modulus(long n) const;
    /// d^n
    long level_degree(long n) const;

  private:
    RingPtr ring_;
    RPoly P_;
    long d_;
    Elt u0_;
    long max_level_;
    std::vector<RPoly> Q_;
};

/// Element of O_{K_n} as a residue polynomial in u_n of degree < d^n over O_K.
/// Level-0 elements are constants (plain ring elements).
struct TowerElement {
    long level = 0;
    RPoly rep;

    /// Lowest known precision across coefficients.
    int precision() const;
};

TowerElement tower_element(const TowerContext& ctx, long level, const RPoly& rep);
TowerElement tower_constant(const TowerContext& ctx, long level, const Elt& c);
/// u_n itself: the class of T at level n (u_0 at level 0).
TowerElement tower_uniformizer(const TowerContext& ctx, long level);

/// Valuation in the K_n-normalization (val(u_n) = 1, val(p) = d^n): since the basis
/// monomials u_n^i have distinct valuations, this is exact (lower bound when the
/// element is indistinguishable from zero).
Valuation tower_valuation(const TowerContext& ctx, const TowerElement& x);

bool tower_congruent(const TowerElement& a, const TowerElement& b, int k);

TowerElement tower_add(const TowerContext& ctx, const TowerElement& a, const TowerElement& b);
TowerElement tower_mul(const TowerContext& ctx, const TowerElement& a, const TowerElement& b);
/// Division by u_n, costing one digit of coefficient precision (u_0 has valuation 1).
TowerElement tower_divide_by_uniformizer(const TowerContext& ctx, const TowerElement& x);

/// Horner evaluation of f at a tower element. Polynomials evaluate exactly; a truncated
/// series needs positive K_n-valuation and caps the certified precision by the tail
/// bound (N+1) * val(x) / d^n.
TowerElement evaluate(const TowerContext& ctx, const PadicSeries& f, const TowerElement& x);

/// Exact norm (resp. trace) of the multiplication-by-f map on the rank-d module
/// O_K[T] / (base P), for a polynomial f: the polynomial g with g(P(T)) = N(f(T)).
RPoly norm_poly(const TowerContext& ctx, const RPoly& f);
RPoly trace_poly(const TowerContext& ctx, const RPoly& f);

/// The norm operator: N_P(f)(P(T)) = N(f(T)) on the free rank-d module over the base
/// series ring, computed as the determinant of the multiplication-by-f matrix on the
/// basis 1, T, ..., T^{d-1} with the rewriting T^d = U - a_{d-1}T^{d-1} - ... - a_1 T.
/// A truncated series must be known mod T^(d*out_order + 1); the result is the norm of
/// the polynomial representative, reported mod T^(out_order+1).
PadicSeries norm_operator(const TowerContext& ctx, const PadicSeries& f, long out_order);
/// Trace analogue of norm_operator; lands in p * O_K[[T]].
PadicSeries trace_operator(const TowerContext& ctx, const PadicSeries& f, long out_order);

/// Norm down one level: interpret the residue polynomial as f and reduce N_P(f) at u_n.
/// Throws level_zero at the bottom.
TowerElement tower_norm(const TowerContext& ctx, const TowerElement& x);

/// Sequence x_0..x_m with x_n at level n; norm-compatibility is a property to check,
/// not an invariant of construction.
struct NormCompatibleSequence {
    std::vector<TowerElement> elems;

    long top_level() const { return static_cast<long>(elems.size()) - 1; }
};

/// x_n = g(u_n) for a polynomial g (levels 0..m).
NormCompatibleSequence sequence_from_poly(const TowerContext& ctx, const RPoly& g, long m);

bool is_norm_compatible(const TowerContext& ctx, const NormCompatibleSequence& x);

struct ColemanRecovery {
    PadicSeries series;
    long certified_pi_precision = 0; // congruences hold modulo p^this
    long levels_checked = 0;
    bool certificate_ok = false;
    long uniformizer_exponent = 0; // e, when recovered through the factoring path
};

/// Power-series recovery for a norm-compatible sequence of units: returns the j-fold
/// norm-operator image of the residue polynomial at level 2j, certified to satisfy
/// series(u_n) = x_n mod p^(j+1) for n <= j.
/// Throws tower_too_shallow, not_unit, not_norm_compatible.
ColemanRecovery coleman_recover(const TowerContext& ctx, const NormCompatibleSequence& x, long j);

/// e >= 0 and the unit sequence x* with x_n = u_n^e x*_n. Throws inconsistent_valuation
/// when the levels disagree, invalid_argument on a zero term.
std::pair<long, NormCompatibleSequence> factor_by_uniformizer(const TowerContext& ctx,
                                                              const NormCompatibleSequence& x);

/// Full recovery pipeline: factor out the uniformizer, recover the unit part, and
/// return T^e times it.
ColemanRecovery coleman_series(const TowerContext& ctx, const NormCompatibleSequence& x, long j);

} // namespace phitower
