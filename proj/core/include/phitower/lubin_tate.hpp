#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phitower/series.hpp"

namespace phitower {

/// Data for a relative formal group: E unramified of degree h over the base, alpha in
/// the base of valuation h, and f = pi T + ... in O_E[[T]] with f = T^q mod pi and
/// N(pi) = alpha (q the residue cardinality of the base).
struct LubinTateData {
    RingPtr E;
    Elt alpha;
    PadicSeries f;
    Elt pi; // f'(0)
};

/// prod_{i<h} phi^i(x), checked to land in the base subring.
/// Throws not_in_base_field if the power-basis coordinates beyond the first survive.
Elt norm_to_base(const Elt& x);

/// Membership test for the admissible family attached to alpha: integral coefficients,
/// f = T^q mod pi, N(f'(0)) = alpha, val(alpha) = h.
bool is_admissible(const RingPtr& E, const Elt& alpha, const PadicSeries& f);

/// Validating constructor for LubinTateData; throws invalid_argument with the violated
/// condition spelled out.
LubinTateData make_lubin_tate(RingPtr E, Elt alpha, PadicSeries f);

struct FormalGroup {
    LubinTateData data;
    BivariateTrunc<Elt> S;
    long certified_degree;
};

/// The unique group law S = X + Y + ... with S^phi(f(X), f(Y)) = f(S(X,Y)), built
/// degree by degree: each homogeneous obstruction must vanish mod pi (else
/// obstruction_not_divisible — the input f is not admissible), and each coefficient
/// solves pi c - pi^m phi(c) = -e through the phi-twisted contraction.
/// Inputs are taken as exact balanced representatives (coordinates in
/// (-p^k/2, p^k/2]); internally the construction runs at precision M+N so the
/// returned coefficients hold at full ring precision.
FormalGroup group_law(const LubinTateData& data, long degree,
                      PhiLinearSeed seed = PhiLinearSeed::quotient);

/// The unique [a] = aT + O(T^2) with f([a]) = [a]^phi(f) for a in the base.
PadicSeries endomorphism(const LubinTateData& data, const Elt& a, long order);

/// iota with S(T, iota(T)) = 0 mod T^(N+1).
PadicSeries group_inverse(const FormalGroup& g);

/// f^{phi^{h-1}} o ... o f^{phi} o f: the h-fold twisted composite, which equals the
/// alpha-endomorphism.
PadicSeries twisted_iterate(const LubinTateData& data, long order);

/// Coefficientwise Frobenius twist of a series over E.
PadicSeries twist(const PadicSeries& f);

struct AxiomReport {
    struct Check {
        std::string name;
        bool pass;
    };
    std::vector<Check> checks;

    bool all_pass() const;
};

/// Identity section, commutativity, associativity (trivariate substitution), the
/// defining twisted identity, and the [a]-homomorphism laws on small integer pairs.
AxiomReport verify_group_axioms(const FormalGroup& g,
                                const std::vector<std::pair<long, long>>& pairs = {
                                    {1, 1}, {2, 2}, {2, 3}});

} // namespace phitower
