#include "phitower/padic.hpp"

#include <algorithm>
#include <sstream>

namespace phitower {

namespace {

// --- small F_p[x] helpers used by the irreducibility check and unit inversion ---

std::vector<BigInt> fp_trim(std::vector<BigInt> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

BigInt fp_eval(const std::vector<BigInt>& f, const BigInt& x, const BigInt& p) {
    BigInt acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod_canonical(acc * x + *it, p);
    return acc;
}

// remainder of a by b modulo p; b nonzero
std::vector<BigInt> fp_rem(std::vector<BigInt> a, const std::vector<BigInt>& b, const BigInt& p) {
    a = fp_trim(std::move(a));
    auto bt = fp_trim(b);
    BigInt lead_inv;
    mpz_invert(lead_inv.get_mpz_t(), bt.back().get_mpz_t(), p.get_mpz_t());
    while (a.size() >= bt.size() && !a.empty()) {
        BigInt q = mod_canonical(a.back() * lead_inv, p);
        size_t shift = a.size() - bt.size();
        for (size_t i = 0; i < bt.size(); ++i)
            a[shift + i] = mod_canonical(a[shift + i] - q * bt[i], p);
        a = fp_trim(std::move(a));
    }
    return a;
}

// extended euclid: returns u with u*a = gcd(a, m) mod (p), gcd expected constant;
// caller checks the gcd is a nonzero constant.
std::pair<std::vector<BigInt>, std::vector<BigInt>> fp_ext_gcd(std::vector<BigInt> a,
                                                               std::vector<BigInt> m,
                                                               const BigInt& p) {
    std::vector<BigInt> r0 = fp_trim(std::move(m)), r1 = fp_trim(std::move(a));
    std::vector<BigInt> u0{}, u1{BigInt(1)};
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<BigInt> q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, BigInt(0));
        std::vector<BigInt> rem = r0;
        BigInt lead_inv;
        mpz_invert(lead_inv.get_mpz_t(), r1.back().get_mpz_t(), p.get_mpz_t());
        while (rem.size() >= r1.size() && !rem.empty()) {
            BigInt c = mod_canonical(rem.back() * lead_inv, p);
            size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = mod_canonical(rem[shift + i] - c * r1[i], p);
            rem = fp_trim(std::move(rem));
        }
        // u2 = u0 - q*u1
        std::vector<BigInt> qu1(q.size() + u1.size(), BigInt(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < u1.size(); ++j)
                qu1[i + j] = mod_canonical(qu1[i + j] + q[i] * u1[j], p);
        std::vector<BigInt> u2(std::max(u0.size(), qu1.size()), BigInt(0));
        for (size_t i = 0; i < u0.size(); ++i) u2[i] = u0[i];
        for (size_t i = 0; i < qu1.size(); ++i) u2[i] = mod_canonical(u2[i] - qu1[i], p);
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = fp_trim(std::move(u2));
    }
    return {fp_trim(std::move(r0)), std::move(u0)};
}

bool fp_has_root(const std::vector<BigInt>& f, const BigInt& p) {
    for (BigInt r = 0; r < p; ++r)
        if (fp_eval(f, r, p) == 0) return true;
    return false;
}

// exhaustive monic-quadratic divisor search, desk scale only
bool fp_has_quadratic_factor(const std::vector<BigInt>& f, const BigInt& p) {
    for (BigInt b = 0; b < p; ++b) {
        for (BigInt c = 0; c < p; ++c) {
            std::vector<BigInt> q{c, b, BigInt(1)};
            if (fp_rem(f, q, p).empty()) return true;
        }
    }
    return false;
}

} // namespace

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::composite_p: return "CompositeP";
        case errc::even_prime: return "EvenPrime";
        case errc::reducible_modulus: return "ReducibleModulus";
        case errc::precision_exhausted: return "PrecisionExhausted";
        case errc::hensel_condition_failed: return "HenselConditionFailed";
        case errc::zero_polynomial: return "ZeroPolynomial";
        case errc::no_contraction: return "NoContraction";
        case errc::not_divisible: return "NotDivisible";
        case errc::indistinguishable_from_zero: return "IndistinguishableFromZero";
        case errc::mode_mismatch: return "ModeMismatch";
        case errc::nonzero_constant_term: return "NonzeroConstantTerm";
        case errc::non_unit_linear_term: return "NonUnitLinearTerm";
        case errc::divergent_evaluation: return "DivergentEvaluation";
        case errc::insufficient_truncation: return "InsufficientTruncation";
        case errc::level_zero: return "LevelZero";
        case errc::not_norm_compatible: return "NotNormCompatible";
        case errc::not_unit: return "NotUnit";
        case errc::tower_too_shallow: return "TowerTooShallow";
        case errc::inconsistent_valuation: return "InconsistentValuation";
        case errc::zero_linear_term: return "ZeroLinearTerm";
        case errc::unit_linear_term: return "UnitLinearTerm";
        case errc::obstruction_not_divisible: return "ObstructionNotDivisible";
        case errc::not_in_base_field: return "NotInBaseField";
        case errc::schema_error: return "SchemaError";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

BigInt parse_bigint(const std::string& text) {
    if (text.empty()) raise(errc::schema_error, "empty integer literal");
    try {
        return BigInt(text);
    } catch (const std::invalid_argument&) {
        raise(errc::schema_error, "bad integer literal '" + text + "'");
    }
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) raise(errc::schema_error, "empty rational literal");
    try {
        Rational q(text);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        raise(errc::schema_error, "bad rational literal '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// Ring
// ---------------------------------------------------------------------------

RingPtr Ring::make(const BigInt& p, int precision, const std::vector<BigInt>& modulus) {
    if (p == 2) raise(errc::even_prime, "p must be an odd prime");
    if (!is_prime_int(p)) raise(errc::composite_p, "p = " + to_string(p) + " is not prime");
    if (precision < 1) raise(errc::invalid_argument, "precision must be >= 1");

    std::vector<BigInt> m = modulus;
    while (m.size() > 1 && m.back() == 0) m.pop_back();
    if (m.size() < 2) raise(errc::invalid_argument, "modulus must have degree >= 1");
    if (m.back() != 1) raise(errc::invalid_argument, "modulus must be monic");
    int h = static_cast<int>(m.size()) - 1;
    if (h > 4) raise(errc::invalid_argument, "modulus degree > 4 not supported");

    if (h >= 2) {
        std::vector<BigInt> mbar(m.size());
        for (size_t i = 0; i < m.size(); ++i) mbar[i] = mod_canonical(m[i], p);
        if (fp_has_root(mbar, p))
            raise(errc::reducible_modulus, "modulus has a root modulo p");
        if (h == 4 && fp_has_quadratic_factor(mbar, p))
            raise(errc::reducible_modulus, "modulus has a quadratic factor modulo p");
    }

    auto ring = std::shared_ptr<Ring>(new Ring());
    ring->p_ = p;
    ring->precision_ = precision;
    ring->degree_ = h;
    ring->modulus_ = m;
    ring->p_powers_.resize(precision + 1);
    ring->p_powers_[0] = 1;
    for (int k = 1; k <= precision; ++k) ring->p_powers_[k] = ring->p_powers_[k - 1] * p;

    // Frobenius: Hensel-lift the image of the modulus root, starting from gen^p.
    if (h >= 2) {
        if (!p.fits_ulong_p()) raise(errc::invalid_argument, "p too large for extension rings");
        Elt gen = ring->generator();
        Elt z = gen.pow(p.get_ui());
        auto meval = [&](const Elt& x) {
            Elt acc = ring->zero();
            for (auto it = m.rbegin(); it != m.rend(); ++it) acc = acc * x + ring->from_integer(*it);
            return acc;
        };
        auto mderiv = [&](const Elt& x) {
            Elt acc = ring->zero();
            for (int i = h; i >= 1; --i) acc = acc * x + ring->from_integer(m[i] * i);
            return acc;
        };
        for (int iter = 0; iter < 64 && !meval(z).is_zero(); ++iter)
            z = z - meval(z) * mderiv(z).inverse();
        if (!meval(z).is_zero())
            raise(errc::precision_exhausted, "frobenius lift did not converge");

        ring->frob_powers_.resize(h);
        Elt acc = ring->one();
        for (int i = 0; i < h; ++i) {
            ring->frob_powers_[i] = acc.coords();
            acc = acc * z;
        }
        // order-h sanity check
        Elt w = gen;
        for (int i = 0; i < h; ++i) w = w.frobenius_map();
        if (w != gen) raise(errc::invalid_argument, "frobenius lift has wrong order");
    }

    return ring;
}

RingPtr Ring::zp(const BigInt& p, int precision) {
    return make(p, precision, {BigInt(0), BigInt(1)});
}

const BigInt& Ring::p_power(int k) const {
    if (k < 0 || k > precision_) raise(errc::invalid_argument, "p_power out of range");
    return p_powers_[k];
}

bool Ring::same_as(const Ring& other) const {
    return p_ == other.p_ && precision_ == other.precision_ && modulus_ == other.modulus_;
}

bool Ring::compatible_with(const Ring& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
}

Elt Ring::zero() const { return from_coords(std::vector<BigInt>(degree_, BigInt(0))); }

Elt Ring::one() const { return from_integer(1); }

Elt Ring::from_integer(const BigInt& n) const {
    std::vector<BigInt> c(degree_, BigInt(0));
    c[0] = n;
    return from_coords(std::move(c));
}

Elt Ring::from_integer(long n) const { return from_integer(BigInt(n)); }

Elt Ring::from_coords(std::vector<BigInt> coords, int prec) const {
    if (prec < 0) prec = precision_;
    coords.resize(degree_, BigInt(0));
    return Elt(shared_from_this(), std::move(coords), prec);
}

Elt Ring::generator() const {
    if (degree_ == 1) return from_integer(-modulus_[0]);
    std::vector<BigInt> c(degree_, BigInt(0));
    c[1] = 1;
    return from_coords(std::move(c));
}

// ---------------------------------------------------------------------------
// Elt
// ---------------------------------------------------------------------------

Elt::Elt(RingPtr ring, std::vector<BigInt> coords, int prec)
    : ring_(std::move(ring)), coords_(std::move(coords)), prec_(prec) {
    if (!ring_) raise(errc::invalid_argument, "element without ring");
    if (prec_ > ring_->precision()) prec_ = ring_->precision();
    if (prec_ < 1) raise(errc::precision_exhausted, "element has no known digits left");
    coords_.resize(ring_->degree(), BigInt(0));
    reduce();
}

void Elt::reduce() {
    const BigInt& pk = ring_->p_power(prec_);
    for (auto& c : coords_) c = mod_canonical(c, pk);
}

bool Elt::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const BigInt& c) { return c == 0; });
}

Valuation Elt::valuation() const {
    long v = kValInfinity;
    for (const auto& c : coords_)
        if (c != 0) v = std::min(v, val_int(c, ring_->p()));
    if (v >= prec_) return Valuation{static_cast<long>(prec_), true};
    return Valuation{v, false};
}

long Elt::valuation_bound() const {
    Valuation v = valuation();
    return v.value;
}

bool Elt::is_unit() const {
    Valuation v = valuation();
    return v.finite() && v.value == 0;
}

static void check_same_ring(const Elt& a, const Elt& b) {
    if (!a.ring()->same_as(*b.ring()))
        raise(errc::mode_mismatch, "elements belong to different rings");
}

Elt Elt::operator-() const {
    std::vector<BigInt> c(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i) c[i] = -coords_[i];
    return Elt(ring_, std::move(c), prec_);
}

Elt Elt::operator+(const Elt& rhs) const {
    check_same_ring(*this, rhs);
    std::vector<BigInt> c(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i) c[i] = coords_[i] + rhs.coords_[i];
    return Elt(ring_, std::move(c), std::min(prec_, rhs.prec_));
}

Elt Elt::operator-(const Elt& rhs) const { return *this + (-rhs); }

Elt Elt::operator*(const Elt& rhs) const {
    check_same_ring(*this, rhs);
    const int h = ring_->degree();
    // representative product, then reduce by the monic modulus
    std::vector<BigInt> prod(2 * h - 1, BigInt(0));
    for (int i = 0; i < h; ++i) {
        if (coords_[i] == 0) continue;
        for (int j = 0; j < h; ++j) prod[i + j] += coords_[i] * rhs.coords_[j];
    }
    const auto& m = ring_->modulus();
    for (int i = 2 * h - 2; i >= h; --i) {
        if (prod[i] == 0) continue;
        for (int j = 0; j < h; ++j) prod[i - h + j] -= prod[i] * m[j];
        prod[i] = 0;
    }
    prod.resize(h);
    // known-precision gain from valuations: min(ka + v(b), kb + v(a)), capped at M
    long va = valuation_bound(), vb = rhs.valuation_bound();
    long k = std::min<long>(prec_ + vb, rhs.prec_ + va);
    k = std::min<long>(k, ring_->precision());
    return Elt(ring_, std::move(prod), static_cast<int>(k));
}

Elt Elt::inverse() const {
    Valuation v = valuation();
    if (!v.finite()) raise(errc::indistinguishable_from_zero, "cannot invert");
    if (v.value != 0) raise(errc::not_unit, "inverse requires a unit");
    const BigInt& p = ring_->p();
    const int h = ring_->degree();

    Elt z = ring_->zero();
    if (h == 1) {
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), coords_[0].get_mpz_t(), p.get_mpz_t());
        z = Elt(ring_, {inv}, prec_);
    } else {
        std::vector<BigInt> abar(coords_.size());
        for (size_t i = 0; i < coords_.size(); ++i) abar[i] = mod_canonical(coords_[i], p);
        std::vector<BigInt> mbar(ring_->modulus().size());
        for (size_t i = 0; i < mbar.size(); ++i) mbar[i] = mod_canonical(ring_->modulus()[i], p);
        auto [g, u] = fp_ext_gcd(abar, mbar, p);
        if (g.size() != 1) raise(errc::not_unit, "inverse does not exist modulo p");
        BigInt ginv;
        mpz_invert(ginv.get_mpz_t(), g[0].get_mpz_t(), p.get_mpz_t());
        std::vector<BigInt> z0(u.size());
        for (size_t i = 0; i < u.size(); ++i) z0[i] = mod_canonical(u[i] * ginv, p);
        z = Elt(ring_, std::move(z0), prec_);
    }
    // Newton doubling z <- z(2 - x z)
    Elt two = ring_->from_integer(2).capped(prec_);
    for (int k = 1; k < prec_; k *= 2) z = z * (two - *this * z);
    return z.capped(prec_);
}

Elt Elt::divide_by(const Elt& rhs) const {
    check_same_ring(*this, rhs);
    Valuation vb = rhs.valuation();
    if (!vb.finite())
        raise(errc::indistinguishable_from_zero, "divisor indistinguishable from zero");
    long w = vb.value;
    Valuation va = valuation();
    if (va.value < w) raise(errc::not_divisible, "valuation of dividend below divisor");
    if (w == 0) return *this * rhs.inverse();

    const BigInt& pw = ring_->p_power(static_cast<int>(w));
    std::vector<BigInt> num(coords_.size()), den(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i) {
        num[i] = coords_[i] / pw;
        den[i] = rhs.coords_[i] / pw;
    }
    Elt a(ring_, std::move(num), prec_ - static_cast<int>(w));
    Elt b(ring_, std::move(den), rhs.prec_ - static_cast<int>(w));
    return a * b.inverse();
}

Elt Elt::pow(unsigned long e) const {
    Elt acc = ring_->one().capped(prec_);
    Elt base = *this;
    while (e > 0) {
        if (e & 1UL) acc = acc * base;
        base = base * base;
        e >>= 1UL;
    }
    return acc;
}

Elt Elt::frobenius_map() const {
    const int h = ring_->degree();
    if (h == 1) return *this;
    const auto& rows = ring_->frobenius_powers();
    std::vector<BigInt> out(h, BigInt(0));
    for (int i = 0; i < h; ++i) {
        if (coords_[i] == 0) continue;
        for (int j = 0; j < h; ++j) out[j] += coords_[i] * rows[i][j];
    }
    return Elt(ring_, std::move(out), prec_);
}

Elt Elt::capped(int k) const {
    if (k >= prec_) return *this;
    return Elt(ring_, coords_, k);
}

Elt Elt::lifted_exact(int k) const {
    if (k <= prec_) return capped(k);
    return Elt(ring_, coords_, k);
}

Elt Elt::transport(const RingPtr& target) const {
    if (!target->compatible_with(*ring_))
        raise(errc::mode_mismatch, "transport between incompatible rings");
    return Elt(target, coords_, std::min(prec_, target->precision()));
}

bool Elt::congruent(const Elt& rhs, int k) const {
    if (k <= 0) return true;
    check_same_ring(*this, rhs);
    if (prec_ < k || rhs.prec_ < k)
        raise(errc::precision_exhausted, "operands too imprecise to certify congruence");
    const BigInt& pk = ring_->p_power(k);
    for (size_t i = 0; i < coords_.size(); ++i)
        if (mod_canonical(coords_[i] - rhs.coords_[i], pk) != 0) return false;
    return true;
}

bool Elt::operator==(const Elt& rhs) const {
    if (!ring_->same_as(*rhs.ring_)) return false;
    return congruent(rhs, std::min(prec_, rhs.prec_));
}

std::string Elt::str() const {
    std::ostringstream os;
    if (ring_->degree() == 1) {
        os << coords_[0].get_str();
    } else {
        os << "[";
        for (size_t i = 0; i < coords_.size(); ++i) {
            if (i) os << ",";
            os << coords_[i].get_str();
        }
        os << "]";
    }
    os << "@" << prec_;
    return os.str();
}

// ---------------------------------------------------------------------------
// phi-twisted linear solver
// ---------------------------------------------------------------------------

Elt solve_phi_linear(const Elt& a, const Elt& b, const Elt& e, PhiLinearSeed seed) {
    Valuation va = a.valuation();
    if (!va.finite()) raise(errc::indistinguishable_from_zero, "coefficient a is zero");
    long vb = b.valuation_bound(); // lower bound when b ~ 0
    if (vb <= va.value)
        raise(errc::no_contraction, "val(b) must exceed val(a)");
    if (e.valuation_bound() < va.value && !e.is_zero())
        raise(errc::not_divisible, "val(e) below val(a)");

    Elt c = (seed == PhiLinearSeed::zero) ? e.ring()->zero() : e.divide_by(a);
    long step = std::max<long>(1, vb - va.value);
    long max_iter = a.ring()->precision() / step + 4;
    for (long i = 0; i < max_iter; ++i) {
        Elt next = (e - b * c.frobenius_map()).divide_by(a);
        if (next.precision() == c.precision() && next == c) {
            c = next;
            break;
        }
        c = next;
    }
    Elt residual = a * c + b * c.frobenius_map() - e;
    if (!residual.is_zero())
        raise(errc::invalid_argument, "phi-linear system has no solution at this precision");
    return c;
}

} // namespace phitower
