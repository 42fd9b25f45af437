#pragma once

#include <string>
#include <vector>

#include "phitower/series.hpp"

namespace phitower {

/// Chebyshev polynomials C_k (cos-multiplication family) and their shifted companions
/// P_k = 2(C_k(T/2 + 1) - 1), all in exact integer arithmetic. The P_k commute under
/// composition and P_k'(0) = k^2; P_3 = T^3 + 6T^2 + 9T drives the worked tower.
class ChebyshevFamily {
  public:
    explicit ChebyshevFamily(long k_max);

    long k_max() const { return k_max_; }
    /// C_k, k >= 0.
    const RatSeries& c(long k) const;
    /// P_k, k >= 1.
    const RatSeries& p(long k) const;

  private:
    long k_max_;
    std::vector<RatSeries> c_;
    std::vector<RatSeries> p_;
};

RatSeries chebyshev_c(long k);
RatSeries chebyshev_p(long k);

struct LaurentCheck {
    bool exact_identity = false;      // P_k(x + 1/x - 2) = x^k + x^(-k) - 2 in Z[x, 1/x]
    bool cyclotomic_identity = false; // the same after reduction mod Phi_{3^(n+1)}

    bool ok() const { return exact_identity && cyclotomic_identity; }
};

/// Verifies the shifted-power identity exactly (cleared of denominators by x^k) and
/// again inside Z[x]/Phi_{3^(n+1)}, where x + 1/x - 2 realizes the tower generator.
LaurentCheck laurent_identity(long k, long n);

/// P_k(x + 1/x - 2) reduced in Z[x]/Phi_{3^(n+1)}, constant term first
/// (length 2 * 3^n). For k = 3, n = 1 this collapses to the constant -3.
std::vector<BigInt> shifted_value_mod_cyclotomic(long k, long n);

struct ChebyshevReport {
    struct Item {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Item> items;

    bool all_pass() const;
};

/// The composite demonstration: the cubic matches the tower polynomial, the family
/// commutes with it, eta values are perfect squares, Coleman recovery over the
/// u0 = -3 tower returns T and T^2 + 4T certified mod 3^(j+1), and the logarithm
/// transforms by k^2 under P_k.
ChebyshevReport chebyshev_demo_report(long pi_precision, long depth);

} // namespace phitower
