#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phitower/bigint.hpp"

namespace phitower {

/// Deterministic randomness for the property suites: a fixed seed reproduces the
/// exact case sequence (the CLI's byte-identical-output contract depends on it).
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    long below(long n) { return n <= 1 ? 0 : static_cast<long>(next() % static_cast<uint64_t>(n)); }

    /// Uniform-enough integer in [0, bound); bound >= 1.
    BigInt bigint_below(const BigInt& bound) {
        size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        BigInt acc = 0;
        for (size_t i = 0; i < bits; i += 64) {
            BigInt word(static_cast<unsigned long>(next() >> 32));
            word <<= 32;
            word += static_cast<unsigned long>(next() & 0xffffffffUL);
            acc <<= 64;
            acc += word;
        }
        return mod_canonical(acc, bound);
    }

  private:
    std::mt19937_64 eng_;
};

struct PropertyResult {
    std::string name;
    long cases = 0;
    long passes = 0;
};

struct PropertySuite {
    std::string name;
    std::vector<PropertyResult> properties;
};

/// Run every module's randomized invariants with the given seed; `count` scales the
/// per-property case budget (0 yields an empty report). Cheap properties run `count`
/// cases, expensive ones a documented fraction.
std::vector<PropertySuite> run_property_suites(uint64_t seed, long count);

} // namespace phitower
