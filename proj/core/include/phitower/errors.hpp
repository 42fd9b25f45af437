#pragma once

#include <stdexcept>
#include <string>

namespace phitower {

/// Machine-readable failure codes, mirrored 1:1 into CLI error output.
enum class errc {
    composite_p,
    even_prime,
    reducible_modulus,
    precision_exhausted,
    hensel_condition_failed,
    zero_polynomial,
    no_contraction,
    not_divisible,
    indistinguishable_from_zero,
    mode_mismatch,
    nonzero_constant_term,
    non_unit_linear_term,
    divergent_evaluation,
    insufficient_truncation,
    level_zero,
    not_norm_compatible,
    not_unit,
    tower_too_shallow,
    inconsistent_valuation,
    zero_linear_term,
    unit_linear_term,
    obstruction_not_divisible,
    not_in_base_field,
    schema_error,
    invalid_argument,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

} // namespace phitower
