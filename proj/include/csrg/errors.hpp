#pragma once

#include <stdexcept>
#include <string>

namespace csrg {

// One exception type with a machine-readable kind; messages carry the
// offending values so CLI reports stay useful.
enum class err {
    not_coprime,
    not_prime,
    too_large,
    not_a_divisor,
    division_by_zero,
    conductor_mismatch,
    range_error,
    not_semiprimitive,
    bad_degree,
    degenerate_character,
    trivial_restriction,
    index_unstable,
    incompatible_characters,
    bad_parameters,
    bad_support,
    invalid_h,
    duplicate_indices,
    hypothesis_failed,
    non_integral_division,
    non_integral_prediction,
    zero_element,
    even_field,
    bad_residue,
    io_error,
};

inline const char* err_name(err e) {
    switch (e) {
        case err::not_coprime: return "NotCoprime";
        case err::not_prime: return "NotPrime";
        case err::too_large: return "TooLarge";
        case err::not_a_divisor: return "NotADivisor";
        case err::division_by_zero: return "DivisionByZero";
        case err::conductor_mismatch: return "ConductorMismatch";
        case err::range_error: return "RangeError";
        case err::not_semiprimitive: return "NotSemiprimitive";
        case err::bad_degree: return "BadDegree";
        case err::degenerate_character: return "DegenerateCharacter";
        case err::trivial_restriction: return "TrivialRestriction";
        case err::index_unstable: return "IndexUnstable";
        case err::incompatible_characters: return "IncompatibleCharacters";
        case err::bad_parameters: return "BadParameters";
        case err::bad_support: return "BadSupport";
        case err::invalid_h: return "InvalidH";
        case err::duplicate_indices: return "DuplicateIndices";
        case err::hypothesis_failed: return "HypothesisFailed";
        case err::non_integral_division: return "NonIntegralDivision";
        case err::non_integral_prediction: return "NonIntegralPrediction";
        case err::zero_element: return "ZeroElement";
        case err::even_field: return "EvenField";
        case err::bad_residue: return "BadResidue";
        case err::io_error: return "IoError";
    }
    return "Unknown";
}

class error : public std::runtime_error {
public:
    error(err kind, const std::string& what)
        : std::runtime_error(std::string(err_name(kind)) + ": " + what), kind_(kind) {}
    err kind() const { return kind_; }

private:
    err kind_;
};

[[noreturn]] inline void fail(err kind, const std::string& what) { throw error(kind, what); }

}  // namespace csrg
