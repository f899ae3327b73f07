#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "bairex/extension.hpp"
#include "bairex/rational.hpp"
#include "bairex/verification.hpp"

namespace bairex {

enum class Arithmetic { Float, Exact };

Arithmetic arithmetic_from_name(std::string_view name);  // "float" | "rational"
std::string_view arithmetic_name(Arithmetic a);

// A problem instance as read from a JSON document: the space, the sampled
// function, and the run options. Numeric inputs keep both a double and an
// exact decimal-rational reading, so either arithmetic mode can run without
// reparsing. Rationals come from the decimal text (0.1 means 1/10); strings
// like "2/3" are accepted for values and tolerance where a decimal is not
// exact enough.
struct ProblemInstance {
    AmbientSpace space;
    SubsetMask domain;
    std::map<PointId, double> values_float;
    std::map<PointId, Rational> values_exact;
    double tolerance_float = 1e-6;
    Rational tolerance_exact{1, 1000000};
    Mode mode = Mode::Signed;
    unsigned alpha = 1;
    Arithmetic arithmetic = Arithmetic::Float;
};

ProblemInstance parse_instance(const std::string& json_text);

using AnyOutcome = std::variant<ExtensionOutcome<double>, ExtensionOutcome<Rational>>;

Arithmetic outcome_arithmetic(const AnyOutcome& result);

// Runs the instance in its configured mode and arithmetic.
AnyOutcome run_instance(const ProblemInstance& instance);

// Result document: {c, mode, alpha, arithmetic, K, error_bound,
// terms:[{n, coefficient, H:[ids]}], extended:{id: value}}. Rational mode
// serializes every number as an exact integer or fraction string; float mode
// uses shortest round-trip decimals. Serialization is byte-deterministic.
std::string result_to_json(const AnyOutcome& result);
AnyOutcome parse_result(const std::string& json_text);

// Checks a result against the instance it claims to extend. Structural
// disagreement (different space, mode, alpha or arithmetic) throws
// MismatchError; content disagreement shows up as failed checks.
VerificationReport verify_result(const ProblemInstance& instance, const AnyOutcome& result);

std::string report_to_json(const VerificationReport& report);

// Comma-separated table for external plotting: one row per point with id,
// coordinates (1-D or 2-D), in-domain flag, input value (blank off the
// domain), extended value, and the partial sums S_0..S_K. Requires a
// coordinate-backed space.
std::string plot_table(const ProblemInstance& instance, const AnyOutcome& result);

}  // namespace bairex
