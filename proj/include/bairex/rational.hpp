#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bairex {

// Exact arithmetic scalar for the rational mode. All coefficients produced by
// the series are of the form p / (2^a * 3^b * 10^c), so arbitrary-precision
// rationals represent every intermediate quantity exactly.
using Rational = mpq_class;

// Parses "p/q", integer, plain decimal and scientific decimal forms exactly
// ("0.1" -> 1/10, "-2/3", "5e-3" -> 1/200). Throws ValidationError on
// malformed text or a zero denominator.
Rational rational_from_text(std::string_view text);

// Exact value of the shortest decimal that round-trips x, so a literal like
// 0.1 written in an input file is read back as 1/10 rather than the binary
// double closest to it. Rejects NaN and infinities.
Rational rational_from_double(double x);

// "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string to_text(const Rational& q);

// Shortest round-trip decimal representation.
std::string to_text(double x);

double to_double(const Rational& q);

}  // namespace bairex
