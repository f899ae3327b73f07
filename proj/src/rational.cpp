#include "bairex/rational.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "bairex/errors.hpp"

namespace bairex {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational pow10(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10u, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rational(1, 1) / Rational(p) : Rational(p);
}

Rational parse_decimal(std::string_view text, std::string_view original) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    long exponent = 0;
    if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
        std::string_view etext = text.substr(epos + 1);
        text = text.substr(0, epos);
        bool eneg = false;
        if (!etext.empty() && (etext.front() == '+' || etext.front() == '-')) {
            eneg = etext.front() == '-';
            etext.remove_prefix(1);
        }
        if (!all_digits(etext))
            throw ValidationError("not a number: '" + std::string(original) + "'");
        auto [p, ec] = std::from_chars(etext.data(), etext.data() + etext.size(), exponent);
        if (ec != std::errc{} || p != etext.data() + etext.size() || exponent > 1000000)
            throw ValidationError("exponent out of range: '" + std::string(original) + "'");
        if (eneg) exponent = -exponent;
    }

    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view integral = text.substr(0, dot);
        std::string_view fraction = text.substr(dot + 1);
        if (integral.empty() && fraction.empty())
            throw ValidationError("not a number: '" + std::string(original) + "'");
        if ((!integral.empty() && !all_digits(integral)) ||
            (!fraction.empty() && !all_digits(fraction)))
            throw ValidationError("not a number: '" + std::string(original) + "'");
        digits.append(integral);
        digits.append(fraction);
        exponent -= static_cast<long>(fraction.size());
    } else {
        if (!all_digits(text))
            throw ValidationError("not a number: '" + std::string(original) + "'");
        digits.assign(text);
    }
    if (digits.empty())
        throw ValidationError("not a number: '" + std::string(original) + "'");

    Rational value(mpz_class(digits, 10));
    value *= pow10(exponent);
    if (negative) value = -value;
    value.canonicalize();
    return value;
}

}  // namespace

Rational rational_from_text(std::string_view text) {
    std::string_view trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
        trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
        trimmed.remove_suffix(1);
    if (trimmed.empty()) throw ValidationError("empty number");

    if (auto slash = trimmed.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(trimmed.substr(0, slash), text);
        Rational den = parse_decimal(trimmed.substr(slash + 1), text);
        if (den == 0)
            throw ValidationError("zero denominator: '" + std::string(text) + "'");
        Rational q = num / den;
        q.canonicalize();
        return q;
    }
    return parse_decimal(trimmed, text);
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x))
        throw ValidationError("number is not finite");
    return rational_from_text(to_text(x));
}

std::string to_text(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_text(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace bairex
