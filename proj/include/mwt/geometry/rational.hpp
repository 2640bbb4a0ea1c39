#pragma once

// Exact coordinate parsing. Accepts decimals ("-1.25", "3e-2") and
// fractions ("7/3"); the result is always an exact rational.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace mwt::geom {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// cpp_int reads a leading 0 as an octal prefix.
inline BigInt parse_decimal(std::string_view digits) {
    const auto nz = digits.find_first_not_of('0');
    if (nz == std::string_view::npos) return BigInt(0);
    return BigInt(std::string(digits.substr(nz)));
}

inline BigInt pow10(unsigned k) {
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) r *= 10;
    return r;
}

} // namespace detail

inline std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
        BigInt d = detail::parse_decimal(den);
        if (d == 0) return std::nullopt;
        BigInt n = detail::parse_decimal(num);
        if (negative) n = -n;
        return Rational(n, d);
    }

    std::string_view mantissa = text;
    long long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        auto exp_text = text.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!detail::all_digits(exp_text) || exp_text.size() > 4) return std::nullopt;
        exponent = std::stoll(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
    }

    std::string digits;
    long long frac_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto int_part = mantissa.substr(0, dot);
        const auto frac_part = mantissa.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) return std::nullopt;
        if (!int_part.empty() && !detail::all_digits(int_part)) return std::nullopt;
        if (!frac_part.empty() && !detail::all_digits(frac_part)) return std::nullopt;
        digits = std::string(int_part) + std::string(frac_part);
        frac_digits = static_cast<long long>(frac_part.size());
    } else {
        if (!detail::all_digits(mantissa)) return std::nullopt;
        digits = std::string(mantissa);
    }

    BigInt n = detail::parse_decimal(digits);
    if (negative) n = -n;
    const long long shift = exponent - frac_digits;
    if (shift >= 0) return Rational(n * detail::pow10(static_cast<unsigned>(shift)));
    return Rational(n, detail::pow10(static_cast<unsigned>(-shift)));
}

inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

} // namespace mwt::geom
