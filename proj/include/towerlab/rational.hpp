#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace towerlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(const BigInt& base, std::uint64_t exponent) {
    BigInt result = 1;
    BigInt b = base;
    while (exponent != 0) {
        if (exponent & 1u) {
            result *= b;
        }
        exponent >>= 1u;
        if (exponent != 0) {
            b *= b;
        }
    }
    return result;
}

/// floor(sqrt(n)) for n >= 0.
inline BigInt isqrt(const BigInt& n) {
    return boost::multiprecision::sqrt(n);
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    return Rational(num, den);
}

inline std::string to_string(const BigInt& value) {
    return value.str();
}

/// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& value) {
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

/// Decimal rendering with `digits` significant digits, rounded half away from zero.
/// Computed with integer arithmetic only; used for display, never for decisions.
inline std::string to_decimal(const Rational& value, int digits = 6) {
    BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (num == 0) {
        return "0";
    }
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    // Position of the leading digit: 10^lead <= num/den < 10^(lead+1).
    int lead = 0;
    {
        BigInt int_part = num / den;
        if (int_part > 0) {
            lead = static_cast<int>(int_part.str().size()) - 1;
        } else {
            BigInt scaled = num;
            while (scaled < den) {
                scaled *= 10;
                --lead;
            }
        }
    }
    const int scale = digits - 1 - lead;  // number of decimals to keep
    BigInt scaled_num = num;
    BigInt scaled_den = den;
    if (scale >= 0) {
        scaled_num *= ipow(BigInt(10), static_cast<std::uint64_t>(scale));
    } else {
        scaled_den *= ipow(BigInt(10), static_cast<std::uint64_t>(-scale));
    }
    BigInt rounded = (2 * scaled_num + scaled_den) / (2 * scaled_den);
    std::string body = rounded.str();
    if (scale <= 0) {
        for (int i = 0; i < -scale; ++i) {
            body += '0';
        }
        return sign + body;
    }
    const auto decimals = static_cast<std::size_t>(scale);
    if (body.size() <= decimals) {
        body.insert(0, decimals + 1 - body.size(), '0');
    }
    body.insert(body.size() - decimals, ".");
    return sign + body;
}

/// Fixed-point rendering of sqrt(radicand) * mult / div to `decimals` places,
/// truncated. Integer-only.
inline std::string sqrt_ratio_decimal(const BigInt& radicand, const BigInt& mult, const BigInt& div,
                                      int decimals) {
    const BigInt scale = ipow(BigInt(10), static_cast<std::uint64_t>(decimals));
    // floor(sqrt(radicand * mult^2 * scale^2)) / div
    const BigInt root = isqrt(radicand * mult * mult * scale * scale);
    const BigInt value = root / div;
    std::string body = value.str();
    const auto d = static_cast<std::size_t>(decimals);
    if (body.size() <= d) {
        body.insert(0, d + 1 - body.size(), '0');
    }
    body.insert(body.size() - d, ".");
    return body;
}

} // namespace towerlab
