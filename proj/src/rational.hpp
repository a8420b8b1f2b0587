#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace nakt {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string rat_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "n", "-n", "n/d" with optional sign on the numerator.
Rational parse_rational(const std::string& s);

// q^e for a nonnegative machine-word exponent.
Rational pow_rational(const Rational& q, unsigned long e);

// Exponent of p in q (negative when p divides the denominator). q != 0.
Int p_valuation(const Rational& q, const Int& p);

double rational_to_double(const Rational& q);

}  // namespace nakt
