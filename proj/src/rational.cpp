#include "rational.hpp"

namespace nakt {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw input_error("zero denominator in '" + s + "'");
        return Rational(num, den);
    } catch (const std::exception& e) {
        throw input_error("bad rational literal '" + s + "': " + e.what());
    }
}

Rational pow_rational(const Rational& q, unsigned long e) {
    Rational result = 1;
    Rational base = q;
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

Int p_valuation(const Rational& q, const Int& p) {
    if (q == 0) throw std::logic_error("p_valuation of zero");
    Int v = 0;
    Int num = numerator(q);
    Int den = denominator(q);
    while (num % p == 0) {
        num /= p;
        ++v;
    }
    while (den % p == 0) {
        den /= p;
        --v;
    }
    return v;
}

double rational_to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace nakt
