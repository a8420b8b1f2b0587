#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "rational.hpp"

namespace nakt {

enum class FieldKind {
    trivial_rational,
    p_adic,
    finite_field,
    levi_civita,
    real,
    complex_field,
};

std::string field_kind_name(FieldKind k);

/// Which valued field the scalars live in. For p-adic the magnitude base is
/// forced to p; for the other NA kinds it defaults to 2.
struct FieldSpec {
    FieldKind kind = FieldKind::trivial_rational;
    Int p = 0;              // p_adic / finite_field
    Rational base = 2;      // magnitude base b > 1
    int lc_truncation = 8;  // truncation order for Levi-Civita inverses

    bool is_na() const { return kind != FieldKind::real && kind != FieldKind::complex_field; }

    static FieldSpec trivial();
    static FieldSpec padic(const Int& p);
    static FieldSpec finite(const Int& p);
    static FieldSpec levi_civita(const Rational& base = 2);
    static FieldSpec real();
    static FieldSpec complex();

    bool operator==(const FieldSpec& o) const {
        return kind == o.kind && p == o.p && base == o.base;
    }
};

/// Finite-support series with rational exponents: exponent -> coefficient.
using Series = std::map<Rational, Rational>;

struct ComplexRational {
    Rational re, im;
    bool operator==(const ComplexRational&) const = default;
};

/// One element of a configured field. Rational payload serves the trivial,
/// p-adic and real kinds.
struct Scalar {
    std::variant<Rational, Int, Series, ComplexRational> v;

    Scalar() : v(Rational(0)) {}
    explicit Scalar(Rational q) : v(std::move(q)) {}
    explicit Scalar(Int n) : v(std::move(n)) {}
    explicit Scalar(Series s) : v(std::move(s)) {}
    explicit Scalar(ComplexRational c) : v(std::move(c)) {}

    bool operator==(const Scalar&) const = default;
};

Scalar scalar_zero(const FieldSpec& spec);
Scalar scalar_one(const FieldSpec& spec);
Scalar scalar_from_rational(const FieldSpec& spec, const Rational& q);
Scalar scalar_from_int(const FieldSpec& spec, const Int& n);

bool scalar_is_zero(const FieldSpec& spec, const Scalar& a);

Scalar scalar_add(const FieldSpec& spec, const Scalar& a, const Scalar& b);
Scalar scalar_sub(const FieldSpec& spec, const Scalar& a, const Scalar& b);
Scalar scalar_mul(const FieldSpec& spec, const Scalar& a, const Scalar& b);
Scalar scalar_neg(const FieldSpec& spec, const Scalar& a);
Scalar scalar_inv(const FieldSpec& spec, const Scalar& a);

std::string scalar_str(const FieldSpec& spec, const Scalar& a);
Scalar parse_scalar(const FieldSpec& spec, const std::string& s);

/// b^(-exponent); zero magnitudes carry no exponent.
struct Magnitude {
    bool zero = true;
    Rational exponent = 0;

    static Magnitude of_zero() { return {}; }
    static Magnitude from_exponent(Rational e) { return {false, std::move(e)}; }

    bool operator==(const Magnitude&) const = default;
};

Magnitude mag_mul(const Magnitude& a, const Magnitude& b);
// <0, ==0, >0 for a < b, a == b, a > b (same base assumed).
int mag_compare(const Magnitude& a, const Magnitude& b);
Magnitude mag_max(const Magnitude& a, const Magnitude& b);

/// |a| for the NA kinds; throws input_error on archimedean kinds.
Magnitude scalar_abs(const FieldSpec& spec, const Scalar& a);

/// q * b^(-e) with q > 0 a rational mantissa. Ordered exactly by
/// cross-powering, never through floats.
struct Cost {
    bool zero = true;
    Rational mantissa = 1;
    Rational exponent = 0;
    Rational base = 2;

    static Cost of_zero(const Rational& base = 2) { return {true, 1, 0, base}; }
    static Cost make(const Rational& mantissa, const Rational& exponent, const Rational& base);

    double approx() const;
};

// Exact trichotomy; throws input_error on mismatched bases.
int cost_compare(const Cost& a, const Cost& b);
Cost cost_max(const Cost& a, const Cost& b);
Cost cost_scale(const Cost& c, const Rational& positive_factor);
/// |m| * d as a Cost (zero when either side vanishes).
Cost cost_from(const Magnitude& m, const Rational& distance, const Rational& base);

bool cost_equal(const Cost& a, const Cost& b);

/// true iff |a+b| <= max(|a|,|b|), with equality enforced when |a| != |b|.
bool strong_triangle_check(const FieldSpec& spec, const Scalar& a, const Scalar& b);

/// Canonical key for hashing/deduplication of scalars within one field.
std::string scalar_key(const FieldSpec& spec, const Scalar& a);

}  // namespace nakt
