#include "field.hpp"

#include <cmath>
#include <sstream>

namespace nakt {

std::string field_kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::trivial_rational: return "trivial-rational";
        case FieldKind::p_adic: return "p-adic-rational";
        case FieldKind::finite_field: return "finite-field";
        case FieldKind::levi_civita: return "levi-civita";
        case FieldKind::real: return "real";
        case FieldKind::complex_field: return "complex";
    }
    return "?";
}

namespace {

bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_prime(const Int& p) {
    if (!is_prime(p)) throw input_error("p must be prime, got " + p.str());
}

[[noreturn]] void mismatch(const FieldSpec& spec) {
    throw input_error("scalar does not belong to field " + field_kind_name(spec.kind));
}

const Rational& as_rat(const FieldSpec& spec, const Scalar& a) {
    if (auto* q = std::get_if<Rational>(&a.v)) return *q;
    mismatch(spec);
}

const Int& as_residue(const FieldSpec& spec, const Scalar& a) {
    if (auto* r = std::get_if<Int>(&a.v)) return *r;
    mismatch(spec);
}

const Series& as_series(const FieldSpec& spec, const Scalar& a) {
    if (auto* s = std::get_if<Series>(&a.v)) return *s;
    mismatch(spec);
}

const ComplexRational& as_complex(const FieldSpec& spec, const Scalar& a) {
    if (auto* c = std::get_if<ComplexRational>(&a.v)) return *c;
    mismatch(spec);
}

Int mod_reduce(Int n, const Int& p) {
    Int r = n % p;
    if (r < 0) r += p;
    return r;
}

// Extended Euclid inverse in GF(p).
Int mod_inverse(const Int& a, const Int& p) {
    Int t = 0, new_t = 1, r = p, new_r = mod_reduce(a, p);
    while (new_r != 0) {
        Int q = r / new_r;
        Int tmp = t - q * new_t;
        t = new_t; new_t = tmp;
        tmp = r - q * new_r;
        r = new_r; new_r = tmp;
    }
    if (r != 1) throw input_error("no inverse mod p");
    return mod_reduce(t, p);
}

Series series_prune(Series s) {
    for (auto it = s.begin(); it != s.end();)
        it = (it->second == 0) ? s.erase(it) : std::next(it);
    return s;
}

}  // namespace

FieldSpec FieldSpec::trivial() { return {FieldKind::trivial_rational}; }

FieldSpec FieldSpec::padic(const Int& p) {
    require_prime(p);
    FieldSpec s{FieldKind::p_adic, p};
    s.base = Rational(p);
    return s;
}

FieldSpec FieldSpec::finite(const Int& p) {
    require_prime(p);
    return {FieldKind::finite_field, p};
}

FieldSpec FieldSpec::levi_civita(const Rational& base) {
    if (base <= 1) throw input_error("magnitude base must exceed 1");
    FieldSpec s{FieldKind::levi_civita};
    s.base = base;
    return s;
}

FieldSpec FieldSpec::real() { return {FieldKind::real}; }
FieldSpec FieldSpec::complex() { return {FieldKind::complex_field}; }

Scalar scalar_zero(const FieldSpec& spec) {
    switch (spec.kind) {
        case FieldKind::finite_field: return Scalar{Int(0)};
        case FieldKind::levi_civita: return Scalar{Series{}};
        case FieldKind::complex_field: return Scalar{ComplexRational{0, 0}};
        default: return Scalar{Rational(0)};
    }
}

Scalar scalar_one(const FieldSpec& spec) { return scalar_from_rational(spec, 1); }

Scalar scalar_from_rational(const FieldSpec& spec, const Rational& q) {
    switch (spec.kind) {
        case FieldKind::finite_field: {
            Int num = mod_reduce(numerator(q), spec.p);
            Int den = mod_reduce(denominator(q), spec.p);
            if (den == 0) throw input_error("rational has no image in GF(p): denominator divisible by p");
            return Scalar{mod_reduce(num * mod_inverse(den, spec.p), spec.p)};
        }
        case FieldKind::levi_civita:
            if (q == 0) return Scalar{Series{}};
            return Scalar{Series{{Rational(0), q}}};
        case FieldKind::complex_field:
            return Scalar{ComplexRational{q, 0}};
        default:
            return Scalar{q};
    }
}

Scalar scalar_from_int(const FieldSpec& spec, const Int& n) {
    return scalar_from_rational(spec, Rational(n));
}

bool scalar_is_zero(const FieldSpec& spec, const Scalar& a) {
    switch (spec.kind) {
        case FieldKind::finite_field: return as_residue(spec, a) == 0;
        case FieldKind::levi_civita: return as_series(spec, a).empty();
        case FieldKind::complex_field: {
            const auto& c = as_complex(spec, a);
            return c.re == 0 && c.im == 0;
        }
        default: return as_rat(spec, a) == 0;
    }
}

Scalar scalar_add(const FieldSpec& spec, const Scalar& a, const Scalar& b) {
    switch (spec.kind) {
        case FieldKind::finite_field:
            return Scalar{mod_reduce(as_residue(spec, a) + as_residue(spec, b), spec.p)};
        case FieldKind::levi_civita: {
            Series s = as_series(spec, a);
            for (const auto& [e, c] : as_series(spec, b)) s[e] += c;
            return Scalar{series_prune(std::move(s))};
        }
        case FieldKind::complex_field: {
            const auto& x = as_complex(spec, a);
            const auto& y = as_complex(spec, b);
            return Scalar{ComplexRational{x.re + y.re, x.im + y.im}};
        }
        default:
            return Scalar{as_rat(spec, a) + as_rat(spec, b)};
    }
}

Scalar scalar_neg(const FieldSpec& spec, const Scalar& a) {
    switch (spec.kind) {
        case FieldKind::finite_field:
            return Scalar{mod_reduce(-as_residue(spec, a), spec.p)};
        case FieldKind::levi_civita: {
            Series s = as_series(spec, a);
            for (auto& [e, c] : s) c = -c;
            return Scalar{std::move(s)};
        }
        case FieldKind::complex_field: {
            const auto& x = as_complex(spec, a);
            return Scalar{ComplexRational{-x.re, -x.im}};
        }
        default:
            return Scalar{-as_rat(spec, a)};
    }
}

Scalar scalar_sub(const FieldSpec& spec, const Scalar& a, const Scalar& b) {
    return scalar_add(spec, a, scalar_neg(spec, b));
}

Scalar scalar_mul(const FieldSpec& spec, const Scalar& a, const Scalar& b) {
    switch (spec.kind) {
        case FieldKind::finite_field:
            return Scalar{mod_reduce(as_residue(spec, a) * as_residue(spec, b), spec.p)};
        case FieldKind::levi_civita: {
            Series out;
            for (const auto& [ea, ca] : as_series(spec, a))
                for (const auto& [eb, cb] : as_series(spec, b)) out[ea + eb] += ca * cb;
            return Scalar{series_prune(std::move(out))};
        }
        case FieldKind::complex_field: {
            const auto& x = as_complex(spec, a);
            const auto& y = as_complex(spec, b);
            return Scalar{ComplexRational{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re}};
        }
        default:
            return Scalar{as_rat(spec, a) * as_rat(spec, b)};
    }
}

Scalar scalar_inv(const FieldSpec& spec, const Scalar& a) {
    if (scalar_is_zero(spec, a)) throw input_error("division by zero");
    switch (spec.kind) {
        case FieldKind::finite_field:
            return Scalar{mod_inverse(as_residue(spec, a), spec.p)};
        case FieldKind::levi_civita: {
            const Series& f = as_series(spec, a);
            // f = t(1+g) with t the leading monomial; invert the tail by a
            // truncated geometric series. Exact when g = 0.
            auto lead = *f.begin();
            Series t_inv{{-lead.first, Rational(1) / lead.second}};
            Series g;
            for (auto it = std::next(f.begin()); it != f.end(); ++it)
                g[it->first - lead.first] = it->second / lead.second;
            Scalar acc = scalar_from_rational(spec, 1);
            Scalar term = scalar_from_rational(spec, 1);
            Scalar neg_g{series_prune(std::move(g))};
            neg_g = scalar_neg(spec, neg_g);
            for (int k = 1; k <= spec.lc_truncation && !scalar_is_zero(spec, neg_g); ++k) {
                term = scalar_mul(spec, term, neg_g);
                acc = scalar_add(spec, acc, term);
            }
            return scalar_mul(spec, Scalar{std::move(t_inv)}, acc);
        }
        case FieldKind::complex_field: {
            const auto& x = as_complex(spec, a);
            Rational n = x.re * x.re + x.im * x.im;
            return Scalar{ComplexRational{x.re / n, -x.im / n}};
        }
        default:
            return Scalar{Rational(1) / as_rat(spec, a)};
    }
}

std::string scalar_str(const FieldSpec& spec, const Scalar& a) {
    switch (spec.kind) {
        case FieldKind::finite_field:
            return as_residue(spec, a).str() + " mod " + spec.p.str();
        case FieldKind::levi_civita: {
            std::ostringstream os;
            os << "[";
            bool first = true;
            for (const auto& [e, c] : as_series(spec, a)) {
                if (!first) os << ", ";
                os << "[" << rat_str(e) << ", " << rat_str(c) << "]";
                first = false;
            }
            os << "]";
            return os.str();
        }
        case FieldKind::complex_field: {
            const auto& c = as_complex(spec, a);
            return "[" + rat_str(c.re) + ", " + rat_str(c.im) + "]";
        }
        default:
            return rat_str(as_rat(spec, a));
    }
}

Scalar parse_scalar(const FieldSpec& spec, const std::string& s) {
    if (spec.kind == FieldKind::finite_field) {
        auto mod_pos = s.find(" mod ");
        std::string head = mod_pos == std::string::npos ? s : s.substr(0, mod_pos);
        if (mod_pos != std::string::npos) {
            Int stated(s.substr(mod_pos + 5));
            if (stated != spec.p)
                throw input_error("residue modulus " + stated.str() + " does not match p=" + spec.p.str());
        }
        return scalar_from_rational(spec, parse_rational(head));
    }
    if (s.find('[') != std::string::npos) {
        // bracketed forms as emitted by scalar_str
        std::vector<Rational> nums;
        std::string cur;
        for (char ch : s) {
            if ((ch >= '0' && ch <= '9') || ch == '-' || ch == '/') {
                cur += ch;
            } else if (!cur.empty()) {
                nums.push_back(parse_rational(cur));
                cur.clear();
            }
        }
        if (!cur.empty()) nums.push_back(parse_rational(cur));
        if (spec.kind == FieldKind::complex_field) {
            if (nums.size() != 2) throw input_error("complex literal needs [re, im]: '" + s + "'");
            return Scalar{ComplexRational{nums[0], nums[1]}};
        }
        if (spec.kind == FieldKind::levi_civita) {
            if (nums.size() % 2 != 0)
                throw input_error("series literal needs [exponent, coefficient] pairs: '" + s + "'");
            Series ser;
            for (std::size_t i = 0; i < nums.size(); i += 2)
                if (nums[i + 1] != 0) ser[nums[i]] += nums[i + 1];
            for (auto it = ser.begin(); it != ser.end();)
                it = (it->second == 0) ? ser.erase(it) : std::next(it);
            return Scalar{std::move(ser)};
        }
        throw input_error("bracketed literal for a rational field kind: '" + s + "'");
    }
    return scalar_from_rational(spec, parse_rational(s));
}

Magnitude mag_mul(const Magnitude& a, const Magnitude& b) {
    if (a.zero || b.zero) return Magnitude::of_zero();
    return Magnitude::from_exponent(a.exponent + b.exponent);
}

int mag_compare(const Magnitude& a, const Magnitude& b) {
    if (a.zero && b.zero) return 0;
    if (a.zero) return -1;
    if (b.zero) return 1;
    // value b^(-e): smaller exponent means larger magnitude
    if (a.exponent == b.exponent) return 0;
    return a.exponent < b.exponent ? 1 : -1;
}

Magnitude mag_max(const Magnitude& a, const Magnitude& b) {
    return mag_compare(a, b) >= 0 ? a : b;
}

Magnitude scalar_abs(const FieldSpec& spec, const Scalar& a) {
    if (!spec.is_na()) throw input_error("abs: archimedean field kind has no NA magnitude");
    if (scalar_is_zero(spec, a)) return Magnitude::of_zero();
    switch (spec.kind) {
        case FieldKind::p_adic:
            return Magnitude::from_exponent(Rational(p_valuation(as_rat(spec, a), spec.p)));
        case FieldKind::levi_civita:
            return Magnitude::from_exponent(as_series(spec, a).begin()->first);
        default:  // trivial valuation
            return Magnitude::from_exponent(0);
    }
}

Cost Cost::make(const Rational& mantissa, const Rational& exponent, const Rational& base) {
    if (mantissa == 0) return Cost::of_zero(base);
    if (mantissa < 0) throw std::logic_error("negative cost mantissa");
    return {false, mantissa, exponent, base};
}

double Cost::approx() const {
    if (zero) return 0.0;
    double b = rational_to_double(base);
    return rational_to_double(mantissa) * std::pow(b, -rational_to_double(exponent));
}

namespace {

// q vs b^e with e = num/den exactly, via (q)^den vs b^num.
int cmp_rational_vs_power(const Rational& q, const Rational& b, const Rational& e) {
    Int num = numerator(e);
    Int den = denominator(e);
    if (den > 1000000 || abs(num) > 1000000)
        throw input_error("cost exponent too large for exact comparison");
    Rational lhs = pow_rational(q, den.convert_to<unsigned long>());
    Rational rhs;
    if (num >= 0)
        rhs = pow_rational(b, num.convert_to<unsigned long>());
    else
        rhs = 1 / pow_rational(b, Int(-num).convert_to<unsigned long>());
    if (lhs == rhs) return 0;
    return lhs < rhs ? -1 : 1;
}

}  // namespace

int cost_compare(const Cost& a, const Cost& b) {
    if (!a.zero && !b.zero && a.base != b.base)
        throw input_error("cost comparison across different bases");
    if (a.zero && b.zero) return 0;
    if (a.zero) return -1;
    if (b.zero) return 1;
    // q1 b^-e1 vs q2 b^-e2  <=>  q1/q2 vs b^(e1-e2)
    return cmp_rational_vs_power(a.mantissa / b.mantissa, a.base, a.exponent - b.exponent);
}

Cost cost_max(const Cost& a, const Cost& b) { return cost_compare(a, b) >= 0 ? a : b; }

Cost cost_scale(const Cost& c, const Rational& positive_factor) {
    if (positive_factor <= 0) throw input_error("cost scale factor must be positive");
    if (c.zero) return c;
    return Cost::make(c.mantissa * positive_factor, c.exponent, c.base);
}

Cost cost_from(const Magnitude& m, const Rational& distance, const Rational& base) {
    if (m.zero || distance == 0) return Cost::of_zero(base);
    if (distance < 0) throw input_error("negative distance");
    return Cost::make(distance, m.exponent, base);
}

bool cost_equal(const Cost& a, const Cost& b) { return cost_compare(a, b) == 0; }

bool strong_triangle_check(const FieldSpec& spec, const Scalar& a, const Scalar& b) {
    if (!spec.is_na()) throw input_error("strong triangle check needs an NA field kind");
    Magnitude ma = scalar_abs(spec, a);
    Magnitude mb = scalar_abs(spec, b);
    Magnitude ms = scalar_abs(spec, scalar_add(spec, a, b));
    Magnitude mx = mag_max(ma, mb);
    if (mag_compare(ms, mx) > 0) return false;
    if (mag_compare(ma, mb) != 0 && mag_compare(ms, mx) != 0) return false;
    return true;
}

std::string scalar_key(const FieldSpec& spec, const Scalar& a) {
    return scalar_str(spec, a);
}

}  // namespace nakt
