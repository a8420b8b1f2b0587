#include "graev.hpp"

namespace nakt {

std::vector<Int> integer_coefficients(const FreeVector& u) {
    std::vector<Int> out;
    for (const auto& [pt, c] : u.terms) {
        switch (u.field.kind) {
            case FieldKind::trivial_rational:
            case FieldKind::p_adic:
            case FieldKind::real: {
                const Rational& q = std::get<Rational>(c.v);
                if (denominator(q) != 1)
                    throw input_error("non-integer coefficient " + rat_str(q) + " at '" + pt + "'");
                out.push_back(numerator(q));
                break;
            }
            case FieldKind::levi_civita: {
                const Series& s = std::get<Series>(c.v);
                if (s.size() != 1 || s.begin()->first != 0 || denominator(s.begin()->second) != 1)
                    throw input_error("coefficient at '" + pt + "' is not an embedded integer");
                out.push_back(numerator(s.begin()->second));
                break;
            }
            default:
                throw input_error("integer coefficients are defined for char-0 field kinds only");
        }
    }
    return out;
}

namespace {

FreeVector as_trivial(const FreeVector& u, const Rational& base) {
    std::vector<Int> coeffs = integer_coefficients(u);
    FieldSpec triv = FieldSpec::trivial();
    triv.base = base;
    std::vector<std::pair<std::string, Scalar>> raw;
    for (std::size_t k = 0; k < u.terms.size(); ++k)
        raw.emplace_back(u.terms[k].first, scalar_from_int(triv, coeffs[k]));
    return normalize(triv, std::move(raw));
}

}  // namespace

NormCertificate graev_norm(const UltraSpace& space, const FreeVector& u,
                           const NaNormOptions& opts) {
    return na_norm(space, as_trivial(u, u.field.base), opts);
}

Cost graev_norm_oracle(const UltraSpace& space, const FreeVector& u, int budget,
                       const NaNormOptions& opts) {
    return na_norm_bruteforce(space, as_trivial(u, u.field.base), budget, opts);
}

TkUspReport tk_usp_compare(const UltraSpace& space, const FreeVector& u,
                           const FieldSpec& field, const NaNormOptions& opts) {
    if (!field.is_na() || field.kind == FieldKind::finite_field)
        throw input_error("comparison needs a char-0 NA field kind");
    TkUspReport rep;
    rep.field_norm = na_norm(space, u, opts).value;
    rep.graev = graev_norm(space, u, opts).value;
    rep.equal = cost_equal(rep.field_norm, rep.graev);
    rep.valuation_trivial_on_q =
        field.kind == FieldKind::trivial_rational || field.kind == FieldKind::levi_civita;
    return rep;
}

}  // namespace nakt
