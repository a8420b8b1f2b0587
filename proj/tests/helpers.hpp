#pragma once

// Shared construction shorthand for the unit suites.

#include <random>
#include <string>
#include <vector>

#include "free_vector.hpp"
#include "ultrametric.hpp"

namespace nakt::testing {

inline Rational Q(const std::string& s) { return parse_rational(s); }

inline UltraSpace uspace(std::vector<std::string> pts,
                         std::vector<std::vector<std::string>> dist,
                         bool pseudo = false) {
    std::vector<std::vector<Rational>> d;
    for (auto& row : dist) {
        std::vector<Rational> r;
        for (auto& v : row) r.push_back(Q(v));
        d.push_back(std::move(r));
    }
    return validate_ultrametric(std::move(pts), std::move(d), pseudo);
}

inline FreeVector fvec(const FieldSpec& field,
                       std::vector<std::pair<std::string, std::string>> raw) {
    std::vector<std::pair<std::string, Scalar>> terms;
    for (auto& [pt, c] : raw) terms.emplace_back(pt, parse_scalar(field, c));
    return normalize(field, std::move(terms));
}

/// Equilateral space: every off-diagonal distance is l.
inline UltraSpace equilateral(int n, const Rational& l) {
    std::vector<std::string> pts;
    std::vector<std::vector<Rational>> d(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) pts.push_back("x" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = l;
    return validate_ultrametric(std::move(pts), std::move(d), false);
}

/// Random nonzero scalar with small entries, valid for the field kind.
inline Scalar random_scalar(std::mt19937_64& rng, const FieldSpec& field,
                            bool allow_zero = false) {
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (;;) {
        Scalar s;
        switch (field.kind) {
            case FieldKind::levi_civita: {
                Series ser;
                int terms = std::uniform_int_distribution<int>(1, 2)(rng);
                for (int t = 0; t < terms; ++t) {
                    Rational e(coeff(rng), std::uniform_int_distribution<int>(1, 3)(rng));
                    int c = coeff(rng);
                    if (c != 0) ser[e] += c;
                }
                for (auto it = ser.begin(); it != ser.end();)
                    it = (it->second == 0) ? ser.erase(it) : std::next(it);
                s = Scalar{std::move(ser)};
                break;
            }
            case FieldKind::complex_field:
                s = Scalar{ComplexRational{Rational(coeff(rng)), Rational(coeff(rng))}};
                break;
            case FieldKind::finite_field:
                s = scalar_from_int(field, Int(coeff(rng)));
                break;
            default: {
                int den = std::uniform_int_distribution<int>(1, 4)(rng);
                s = scalar_from_rational(field, Rational(coeff(rng), den));
                break;
            }
        }
        if (allow_zero || !scalar_is_zero(field, s)) return s;
    }
}

}  // namespace nakt::testing
