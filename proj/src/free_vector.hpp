#pragma once

#include <string>
#include <vector>

#include "field.hpp"
#include "ultrametric.hpp"

namespace nakt {

/// Element of the free vector space over the point set, in normal form:
/// distinct points, nonzero coefficients.
struct FreeVector {
    std::vector<std::pair<std::string, Scalar>> terms;
    FieldSpec field;

    std::size_t term_count() const { return terms.size(); }
    bool is_zero() const { return terms.empty(); }

    /// Equality of the formal sums (term order is presentation detail).
    bool operator==(const FreeVector& o) const;
};

FreeVector normalize(const FieldSpec& field,
                     std::vector<std::pair<std::string, Scalar>> raw_terms);

/// Sum of the coefficients; the vector is balanced iff this is zero.
Scalar balance(const FreeVector& u);
bool is_balanced(const FreeVector& u);

struct SupportInfo {
    std::vector<std::string> support;  // includes the zero marker when unbalanced
    std::size_t m = 0;                 // |support|
    Magnitude r;                       // max |coefficient| over the n normal-form terms
};

SupportInfo support_info(const FreeVector& u);

/// Formal sum of difference terms s * (x - y) over labels (possibly the zero
/// marker).
struct Decomposition {
    struct Term {
        Scalar coeff;
        std::string x, y;
    };
    std::vector<Term> terms;
};

/// Collapses a decomposition back to a normal-form vector (the zero-marker
/// label contributes nothing).
FreeVector evaluate_decomposition(const FieldSpec& field, const Decomposition& dec);

/// Generators of the additive subgroup G_u plus a bounded membership test.
struct GuDescription {
    std::vector<Scalar> generators;
    FieldSpec field;
};

GuDescription gu_description(const FreeVector& u);

enum class Membership { yes, no_within_budget, unknown };

/// Searches integer combinations sum m_i * g_i with |m_i| <= budget.
Membership gu_membership(const GuDescription& gu, const Scalar& c, int budget);

/// All distinct values of integer combinations with |m_i| <= budget (includes
/// zero). Used by the brute-force solver's candidate enumeration.
std::vector<Scalar> gu_combinations(const GuDescription& gu, int budget);

}  // namespace nakt
