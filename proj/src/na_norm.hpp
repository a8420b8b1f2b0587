#pragma once

#include <optional>
#include <string>
#include <vector>

#include "free_vector.hpp"

namespace nakt {

/// Sparse transport matrix: net outflow at each support point must equal the
/// point's coefficient.
struct TransportPlan {
    struct Entry {
        std::string from, to;
        Scalar coeff;
    };
    std::vector<Entry> entries;
};

/// Per-cluster cut lower bound: the net mass crossing the cluster boundary is
/// lambda(C), every crossing distance equals sep(C).
struct CutBound {
    std::vector<std::string> cluster;
    Scalar cluster_sum;
    Rational separation;
    Cost bound;
};

struct NormCertificate {
    Cost value;
    TransportPlan witness;
    std::vector<CutBound> cut_bounds;
    int argmax_cluster = -1;  // index into cut_bounds, -1 when value is zero
    std::optional<std::string> extension_basepoint;
    std::vector<std::string> notes;
};

struct NaNormOptions {
    std::optional<std::string> basepoint;          // for the zero-point extension
    std::optional<std::vector<Rational>> zero_distances;  // aligned with space.points
    bool pointed = false;                           // no zero extension; requires balance
};

/// Kantorovich ultra-(semi)norm with witness plan and cut certificate.
/// Closed form: max over strict dendrogram clusters C of |lambda(C)|*sep(C),
/// witness by bottom-up consolidation onto smallest-index representatives.
NormCertificate na_norm(const UltraSpace& space, const FreeVector& u,
                        const NaNormOptions& opts = {});

/// Independent oracle: enumerates upper-triangular plans with entries drawn
/// from bounded integer combinations of the coefficients. Result is always an
/// upper bound on the norm; equals it once the budget covers the witness.
Cost na_norm_bruteforce(const UltraSpace& space, const FreeVector& u, int budget,
                        const NaNormOptions& opts = {});

/// Prop-style bounds r*l0 <= ||u|| <= r*l1 over the support (with the zero
/// point when unbalanced).
std::pair<Cost, Cost> na_norm_bounds(const UltraSpace& space, const FreeVector& u,
                                     const NaNormOptions& opts = {});

/// Max-cost of a decomposition over a space (zero marker allowed only when the
/// space carries the zero point).
Cost decomposition_max_cost(const UltraSpace& space, const FieldSpec& field,
                            const Decomposition& dec);

struct ReductionLog {
    std::vector<std::string> steps;
};

/// Rewrites a decomposition of u onto supp(u) without increasing its
/// max-cost; coefficients stay inside any additive subgroup containing the
/// inputs (every rule is an addition or subtraction).
Decomposition reduce_decomposition(const Decomposition& dec, const UltraSpace& space,
                                   const FreeVector& u, ReductionLog* log = nullptr);

struct VerifyReport {
    bool witness_feasible = false;   // net flow matches the coefficients
    bool cost_matches_value = false;
    bool value_is_max_cut = false;
    bool entries_are_cluster_sums = false;
    bool bounds_hold = false;
    std::vector<std::string> failures;

    bool ok() const {
        return witness_feasible && cost_matches_value && value_is_max_cut &&
               entries_are_cluster_sums && bounds_hold;
    }
};

VerifyReport verify_certificate(const NormCertificate& cert, const UltraSpace& space,
                                const FreeVector& u, const NaNormOptions& opts = {});

/// Pointed variant on balanced vectors: same algorithm, no zero extension.
NormCertificate na_norm_pointed(const UltraSpace& space, const FreeVector& u);

/// One certificate per ultra-pseudometric in the family (all over the same
/// point set).
std::vector<NormCertificate> seminorm_family(const std::vector<UltraSpace>& spaces,
                                             const FreeVector& u,
                                             const NaNormOptions& opts = {});

/// Claim-6 kernel witness: expresses u through zero-distance differences, or
/// reports that none exists.
std::optional<Decomposition> kernel_witness(const UltraSpace& space, const FreeVector& u);

}  // namespace nakt
