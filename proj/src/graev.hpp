#pragma once

#include "na_norm.hpp"

namespace nakt {

/// Checks that every coefficient of u is an integer of the field (image of an
/// integer under the natural embedding) and returns the integer values.
std::vector<Int> integer_coefficients(const FreeVector& u);

/// Graev-type ultra-norm on the free abelian group: inf over presentations
/// u = sum (x_i - y_i) of max d(x_i, y_i). Computed as the Kantorovich
/// ultra-norm under the trivially valued rationals.
NormCertificate graev_norm(const UltraSpace& space, const FreeVector& u,
                           const NaNormOptions& opts = {});

/// Reduction-based oracle for small instances (integer-combination search
/// under the trivial valuation).
Cost graev_norm_oracle(const UltraSpace& space, const FreeVector& u, int budget,
                       const NaNormOptions& opts = {});

struct TkUspReport {
    Cost field_norm;  // ||u||^L over the supplied field
    Cost graev;       // ||u||^A
    bool equal = false;
    bool valuation_trivial_on_q = false;
};

/// Compares the Kantorovich ultra-norm over the field with the Graev norm.
TkUspReport tk_usp_compare(const UltraSpace& space, const FreeVector& u,
                           const FieldSpec& field, const NaNormOptions& opts = {});

}  // namespace nakt
