#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "free_vector.hpp"

namespace nakt {

/// Ordinary metric space (triangle inequality, not the strong one).
struct MetricSpace {
    std::vector<std::string> points;
    std::vector<std::vector<Rational>> dist;

    std::size_t size() const { return points.size(); }
    std::size_t index_of(const std::string& label) const;
    const Rational& d(std::size_t i, std::size_t j) const { return dist[i][j]; }
};

MetricSpace validate_metric(std::vector<std::string> points,
                            std::vector<std::vector<Rational>> dist);

struct RealPlan {
    struct Entry {
        std::string from, to;
        Rational amount;  // positive
    };
    std::vector<Entry> entries;
    Rational sum_cost = 0;
};

/// Exact Kantorovich norm of a balanced rational vector via uncapacitated
/// min-cost flow (successive shortest augmenting paths on the bipartite
/// reduction between the positive and negative parts).
std::pair<Rational, RealPlan> kantorovich_real(const MetricSpace& space, const FreeVector& u);

/// Same optimum computed on the complete support digraph with node supplies
/// (the transshipment route). Used as the second side of the equivalence
/// check, not as the primary solver.
std::pair<Rational, RealPlan> kantorovich_real_democratic(const MetricSpace& space,
                                                          const FreeVector& u);

struct RealDecomposition {
    struct Term {
        Rational coeff;
        std::string x, y;
    };
    std::vector<Term> terms;
};

Rational real_decomposition_cost(const MetricSpace& space, const RealDecomposition& dec);

/// Sum-cost non-increasing rewrite onto supp(u); logs which rule fired.
RealDecomposition reduce_real_decomposition(const RealDecomposition& dec,
                                            const MetricSpace& space, const FreeVector& u,
                                            std::vector<std::string>* log = nullptr);

/// Weighted geometric median: minimizes sum_i w_i |z_i - t|.
std::pair<std::complex<double>, double> weiszfeld(
    const std::vector<std::complex<double>>& points, const std::vector<double>& weights,
    double tol);

inline std::pair<std::complex<double>, double> weiszfeld(
    const std::vector<std::complex<double>>& points, double tol) {
    return weiszfeld(points, std::vector<double>(points.size(), 1.0), tol);
}

struct ComplexTerm {
    std::complex<double> coeff;
    std::string point;
};

/// Infimum of the sum-cost over plans restricted to the three support points
/// (one free complex variable; solved as a weighted geometric median).
double support_restricted_complex_inf(const std::vector<ComplexTerm>& u,
                                      const MetricSpace& space, double tol);

/// Convex minimization of sum |c_ij| d(x_i,x_j) subject to node balance over
/// the full (small) point set, by iteratively reweighted least squares.
struct ComplexPlanResult {
    double value = 0;
    std::vector<std::tuple<std::string, std::string, std::complex<double>>> plan;
};

ComplexPlanResult complex_norm_small(const std::vector<ComplexTerm>& u,
                                     const MetricSpace& space, double tol,
                                     int max_iterations = 20000);

}  // namespace nakt
