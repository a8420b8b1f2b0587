#include <doctest.h>

#include <cmath>
#include <random>

#include "classical.hpp"
#include "helpers.hpp"

using namespace nakt;
using nakt::testing::Q;

namespace {

MetricSpace mspace(std::vector<std::string> pts, std::vector<std::vector<std::string>> dist) {
    std::vector<std::vector<Rational>> d;
    for (auto& row : dist) {
        std::vector<Rational> r;
        for (auto& v : row) r.push_back(Q(v));
        d.push_back(std::move(r));
    }
    return validate_metric(std::move(pts), std::move(d));
}

FreeVector rvec(std::vector<std::pair<std::string, std::string>> raw) {
    return nakt::testing::fvec(FieldSpec::real(), std::move(raw));
}

/// Random metric via shortest-path closure of a random positive matrix.
MetricSpace random_metric(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(1, 9), den(1, 3);
    std::size_t sn = static_cast<std::size_t>(n);
    std::vector<std::vector<Rational>> d(sn, std::vector<Rational>(sn, 0));
    for (std::size_t i = 0; i < sn; ++i)
        for (std::size_t j = i + 1; j < sn; ++j) d[i][j] = d[j][i] = Rational(num(rng), den(rng));
    for (std::size_t k = 0; k < sn; ++k)
        for (std::size_t i = 0; i < sn; ++i)
            for (std::size_t j = 0; j < sn; ++j)
                if (i != j && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i) pts.push_back("p" + std::to_string(i));
    return validate_metric(std::move(pts), std::move(d));
}

FreeVector random_balanced(std::mt19937_64& rng, const MetricSpace& s, int max_terms) {
    std::vector<std::pair<std::string, Scalar>> raw;
    Rational total = 0;
    int terms = std::uniform_int_distribution<int>(1, max_terms)(rng);
    for (int t = 0; t < terms; ++t) {
        Rational c(std::uniform_int_distribution<int>(-5, 5)(rng),
                   std::uniform_int_distribution<int>(1, 3)(rng));
        std::size_t p = std::uniform_int_distribution<std::size_t>(0, s.size() - 2)(rng);
        raw.emplace_back(s.points[p], Scalar{c});
        total += c;
    }
    raw.emplace_back(s.points[s.size() - 1], Scalar{-total});
    return normalize(FieldSpec::real(), std::move(raw));
}

}  // namespace

TEST_CASE("metric validation") {
    CHECK_NOTHROW(mspace({"a", "b", "c"}, {{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}}));
    // ordinary triangle violation
    CHECK_THROWS_AS(mspace({"a", "b", "c"}, {{"0", "1", "3"}, {"1", "0", "1"}, {"3", "1", "0"}}),
                    input_error);
    // zero off-diagonal
    CHECK_THROWS_AS(mspace({"a", "b"}, {{"0", "0"}, {"0", "0"}}), input_error);
}

TEST_CASE("kantorovich_real examples") {
    MetricSpace s = mspace({"a", "b", "c"}, {{"0", "1", "1"}, {"1", "0", "2"}, {"1", "2", "0"}});
    SUBCASE("difference recovers distance") {
        auto [v, plan] = kantorovich_real(s, rvec({{"b", "1"}, {"c", "-1"}}));
        CHECK(v == 2);
        REQUIRE(plan.entries.size() == 1);
        CHECK(plan.entries[0].amount == 1);
    }
    SUBCASE("split supply") {
        auto [v, plan] = kantorovich_real(s, rvec({{"a", "2"}, {"b", "-1"}, {"c", "-1"}}));
        CHECK(v == 2);  // send 1 to b and 1 to c at unit distance each
        CHECK(plan.entries.size() == 2);
    }
    SUBCASE("zero vector") {
        auto [v, plan] = kantorovich_real(s, rvec({}));
        CHECK(v == 0);
        CHECK(plan.entries.empty());
    }
    SUBCASE("unbalanced input is rejected") {
        CHECK_THROWS_AS(kantorovich_real(s, rvec({{"a", "1"}})), input_error);
    }
}

TEST_CASE("democratic equals bipartite") {
    std::mt19937_64 rng(51);
    for (int it = 0; it < 60; ++it) {
        MetricSpace s = random_metric(rng, std::uniform_int_distribution<int>(2, 8)(rng));
        FreeVector u = random_balanced(rng, s, 4);
        auto [vb, pb] = kantorovich_real(s, u);
        auto [vd, pd] = kantorovich_real_democratic(s, u);
        CHECK(vb == vd);
    }
}

TEST_CASE("real norm axioms") {
    std::mt19937_64 rng(52);
    for (int it = 0; it < 50; ++it) {
        MetricSpace s = random_metric(rng, 5);
        FreeVector u = random_balanced(rng, s, 3);
        FreeVector v = random_balanced(rng, s, 3);
        Rational alpha(std::uniform_int_distribution<int>(-4, 4)(rng),
                       std::uniform_int_distribution<int>(1, 3)(rng));
        Rational nu = kantorovich_real(s, u).first;
        Rational nv = kantorovich_real(s, v).first;
        std::vector<std::pair<std::string, Scalar>> sum = u.terms;
        for (const auto& t : v.terms) sum.push_back(t);
        Rational nsum = kantorovich_real(s, normalize(FieldSpec::real(), sum)).first;
        CHECK(nsum <= nu + nv);  // triangle inequality of the optimum

        std::vector<std::pair<std::string, Scalar>> scaled;
        for (const auto& [pt, c] : u.terms)
            scaled.emplace_back(pt, Scalar{alpha * std::get<Rational>(c.v)});
        Rational nscaled = kantorovich_real(s, normalize(FieldSpec::real(), scaled)).first;
        CHECK(nscaled == abs(alpha) * nu);  // absolute homogeneity
    }
}

TEST_CASE("reduce_real_decomposition examples") {
    MetricSpace s = mspace({"x", "y", "z"}, {{"0", "2", "1"}, {"2", "0", "1"}, {"1", "1", "0"}});
    SUBCASE("equal coefficients collapse through z") {
        RealDecomposition dec;
        dec.terms.push_back({Q("3"), "x", "z"});
        dec.terms.push_back({Q("3"), "z", "y"});
        FreeVector u = rvec({{"x", "3"}, {"y", "-3"}});
        std::vector<std::string> log;
        RealDecomposition red = reduce_real_decomposition(dec, s, u, &log);
        REQUIRE(red.terms.size() == 1);
        CHECK(red.terms[0].x == "x");
        CHECK(red.terms[0].y == "y");
        CHECK(real_decomposition_cost(s, red) <= real_decomposition_cost(s, dec));
        CHECK(!log.empty());
    }
    SUBCASE("smaller coefficient reroutes first") {
        RealDecomposition dec;
        dec.terms.push_back({Q("1"), "x", "z"});
        dec.terms.push_back({Q("4"), "z", "y"});
        FreeVector u = rvec({{"x", "1"}, {"z", "3"}, {"y", "-4"}});
        RealDecomposition red = reduce_real_decomposition(dec, s, u);
        Rational c = 0;
        for (const auto& t : red.terms) c += 1;
        CHECK(real_decomposition_cost(s, red) <= real_decomposition_cost(s, dec));
    }
    SUBCASE("duplicates merge") {
        RealDecomposition dec;
        dec.terms.push_back({Q("2"), "x", "y"});
        dec.terms.push_back({Q("3"), "x", "y"});
        FreeVector u = rvec({{"x", "5"}, {"y", "-5"}});
        RealDecomposition red = reduce_real_decomposition(dec, s, u);
        REQUIRE(red.terms.size() == 1);
        CHECK(red.terms[0].coeff == 5);
    }
}

TEST_CASE("random real reductions end on the support") {
    std::mt19937_64 rng(53);
    for (int it = 0; it < 80; ++it) {
        MetricSpace s = random_metric(rng, 5);
        RealDecomposition dec;
        int terms = std::uniform_int_distribution<int>(1, 5)(rng);
        for (int t = 0; t < terms; ++t) {
            std::size_t i = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
            std::size_t j = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
            int c = std::uniform_int_distribution<int>(-4, 4)(rng);
            if (i != j && c != 0) dec.terms.push_back({Rational(c), s.points[i], s.points[j]});
        }
        std::vector<std::pair<std::string, Scalar>> raw;
        for (const auto& t : dec.terms) {
            raw.emplace_back(t.x, Scalar{t.coeff});
            raw.emplace_back(t.y, Scalar{-t.coeff});
        }
        FreeVector u = normalize(FieldSpec::real(), raw);
        RealDecomposition red = reduce_real_decomposition(dec, s, u);
        CHECK(real_decomposition_cost(s, red) <= real_decomposition_cost(s, dec));
        std::vector<std::string> supp;
        for (const auto& [pt, c] : u.terms) supp.push_back(pt);
        for (const auto& t : red.terms) {
            CHECK(std::find(supp.begin(), supp.end(), t.x) != supp.end());
            CHECK(std::find(supp.begin(), supp.end(), t.y) != supp.end());
        }
    }
}

TEST_CASE("weiszfeld examples") {
    SUBCASE("single point") {
        auto [pt, v] = weiszfeld({{2.0, 3.0}}, 1e-12);
        CHECK(std::abs(pt.real() - 2.0) < 1e-9);
        CHECK(v == 0.0);
    }
    SUBCASE("unit equilateral triangle gives sqrt(3)") {
        const double s3 = std::sqrt(3.0) / 2.0;
        // 0, mu, -nu: vertices of a unit-side equilateral triangle
        auto [pt, v] = weiszfeld({{0.0, 0.0}, {-0.5, s3}, {0.5, s3}}, 1e-12);
        CHECK(std::abs(v - std::sqrt(3.0)) < 1e-8);
        (void)pt;
    }
    SUBCASE("fermat point of 0, 1, i") {
        auto [pt, v] = weiszfeld({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, 1e-12);
        // symmetric across the diagonal; all vertex angles 120 degrees
        CHECK(std::abs(pt.real() - pt.imag()) < 1e-8);
        double expect = 1.0 / std::sqrt(2.0) + std::sqrt(6.0) / 2.0;  // known closed form
        CHECK(std::abs(v - expect) < 1e-7);
    }
    SUBCASE("vertex optimum does not stall") {
        // heavy weight pins the optimum at the first point
        auto [pt, v] = weiszfeld({{0.0, 0.0}, {1.0, 0.0}}, {10.0, 1.0}, 1e-12);
        CHECK(std::abs(pt.real()) < 1e-9);
        CHECK(std::abs(v - 1.0) < 1e-9);
    }
}

TEST_CASE("support restricted complex infimum") {
    const double s3 = std::sqrt(3.0) / 2.0;
    MetricSpace tri = mspace({"p", "q", "r"}, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}});
    SUBCASE("appendix value sqrt(3)") {
        std::vector<ComplexTerm> u = {{{1.0, 0.0}, "p"}, {{-0.5, s3}, "q"}, {{-0.5, -s3}, "r"}};
        CHECK(std::abs(support_restricted_complex_inf(u, tri, 1e-10) - std::sqrt(3.0)) < 1e-6);
    }
    SUBCASE("difference recovers distance") {
        MetricSpace two = mspace({"x", "y"}, {{"0", "3/2"}, {"3/2", "0"}});
        std::vector<ComplexTerm> u = {{{1.0, 0.0}, "x"}, {{-1.0, 0.0}, "y"}};
        CHECK(std::abs(support_restricted_complex_inf(u, two, 1e-10) - 1.5) < 1e-8);
    }
    SUBCASE("collinear points") {
        // coefficients 1, 0 (absent), -1 on 0,1,2-spaced line: geodesic cost 2
        MetricSpace line =
            mspace({"a", "b", "c"}, {{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}});
        std::vector<ComplexTerm> u = {{{1.0, 0.0}, "a"}, {{-1.0, 0.0}, "c"}};
        CHECK(std::abs(support_restricted_complex_inf(u, line, 1e-10) - 2.0) < 1e-7);
    }
}

TEST_CASE("complex_norm_small") {
    SUBCASE("appendix instance gives 3/2 and the strict gap") {
        MetricSpace s = mspace({"e", "p", "q", "r"},
                               {{"0", "1/2", "1/2", "1/2"},
                                {"1/2", "0", "1", "1"},
                                {"1/2", "1", "0", "1"},
                                {"1/2", "1", "1", "0"}});
        const double s3 = std::sqrt(3.0) / 2.0;
        std::vector<ComplexTerm> u = {{{1.0, 0.0}, "p"}, {{-0.5, s3}, "q"}, {{-0.5, -s3}, "r"}};
        ComplexPlanResult full = complex_norm_small(u, s, 1e-10);
        CHECK(std::abs(full.value - 1.5) < 1e-6);
        MetricSpace tri =
            mspace({"p", "q", "r"}, {{"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "0"}});
        double restricted = support_restricted_complex_inf(u, tri, 1e-10);
        CHECK(full.value < restricted - 0.2);  // 3/2 < sqrt(3), strict
    }
    SUBCASE("difference recovers distance") {
        MetricSpace two = mspace({"x", "y"}, {{"0", "5/2"}, {"5/2", "0"}});
        std::vector<ComplexTerm> u = {{{1.0, 0.0}, "x"}, {{-1.0, 0.0}, "y"}};
        CHECK(std::abs(complex_norm_small(u, two, 1e-10).value - 2.5) < 1e-7);
    }
    SUBCASE("real coefficients match the exact solver") {
        std::mt19937_64 rng(54);
        for (int it = 0; it < 12; ++it) {
            MetricSpace s = random_metric(rng, 4);
            FreeVector u = random_balanced(rng, s, 3);
            if (u.is_zero()) continue;
            std::vector<ComplexTerm> cu;
            for (const auto& [pt, c] : u.terms)
                cu.push_back({{rational_to_double(std::get<Rational>(c.v)), 0.0}, pt});
            Rational exact = kantorovich_real(s, u).first;
            double approx = complex_norm_small(cu, s, 1e-10).value;
            CHECK(std::abs(approx - rational_to_double(exact)) < 1e-5);
        }
    }
}

TEST_CASE("decreasing rational costs approach the fermat value") {
    // Qualitative non-attainment: rational plan costs strictly decrease toward
    // the irrational optimum without reaching it.
    auto [pt, fermat] = weiszfeld({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, 1e-13);
    auto cost_at = [](std::complex<double> t) {
        return std::abs(t) + std::abs(t - std::complex<double>(1.0, 0.0)) +
               std::abs(t - std::complex<double>(0.0, 1.0));
    };
    double prev = cost_at({0.0, 0.0});
    for (int k = 1; k <= 6; ++k) {
        // rational approximations of the fermat point with growing denominators
        double den = std::pow(10.0, k);
        std::complex<double> approx(std::round(pt.real() * den) / den,
                                    std::round(pt.imag() * den) / den);
        double c = cost_at(approx);
        CHECK(c >= fermat);
        CHECK(c <= prev + 1e-12);
        prev = c;
    }
    CHECK(prev - fermat < 1e-5);
}
