#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "spreadlab/bounds.hpp"
#include "spreadlab/constructions.hpp"
#include "spreadlab/json_io.hpp"
#include "spreadlab/rng.hpp"
#include "spreadlab/search.hpp"

using namespace spreadlab;
using Catch::Approx;
using C = std::complex<double>;

namespace {

DenseMatrix witness3() {
    return DenseMatrix{{0.0, 0.5, 0.0}, {0.0, 0.75, 0.25}, {0.5, 0.0, 0.75}};
}

} // namespace

TEST_CASE("zero-diagonal bound values") {
    CHECK(bound_zero_diagonal(4, 1) == 0.25);
    CHECK(bound_zero_diagonal(5, 5) == 1.0);
    CHECK(bound_zero_diagonal(10, 3) == 0.3);
    CHECK(bound_zero_diagonal(3, 0) == 0.0);
    CHECK_THROWS_AS(bound_zero_diagonal(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(bound_zero_diagonal(3, -1), std::invalid_argument);
}

TEST_CASE("piecewise spread bound values") {
    CHECK(spread_lower_bound(2).value == 1.0);
    CHECK(spread_lower_bound(3).value == 0.75);
    CHECK(spread_lower_bound(4).value == Approx(1.0 / 3.0).margin(1e-15));
    CHECK(spread_lower_bound(5).value == Approx(5.0 / (8.0 + std::sqrt(74.0))).margin(1e-15));
    CHECK(spread_lower_bound(6).value == Approx(2.0 / (4.0 + std::sqrt(18.0))).margin(1e-15));
    CHECK_FALSE(spread_lower_bound(5).strict);
    CHECK(spread_lower_bound(6).strict);
    CHECK(spread_lower_bound(1000).strict);
    CHECK_THROWS_AS(spread_lower_bound(1), std::invalid_argument);

    // The n=5 value is the positive root of its own quadratic.
    CHECK(eq2_residual(5, spread_lower_bound(5).value) == Approx(0.0).margin(1e-12));
}

TEST_CASE("two-eigenvalue bound values and ordering") {
    CHECK(two_eigenvalue_bound(2) == 1.0);
    CHECK(two_eigenvalue_bound(5) == 0.625);
    CHECK_THROWS_AS(two_eigenvalue_bound(1), std::invalid_argument);

    // The specialized bound dominates the general one for all n >= 4, both
    // are monotone, and the specialized one approaches 1/2 from above.
    double prev_general = spread_lower_bound(4).value;
    double prev_special = two_eigenvalue_bound(4);
    for (int n = 5; n <= 1000000; ++n) {
        const double general = spread_lower_bound(n).value;
        const double special = two_eigenvalue_bound(n);
        REQUIRE(general < special);
        REQUIRE(general <= prev_general);
        REQUIRE(special < prev_special);
        REQUIRE(special > 0.5);
        prev_general = general;
        prev_special = special;
    }
}

TEST_CASE("quadratic residual values") {
    CHECK(eq2_residual(4, 1.0 / 3.0) == Approx(0.0).margin(1e-12));
    CHECK(eq2_residual(5, (-8.0 + std::sqrt(74.0)) / 2.0) == Approx(0.0).margin(1e-12));
    CHECK(eq2_residual(6, 1.0) > 0.0);
    CHECK_THROWS_AS(eq2_residual(3, 0.5), std::invalid_argument);
}

TEST_CASE("pairwise square identity vanishes") {
    // Hand expansion for {1, 1/4, 1/4}: both sides equal 9/8.
    CHECK(pairwise_identity_check(std::vector<C>{C(1, 0), C(0.25, 0), C(0.25, 0)}) <= 1e-12);
    // Dyadic constant spectra evaluate exactly.
    CHECK(pairwise_identity_check(std::vector<C>(7, C(0.25, -0.5))) == 0.0);

    Rng rng(111);
    for (int rep = 0; rep < 500; ++rep) {
        std::vector<C> eig(6);
        for (auto& v : eig) v = C(2 * rng.next_double() - 1, 2 * rng.next_double() - 1);
        CHECK(pairwise_identity_check(eig) <= 1e-10);
    }
}

TEST_CASE("trace-power certificates on fixed matrices") {
    // All-ones: k = 0, so the modified form reduces to the classical one.
    const NonnegativeMatrix ones{DenseMatrix{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
    const auto checks = jll_certificate(ones, 3);
    for (const auto& c : checks) {
        CHECK(c.satisfied);
        CHECK_FALSE(c.skipped);
    }
    const auto& m3 = checks[1];
    REQUIRE(m3.kind == JllCheck::Kind::modified);
    REQUIRE(m3.m == 3);
    CHECK(m3.lhs == Approx(27.0));
    CHECK(m3.rhs == Approx(9.0 * 27.0));

    // Witness, m=2: equality 9/4 = 2 * 9/8, exact in doubles.
    CHECK(trace_power(witness3(), 2) == 1.125);
    const auto wchecks = jll_certificate(NonnegativeMatrix{witness3()}, 2);
    REQUIRE_FALSE(wchecks.empty());
    CHECK(wchecks[0].lhs == 2.25);
    CHECK(wchecks[0].rhs == 2.25);
    CHECK(wchecks[0].satisfied);

    // diag(0,1), m=2: 1 <= 1 with equality.
    const auto dchecks =
        jll_certificate(NonnegativeMatrix{DenseMatrix{{0, 0}, {0, 1}}}, 2);
    CHECK(dchecks[0].lhs == 1.0);
    CHECK(dchecks[0].rhs == 1.0);
    CHECK(dchecks[0].satisfied);

    CHECK_THROWS_AS(jll_certificate(ones, 1), std::invalid_argument);
}

TEST_CASE("classical cross-checks are generated for composite indices") {
    const NonnegativeMatrix ones{DenseMatrix{{1, 1}, {1, 1}}};
    const auto checks = jll_certificate(ones, 5);
    int modified = 0, classical = 0;
    bool saw_k2_m2 = false;
    for (const auto& c : checks) {
        if (c.kind == JllCheck::Kind::modified) ++modified;
        else ++classical;
        if (c.kind == JllCheck::Kind::classical && c.k == 2 && c.m == 2) saw_k2_m2 = true;
        CHECK(c.satisfied);
    }
    CHECK(modified == 4);  // m = 2..5
    CHECK(classical == 5); // (1,2) (1,3) (1,4) (1,5) (2,2)
    CHECK(saw_k2_m2);
}

TEST_CASE("exact trace-power certificates are bit-exact") {
    // build_A(3): s1 = 6, s2 = 18, and 6^2 = 2*18 exactly.
    const auto checks = jll_certificate_exact(build_A(3), 4);
    REQUIRE(checks.size() == 3);
    CHECK(checks[0].lhs == 36);
    CHECK(checks[0].rhs == 36);
    for (const auto& c : checks) CHECK(c.satisfied);

    for (int n = 2; n <= 8; ++n)
        for (const auto& c : jll_certificate_exact(build_A(n), 6)) CHECK(c.satisfied);

    ExactMatrix negative(2);
    negative(0, 0) = -1;
    CHECK_THROWS_AS(jll_certificate_exact(negative, 3), std::invalid_argument);
}

TEST_CASE("bound report for diag(0,1)") {
    const BoundReport r = verify_bounds(NonnegativeMatrix{DenseMatrix{{0, 0}, {0, 1}}});
    CHECK(r.n == 2);
    CHECK(r.k == 1);
    CHECK(r.spread_value == Approx(1.0).margin(1e-12));
    CHECK(r.perron == Approx(1.0).margin(1e-9));
    CHECK(r.bounds.at("zero_diagonal") == 0.5);
    CHECK(r.bounds.at("theorem_piecewise") == 1.0);
    // diag(0,1) genuinely has two distinct eigenvalues.
    CHECK(r.d_n_detected);
    CHECK(r.bounds.at("two_eigenvalue") == 1.0);
    CHECK(r.violations.empty());
    CHECK(r.jll_all_satisfied());
    CHECK_FALSE(r.normalized);
}

TEST_CASE("bound report for the 3x3 witness") {
    const BoundReport r = verify_bounds(NonnegativeMatrix{witness3()});
    CHECK(r.spread_value == Approx(0.75).margin(1e-9));
    CHECK(r.bounds.at("theorem_piecewise") == 0.75);
    CHECK(r.violations.empty());
    CHECK(r.jll_all_satisfied());
}

TEST_CASE("bound report for the n=5 sharpness witness") {
    const BoundReport r = verify_bounds(extremal_matrix(5));
    CHECK(r.n == 5);
    CHECK(r.k == 1);
    // The repeated eigenvalue sits in a size-4 Jordan block; the QR solve
    // can only place it to ~1e-5, which inflates the spread upward but
    // never below the sharp value.
    CHECK(r.spread_value >= 0.625 - 1e-9);
    CHECK(r.spread_value == Approx(0.625).margin(1e-3));
    CHECK(r.bounds.at("theorem_piecewise") == Approx(spread_lower_bound(5).value));
    CHECK(r.violations.empty());
    CHECK(r.jll_all_satisfied());
}

TEST_CASE("bound report normalizes non-unit input") {
    const BoundReport r = verify_bounds(NonnegativeMatrix{DenseMatrix{{0, 0}, {0, 2}}});
    CHECK(r.normalized);
    CHECK(r.perron == Approx(1.0).margin(1e-9));
    CHECK(r.spread_value == Approx(1.0).margin(1e-9));
    CHECK(r.violations.empty());
}

TEST_CASE("a corrupted tolerance surfaces violations rather than clamping") {
    BoundOptions opts;
    opts.report_tol = -0.5;  // demands spread exceed every bound by half
    const BoundReport r =
        verify_bounds(NonnegativeMatrix{DenseMatrix{{0, 0}, {0, 1}}}, opts);
    CHECK_FALSE(r.violations.empty());
}

TEST_CASE("sampled members of C_n never violate any bound") {
    Rng rng(222);
    for (int n = 4; n <= 10; ++n) {
        for (int rep = 0; rep < 120; ++rep) {
            const NonnegativeMatrix a = sample_cn(n, rng, 0.5 + 0.5 * rng.next_double());
            const BoundReport r = verify_bounds(a);
            CHECK(r.violations.empty());
            CHECK(r.jll_all_satisfied());
            if (r.spread_value < 1.0)
                CHECK(eq2_residual(n, r.spread_value) >= -1e-9);
            CHECK(pairwise_identity_check(eigenvalues(a)) <= 1e-10);
        }
    }
}

TEST_CASE("overflowing trace powers are skipped, not failed") {
    DenseMatrix huge(2);
    huge(0, 1) = 1e200;
    huge(1, 0) = 1e200;
    const auto checks = jll_certificate(NonnegativeMatrix{huge}, 4);
    bool saw_skip = false;
    for (const auto& c : checks) {
        if (c.skipped) saw_skip = true;
        if (!c.skipped) CHECK(c.satisfied);
    }
    CHECK(saw_skip);
}

TEST_CASE("bound report serializes with the stable schema") {
    const BoundReport r = verify_bounds(NonnegativeMatrix{witness3()});
    const OrderedJson j = to_json(r);
    CHECK(j.at("format_version") == 1);
    CHECK(j.at("n") == 3);
    CHECK(j.at("k") == 1);
    CHECK(j.at("spread").is_number());
    CHECK(j.at("perron").is_number());
    CHECK(j.at("bounds").is_object());
    CHECK(j.at("bounds").contains("zero_diagonal"));
    CHECK(j.at("jll").is_array());
    REQUIRE_FALSE(j.at("jll").empty());
    CHECK(j.at("jll")[0].contains("satisfied"));
    CHECK(j.at("violations").is_array());
    CHECK(j.at("violations").empty());
}
