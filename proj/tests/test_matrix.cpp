#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include "spreadlab/exact.hpp"
#include "spreadlab/matrix.hpp"
#include "spreadlab/rng.hpp"

using namespace spreadlab;

namespace {

DenseMatrix witness3() {
    return DenseMatrix{{0.0, 0.5, 0.0}, {0.0, 0.75, 0.25}, {0.5, 0.0, 0.75}};
}

DenseMatrix random_dense(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = lo + (hi - lo) * rng.next_double();
    return m;
}

} // namespace

TEST_CASE("zero_diagonal_count counts exact zeros") {
    CHECK(zero_diagonal_count(NonnegativeMatrix{DenseMatrix{{0.0, 0.0}, {0.0, 1.0}}}) == 1);
    CHECK(zero_diagonal_count(NonnegativeMatrix{witness3()}) == 1);
    for (std::size_t n : {1u, 3u, 7u})
        CHECK(zero_diagonal_count(NonnegativeMatrix{DenseMatrix(n)}) == static_cast<int>(n));

    // A tiny-but-nonzero diagonal entry is not a zero.
    DenseMatrix m(2);
    m(0, 0) = 1e-300;
    m(1, 1) = 1.0;
    CHECK(zero_diagonal_count(NonnegativeMatrix{m}) == 0);
}

TEST_CASE("zero_diagonal_count never exceeds n") {
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t n = 1 + rng.next_index(8);
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng.next_double() < 0.5) m(i, j) = rng.next_positive();
        const NonnegativeMatrix a{m};
        const int k = zero_diagonal_count(a);
        CHECK(k >= 0);
        CHECK(k <= static_cast<int>(n));
    }
}

TEST_CASE("trace_power known values") {
    CHECK(trace_power(witness3(), 1) == 1.5);
    for (int m = 1; m <= 4; ++m)
        CHECK(trace_power(DenseMatrix::identity(5), m) == 5.0);
    // [[0,4],[1,0]] squares to 4I.
    CHECK(trace_power(DenseMatrix{{0.0, 4.0}, {1.0, 0.0}}, 2) == 8.0);
}

TEST_CASE("trace_power with m=1 is exactly the diagonal sum") {
    Rng rng(22);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + rng.next_index(9);
        const DenseMatrix m = random_dense(rng, n);
        double diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) diag += m(i, i);
        CHECK(trace_power(m, 1) == diag);
    }
}

TEST_CASE("trace_power rejects bad exponents and overflow") {
    CHECK_THROWS_AS(trace_power(DenseMatrix(2), 0), std::invalid_argument);
    DenseMatrix huge(2);
    huge(0, 0) = huge(1, 1) = 1e300;
    CHECK_THROWS_AS(trace_power(huge, 3), NumericError);
}

TEST_CASE("exact arithmetic basics") {
    const ExactMatrix x{{BigInt(1), BigInt(2)}, {BigInt(3), BigInt(4)}};
    CHECK(x * ExactMatrix::identity(2) == x);
    CHECK((x - x).is_zero());

    ExactMatrix n3(3);
    n3(1, 0) = 1;
    n3(2, 1) = 1;
    const ExactMatrix sq = n3 * n3;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(sq(i, j) == ((i == 2 && j == 0) ? 1 : 0));

    CHECK_THROWS_AS(x * ExactMatrix(3), MatrixError);
    CHECK_THROWS_AS(x - ExactMatrix(3), MatrixError);
}

TEST_CASE("exact arithmetic stays exact far beyond 64 bits") {
    ExactMatrix big(2);
    big(0, 0) = BigInt("340282366920938463463374607431768211456");  // 2^128
    big(1, 1) = 1;
    const ExactMatrix sq = big * big;
    CHECK(sq(0, 0) == BigInt(1) << 256);
}

TEST_CASE("nonnegative wrapper validates entries") {
    CHECK_THROWS_AS((NonnegativeMatrix{DenseMatrix{{0.0, -1.0}, {0.0, 0.0}}}), MatrixError);
    DenseMatrix nan_m(2);
    nan_m(0, 1) = std::nan("");
    CHECK_THROWS_AS(NonnegativeMatrix{nan_m}, MatrixError);
    // The in_C_n flag insists on an exactly zero corner.
    CHECK_THROWS_AS(NonnegativeMatrix(DenseMatrix::identity(2), true), MatrixError);
}

TEST_CASE("matrix text round-trips losslessly") {
    Rng rng(33);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 1 + rng.next_index(6);
        const DenseMatrix m = random_dense(rng, n, 0.0, 10.0);
        const DenseMatrix back = parse_matrix_text<double>(to_text(m));
        CHECK(back == m);
    }

    ExactMatrix e(2);
    e(0, 0) = BigInt("-123456789012345678901234567890");
    e(1, 0) = 7;
    CHECK(parse_matrix_text<BigInt>(to_text(e)) == e);
}

TEST_CASE("integer matrices print without decimal points") {
    ExactMatrix e(2);
    e(0, 1) = 4;
    e(1, 0) = 1;
    CHECK(to_text(e) == "2\n0 4\n1 0\n");
}

TEST_CASE("matrix text parser rejects malformed input") {
    CHECK_THROWS_AS(parse_matrix_text<double>(""), MatrixError);
    CHECK_THROWS_AS(parse_matrix_text<double>("2\n1 2 3"), MatrixError);
    CHECK_THROWS_AS(parse_matrix_text<double>("2\n1 2\n3 x"), MatrixError);
    CHECK_THROWS_AS(parse_matrix_text<double>("-3\n"), MatrixError);
    CHECK_THROWS_AS(parse_matrix_text<BigInt>("1\n2.5"), MatrixError);
    // Whitespace layout is free-form.
    const DenseMatrix m = parse_matrix_text<double>("2 1 2\n\t3   4.5");
    CHECK(m(1, 1) == 4.5);
}
