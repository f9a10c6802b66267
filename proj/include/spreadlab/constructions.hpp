#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "spreadlab/exact.hpp"

namespace spreadlab {

namespace detail {

inline void require_family_dim(int n) {
    if (n < 2) throw std::invalid_argument("extremal family requires n >= 2");
}

} // namespace detail

/// Nilpotent with ones on the subdiagonal: N e_k = e_{k+1}. Degenerates to
/// the 1x1 zero matrix at n = 1.
inline ExactMatrix build_N(int n) {
    if (n < 1) throw std::invalid_argument("nilpotent builders require n >= 1");
    ExactMatrix m(static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1;
    return m;
}

/// Nilpotent with superdiagonal n-1, n-2, ..., 1.
inline ExactMatrix build_M(int n) {
    if (n < 1) throw std::invalid_argument("nilpotent builders require n >= 1");
    ExactMatrix m(static_cast<std::size_t>(n));
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = n - 1 - i;
    return m;
}

/// The sharpness witness: superdiagonal n-i, diagonal n except the zero
/// corner, and 2 wherever the row index exceeds the column index by an even
/// positive gap. The three placement rules target disjoint positions; a
/// collision means the rules were transcribed wrong, so it is a hard error.
inline ExactMatrix build_A(int n) {
    detail::require_family_dim(n);
    const auto un = static_cast<std::size_t>(n);
    ExactMatrix m(un);
    std::vector<bool> claimed(un * un, false);
    auto place = [&](std::size_t i, std::size_t j, BigInt v) {
        if (claimed[i * un + j])
            throw std::logic_error("witness placement rules collided");
        claimed[i * un + j] = true;
        m(i, j) = std::move(v);
    };
    for (int i = 1; i <= n - 1; ++i) place(i - 1, i, n - i);
    for (int i = 2; i <= n; ++i) place(i - 1, i - 1, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i - j > 0 && (i - j) % 2 == 0) place(i - 1, j - 1, 2);
    return m;
}

/// Upper bidiagonal partner of build_A: same superdiagonal, diagonal
/// (2(n-1), n-2, ..., n-2).
inline ExactMatrix build_U(int n) {
    detail::require_family_dim(n);
    ExactMatrix m(static_cast<std::size_t>(n));
    m(0, 0) = 2 * (n - 1);
    for (int i = 1; i < n; ++i) m(i, i) = n - 2;
    for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = n - 1 - i;
    return m;
}

/// S = (I+N)(I-N)^{-1}, built as the truncated series
/// I + 2N + 2N^2 + ... + 2N^{n-1} so no inversion is performed; the
/// defining identity (I-N)S = I+N is then checked exactly.
inline ExactMatrix build_S(int n) {
    detail::require_family_dim(n);
    const auto un = static_cast<std::size_t>(n);
    ExactMatrix s = ExactMatrix::identity(un);
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < i; ++j) s(i, j) = 2;

    const ExactMatrix eye = ExactMatrix::identity(un);
    const ExactMatrix nil = build_N(n);
    if ((eye - nil) * s != eye + nil)
        throw std::logic_error("series for S does not satisfy (I-N)S = I+N");
    return s;
}

/// Exact check of [N^k, M] = k N^{k-1} - n e_k e_1^T for 1 <= k <= n.
/// At k = n the power N^n vanishes and the identity still closes; the
/// degenerate n = 1 case holds with both sides zero.
inline bool commutator_identity_check(int n, int k) {
    if (n < 1) throw std::invalid_argument("commutator check requires n >= 1");
    if (k < 1 || k > n) throw std::invalid_argument("commutator check requires 1 <= k <= n");
    const auto un = static_cast<std::size_t>(n);
    const ExactMatrix nil = build_N(n);
    const ExactMatrix sup = build_M(n);

    ExactMatrix nil_k = ExactMatrix::identity(un);
    ExactMatrix nil_km1 = nil_k;
    for (int p = 0; p < k; ++p) {
        nil_km1 = nil_k;
        nil_k = nil_k * nil;
    }

    ExactMatrix expected = BigInt(k) * nil_km1;
    expected(static_cast<std::size_t>(k - 1), 0) -= n;
    return nil_k * sup - sup * nil_k == expected;
}

/// Exact witness that A and U are similar: S U - A S must be the zero
/// matrix in integer arithmetic.
inline bool verify_similarity(int n) {
    detail::require_family_dim(n);
    const ExactMatrix a = build_A(n);
    const ExactMatrix u = build_U(n);
    const ExactMatrix s = build_S(n);
    return (s * u - a * s).is_zero();
}

struct SimilarityCertificate {
    int n = 0;
    bool similarity_exact = false;
    bool commutators_exact = false;
    bool series_identity_exact = false;

    bool all() const { return similarity_exact && commutators_exact && series_identity_exact; }
};

inline SimilarityCertificate certify_family(int n) {
    detail::require_family_dim(n);
    SimilarityCertificate cert;
    cert.n = n;
    cert.similarity_exact = verify_similarity(n);
    cert.commutators_exact = true;
    for (int k = 1; k <= n; ++k)
        if (!commutator_identity_check(n, k)) cert.commutators_exact = false;
    try {
        cert.series_identity_exact = true;
        build_S(n);
    } catch (const std::logic_error&) {
        cert.series_identity_exact = false;
    }
    return cert;
}

/// A / (2(n-1)): unit spectral radius, zero corner entry, and exactly two
/// distinct eigenvalues. Its spectrum {1} u {(n-2)/(2(n-1))} follows from
/// the similarity to the triangular U, not from a numeric eigensolve.
inline NonnegativeMatrix extremal_matrix(int n) {
    detail::require_family_dim(n);
    DenseMatrix d = to_dense(build_A(n));
    const double scale = 2.0 * (n - 1);
    for (std::size_t i = 0; i < d.dim(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j) d(i, j) /= scale;
    return NonnegativeMatrix(std::move(d), /*in_c_n=*/true);
}

/// Spectrum of extremal_matrix(n), read off the diagonal of U and scaled.
/// The readout is certified: U must be exactly upper triangular, and the
/// similarity S U = A S is re-verified in integer arithmetic.
inline std::vector<std::complex<double>> extremal_eigenvalues(int n) {
    detail::require_family_dim(n);
    if (!verify_similarity(n))
        throw std::logic_error("similarity certificate failed; spectrum readout is not valid");
    const ExactMatrix u = build_U(n);
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (u(i, j) != 0)
                throw std::logic_error("U is not upper triangular; spectrum readout is not valid");
    std::vector<std::complex<double>> eig;
    eig.reserve(u.dim());
    const double scale = 2.0 * (n - 1);
    for (std::size_t i = 0; i < u.dim(); ++i)
        eig.emplace_back(u(i, i).convert_to<double>() / scale, 0.0);
    return eig;
}

} // namespace spreadlab
