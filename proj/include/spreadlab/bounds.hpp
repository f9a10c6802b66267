#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spreadlab/defaults.hpp"
#include "spreadlab/eigensolver.hpp"
#include "spreadlab/exact.hpp"
#include "spreadlab/matrix.hpp"
#include "spreadlab/perron.hpp"
#include "spreadlab/spectrum.hpp"

namespace spreadlab {

/// s(A) >= k/n for a unit-radius nonnegative matrix with k zero diagonal
/// entries.
inline double bound_zero_diagonal(int n, int k) {
    if (n < 1) throw std::invalid_argument("bound_zero_diagonal requires n >= 1");
    if (k < 0 || k > n) throw std::invalid_argument("bound_zero_diagonal requires 0 <= k <= n");
    return static_cast<double>(k) / static_cast<double>(n);
}

struct PiecewiseBound {
    double value = 0.0;
    /// The n >= 6 branch is a strict inequality; strictness is not
    /// numerically certifiable, so checks use the non-strict form.
    bool strict = false;
};

/// Piecewise lower bound on the spread of a unit-radius nonnegative matrix
/// with a zero diagonal entry:
///   n=2 -> 1, n=3 -> 3/4, n=4 -> 1/3, n=5 -> 5/(8+sqrt(74)),
///   n>=6 -> 2/(4+sqrt(2(n+3))) (strict).
inline PiecewiseBound spread_lower_bound(int n) {
    if (n < 2) throw std::invalid_argument("spread_lower_bound requires n >= 2");
    switch (n) {
        case 2: return {1.0, false};
        case 3: return {0.75, false};
        case 4: return {1.0 / 3.0, false};
        case 5: {
            // Evaluated once in extended precision; the equivalent form
            // (-8+sqrt(74))/2 loses digits to cancellation.
            static const double v =
                static_cast<double>(5.0L / (8.0L + std::sqrt(74.0L)));
            return {v, false};
        }
        default:
            return {static_cast<double>(
                        2.0L / (4.0L + std::sqrt(2.0L * (static_cast<long double>(n) + 3.0L)))),
                    true};
    }
}

/// s(A) >= n/(2(n-1)) for matrices with exactly two distinct eigenvalues.
inline double two_eigenvalue_bound(int n) {
    if (n < 2) throw std::invalid_argument("two_eigenvalue_bound requires n >= 2");
    return static_cast<double>(n) / (2.0 * (n - 1));
}

/// Left-hand side of (n-1)(n-4)s^2 + 8(n-1)s - 2n >= 0, the quadratic
/// every spread s in (0,1) of a unit-radius zero-corner matrix satisfies.
inline double eq2_residual(int n, double s) {
    if (n < 4) throw std::invalid_argument("eq2_residual requires n >= 4");
    const double nd = n;
    return (nd - 1.0) * (nd - 4.0) * s * s + 8.0 * (nd - 1.0) * s - 2.0 * nd;
}

/// | sum_{i<j} (l_i - l_j)^2  -  ( n sum l_i^2 - (sum l_i)^2 ) |.
/// The two sides agree identically for any multiset, so a nonvanishing
/// value flags a corrupted spectrum rather than a property of the matrix.
inline double pairwise_identity_check(std::span<const std::complex<double>> eig) {
    using C = std::complex<long double>;
    const std::size_t n = eig.size();
    C pairwise{};
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const C d = C(eig[i]) - C(eig[j]);
            pairwise += d * d;
        }
    C sum{}, sum_sq{};
    for (const auto& v : eig) {
        sum += C(v);
        sum_sq += C(v) * C(v);
    }
    const C rhs = static_cast<long double>(n) * sum_sq - sum * sum;
    return static_cast<double>(std::abs(pairwise - rhs));
}

inline double pairwise_identity_check(const Spectrum& s) {
    return pairwise_identity_check(std::span<const std::complex<double>>(s.eigenvalues));
}

struct JllCheck {
    enum class Kind { modified, classical };
    Kind kind = Kind::modified;
    /// Trace index: the check is s_k^m <= base^(m-1) s_{k m} with base
    /// n - zero_diagonal_count for the modified form (k = 1) and base n
    /// for the classical form.
    int k = 1;
    int m = 2;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    /// Set when the powers left the finite range; such a check is skipped,
    /// not failed.
    bool skipped = false;
};

/// Trace-power inequality certificates for a nonnegative matrix:
/// s_1^m <= (n-k)^(m-1) s_m for m = 2..m_max, where k counts the zero
/// diagonal entries, plus the classical s_j^m <= n^(m-1) s_{jm} for
/// j*m <= m_max as a cross-check.
inline std::vector<JllCheck> jll_certificate(const NonnegativeMatrix& a, int m_max,
                                             double jll_tol = defaults::jll_tol) {
    if (m_max < 2) throw std::invalid_argument("jll_certificate requires m_max >= 2");
    const int n = static_cast<int>(a.dim());
    const int k0 = zero_diagonal_count(a);

    std::vector<double> s;
    try {
        s = trace_sequence(a.matrix(), m_max);
    } catch (const NumericError&) {
        // Recompute term by term so only the overflowing checks are skipped.
        s.assign(static_cast<std::size_t>(m_max), std::numeric_limits<double>::quiet_NaN());
        for (int m = 1; m <= m_max; ++m) {
            try {
                s[static_cast<std::size_t>(m - 1)] = trace_power(a.matrix(), m);
            } catch (const NumericError&) {
            }
        }
    }

    auto evaluate = [&](JllCheck::Kind kind, int j, int m, double base) {
        JllCheck c;
        c.kind = kind;
        c.k = j;
        c.m = m;
        const double sj = s[static_cast<std::size_t>(j - 1)];
        const double sjm = s[static_cast<std::size_t>(j * m - 1)];
        c.lhs = std::pow(sj, m);
        c.rhs = std::pow(base, m - 1) * sjm;
        if (!std::isfinite(c.lhs) || !std::isfinite(c.rhs)) {
            c.skipped = true;
            return c;
        }
        const double slack = jll_tol * std::max({std::abs(c.lhs), std::abs(c.rhs), 1.0});
        c.satisfied = c.lhs <= c.rhs + slack;
        return c;
    };

    std::vector<JllCheck> checks;
    for (int m = 2; m <= m_max; ++m)
        checks.push_back(evaluate(JllCheck::Kind::modified, 1, m, n - k0));
    for (int j = 1; j <= m_max / 2; ++j)
        for (int m = 2; j * m <= m_max; ++m)
            checks.push_back(evaluate(JllCheck::Kind::classical, j, m, n));
    return checks;
}

struct ExactJllCheck {
    int m = 2;
    BigInt lhs;
    BigInt rhs;
    bool satisfied = false;
};

/// The modified trace-power inequality on an exact integer matrix, checked
/// in integer arithmetic so the certificate is bit-exact.
inline std::vector<ExactJllCheck> jll_certificate_exact(const ExactMatrix& a, int m_max) {
    if (m_max < 2) throw std::invalid_argument("jll_certificate_exact requires m_max >= 2");
    const int n = static_cast<int>(a.dim());
    for (const BigInt& e : a.entries())
        if (e < 0) throw std::invalid_argument("exact JLL certificate requires a nonnegative matrix");
    int k0 = 0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        if (a(i, i) == 0) ++k0;

    const std::vector<BigInt> s = trace_sequence(a, m_max);
    std::vector<ExactJllCheck> checks;
    for (int m = 2; m <= m_max; ++m) {
        ExactJllCheck c;
        c.m = m;
        c.lhs = boost::multiprecision::pow(s[0], static_cast<unsigned>(m));
        c.rhs = boost::multiprecision::pow(BigInt(n - k0), static_cast<unsigned>(m - 1)) *
                s[static_cast<std::size_t>(m - 1)];
        c.satisfied = c.lhs <= c.rhs;
        checks.push_back(std::move(c));
    }
    return checks;
}

struct BoundOptions {
    int m_max = defaults::jll_m_max;
    double report_tol = defaults::report_tol;
    double jll_tol = defaults::jll_tol;
    double cluster_tol = defaults::cluster_tol;
    double radius_tol = defaults::radius_tol;
};

/// Everything the library can say about one matrix: its spread, every
/// applicable lower bound, the trace-power certificates, and any bound the
/// spread fails to meet. A nonempty violation list is always surfaced --
/// it means a solver bug, a tolerance problem, or a falsified inequality,
/// and is never clamped away.
struct BoundReport {
    int n = 0;
    int k = 0;
    double spread_value = 0.0;
    double perron = 0.0;
    std::map<std::string, double> bounds;
    std::vector<JllCheck> jll;
    std::vector<std::string> violations;

    bool normalized = false;
    bool d_n_detected = false;
    int distinct_eigenvalues = 0;
    double cluster_tol = defaults::cluster_tol;
    double max_residual = 0.0;

    bool jll_all_satisfied() const {
        for (const auto& c : jll)
            if (!c.skipped && !c.satisfied) return false;
        return true;
    }
};

/// Evaluate every applicable bound against the computed spread. The input
/// is normalized to unit spectral radius first when it is not already
/// there. The piecewise and two-eigenvalue bounds require a zero diagonal
/// entry; the latter additionally requires the spectrum to cluster to
/// exactly two distinct values at cluster_tol, which is recorded in the
/// report so borderline calls are auditable.
inline BoundReport verify_bounds(const NonnegativeMatrix& input,
                                 const BoundOptions& opts = {}) {
    BoundReport report;
    report.cluster_tol = opts.cluster_tol;

    NonnegativeMatrix a = input;
    PerronResult perron = perron_root(a, opts.radius_tol);
    if (std::abs(perron.value - 1.0) > opts.radius_tol) {
        a = normalize_to_unit_radius(a, opts.radius_tol);
        report.normalized = true;
        perron = perron_root(a, opts.radius_tol);
    }
    report.perron = perron.value;

    const int n = static_cast<int>(a.dim());
    report.n = n;
    report.k = zero_diagonal_count(a);

    const Spectrum spec = eigenvalues(a.matrix());
    report.max_residual = spec.max_residual;
    report.spread_value = spread(spec);
    report.distinct_eigenvalues = distinct_eigenvalue_count(spec, opts.cluster_tol);
    report.d_n_detected = report.k >= 1 && report.distinct_eigenvalues == 2;

    report.bounds["zero_diagonal"] = bound_zero_diagonal(n, report.k);
    if (report.k >= 1 && n >= 2)
        report.bounds["theorem_piecewise"] = spread_lower_bound(n).value;
    if (report.d_n_detected && n >= 2)
        report.bounds["two_eigenvalue"] = two_eigenvalue_bound(n);

    for (const auto& [name, value] : report.bounds) {
        const double slack = opts.report_tol * std::max(1.0, value);
        if (report.spread_value < value - slack) report.violations.push_back(name);
    }

    report.jll = jll_certificate(a, opts.m_max, opts.jll_tol);
    return report;
}

} // namespace spreadlab
