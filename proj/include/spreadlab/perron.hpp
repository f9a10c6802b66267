#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "spreadlab/defaults.hpp"
#include "spreadlab/digraph.hpp"
#include "spreadlab/eigensolver.hpp"
#include "spreadlab/matrix.hpp"

namespace spreadlab {

struct PerronResult {
    double value = 0.0;
    int iterations = 0;
    /// True when the Collatz-Wielandt bracket closed below tolerance; false
    /// means the value came from the eigensolver fallback.
    bool bracket_converged = false;
    double bracket_width = 0.0;
};

/// Spectral radius of a nonnegative matrix by power iteration on A + I.
/// The unit shift makes irreducible matrices primitive, so the iteration
/// converges, and keeps every iterate strictly positive. The Collatz-
/// Wielandt quotients min_i (Bx)_i/x_i <= r(B) <= max_i (Bx)_i/x_i serve
/// as the convergence certificate; when the bracket fails to close (e.g.
/// for reducible matrices it may stall) the result falls back to the max
/// eigenvalue modulus from the QR solver, flagged in the result.
inline PerronResult perron_root(const NonnegativeMatrix& a,
                                double radius_tol = defaults::radius_tol,
                                int max_iter = defaults::power_max_iter) {
    const std::size_t n = a.dim();
    const DenseMatrix& m = a.matrix();
    PerronResult result;

    if (n == 1) {
        result.value = m(0, 0);
        result.bracket_converged = true;
        return result;
    }

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n);
    for (int it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = x[i];  // the +I shift
            for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * x[j];
            y[i] = acc;
        }
        double lo = y[0] / x[0], hi = lo;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double q = y[i] / x[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            sum += y[i];
        }
        result.iterations = it;
        result.bracket_width = hi - lo;
        // The reported value is the bracket midpoint. The criterion is
        // absolute in r and also relative for small r, so that dividing a
        // matrix by the result leaves its radius within radius_tol of 1.
        const double scale = std::min(1.0, std::max(hi - 1.0, 1e-6));
        if (hi - lo <= radius_tol * scale) {
            result.value = 0.5 * (hi + lo) - 1.0;
            if (result.value < 0.0) result.value = 0.0;
            result.bracket_converged = true;
            return result;
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / sum;
    }

    // Fallback: max eigenvalue modulus.
    const Spectrum s = eigenvalues(m, EigenOptions{.compute_residuals = false});
    double r = 0.0;
    for (const auto& lambda : s.eigenvalues) r = std::max(r, std::abs(lambda));
    result.value = r;
    result.bracket_converged = false;
    return result;
}

/// A / r(A), with the in_C_n flag set when entry (1,1) is exactly zero.
/// A matrix already within radius_tol of unit radius is returned unchanged,
/// which makes normalization a projection. Nilpotency is decided exactly
/// from the zero pattern (acyclic digraph <=> r = 0), never by comparing a
/// computed radius against a threshold.
inline NonnegativeMatrix normalize_to_unit_radius(const NonnegativeMatrix& a,
                                                  double radius_tol = defaults::radius_tol) {
    if (!pattern_has_cycle(a)) throw NumericError("nilpotent matrix cannot be normalized");
    const PerronResult perron = perron_root(a, radius_tol);
    if (perron.value <= 0.0) throw NumericError("nilpotent matrix cannot be normalized");

    const bool corner_zero = a(0, 0) == 0.0;
    if (std::abs(perron.value - 1.0) <= radius_tol)
        return NonnegativeMatrix(a.matrix(), corner_zero);

    DenseMatrix scaled = a.matrix();
    for (std::size_t i = 0; i < scaled.dim(); ++i)
        for (std::size_t j = 0; j < scaled.dim(); ++j) scaled(i, j) /= perron.value;
    if (!all_finite(scaled)) throw NumericError("numeric overflow");
    return NonnegativeMatrix(std::move(scaled), corner_zero);
}

} // namespace spreadlab
