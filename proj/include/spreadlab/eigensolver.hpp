#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "spreadlab/lu.hpp"
#include "spreadlab/matrix.hpp"
#include "spreadlab/rng.hpp"
#include "spreadlab/spectrum.hpp"

namespace spreadlab {

struct EigenOptions {
    bool balance = true;
    /// QR sweeps allowed per eigenvalue before giving up.
    int max_sweeps = 40;
    /// Verify eigenpairs by inverse iteration and report the worst residual.
    /// Without it, max_residual falls back to the deflation tolerance the
    /// QR iteration actually achieved.
    bool compute_residuals = true;
};

/// Non-convergence of the QR iteration; carries whatever eigenvalues were
/// already deflated so callers can inspect the partial result.
class EigenFailure : public NumericError {
  public:
    EigenFailure(const std::string& msg, std::vector<std::complex<double>> partial)
        : NumericError(msg), partial_eigenvalues(std::move(partial)) {}

    std::vector<std::complex<double>> partial_eigenvalues;
};

namespace detail {

/// Permutation phase of balancing: a row with no off-diagonal entry inside
/// the active window pins its diagonal value as an eigenvalue and moves to
/// the bottom border; a column likewise moves to the top. The comparisons
/// are exact, so pattern-triangular matrices deflate combinatorially and
/// their eigenvalues are read off without any iteration. Returns the
/// half-open window [lo, hi) still needing the QR treatment.
template <std::floating_point Real>
std::pair<int, int> isolate_by_permutation(Matrix<Real>& a) {
    const int n = static_cast<int>(a.dim());
    int lo = 0, hi = n;
    auto swap_row_col = [&](int x, int y) {
        if (x == y) return;
        for (int j = 0; j < n; ++j) std::swap(a(x, j), a(y, j));
        for (int i = 0; i < n; ++i) std::swap(a(i, x), a(i, y));
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = hi - 1; i >= lo && !changed; --i) {
            bool zero_row = true;
            for (int j = lo; j < hi; ++j)
                if (j != i && a(i, j) != Real(0)) {
                    zero_row = false;
                    break;
                }
            if (zero_row) {
                swap_row_col(i, hi - 1);
                --hi;
                changed = true;
            }
        }
        for (int j = lo; j < hi && !changed; ++j) {
            bool zero_col = true;
            for (int i = lo; i < hi; ++i)
                if (i != j && a(i, j) != Real(0)) {
                    zero_col = false;
                    break;
                }
            if (zero_col) {
                swap_row_col(j, lo);
                ++lo;
                changed = true;
            }
        }
    }
    return {lo, hi};
}

/// Parlett-Reinsch balancing with radix-2 scale factors. Powers of two are
/// exact in binary floating point, so the eigenvalues are untouched while
/// badly scaled rows/columns get comparable norms.
template <std::floating_point Real>
void balance_in_place(Matrix<Real>& a) {
    const std::size_t n = a.dim();
    const Real radix = 2;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            Real row = 0, col = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    col += std::abs(a(j, i));
                    row += std::abs(a(i, j));
                }
            if (col == Real(0) || row == Real(0)) continue;
            Real f = 1;
            const Real s = col + row;
            while (col < row / radix) {
                col *= radix;
                row /= radix;
                f *= radix;
            }
            while (col >= row * radix) {
                col /= radix;
                row *= radix;
                f /= radix;
            }
            if ((col + row) < Real(0.95) * s) {
                done = false;
                const Real g = Real(1) / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form (eigenvalues only, no
/// accumulation of the transform).
template <std::floating_point Real>
void hessenberg_in_place(Matrix<Real>& a) {
    const std::size_t n = a.dim();
    if (n < 3) return;
    std::vector<Real> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        Real scale = 0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == Real(0)) continue;

        Real norm2 = 0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += v[i] * v[i];
        }
        const Real alpha = -std::copysign(std::sqrt(norm2), v[k + 1]);
        v[k + 1] -= alpha;
        Real vv = 0;
        for (std::size_t i = k + 1; i < n; ++i) vv += v[i] * v[i];
        if (vv == Real(0)) continue;
        const Real beta = Real(2) / vv;

        // Left: P acts on rows k+1..n-1.
        for (std::size_t j = k; j < n; ++j) {
            Real s = 0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * a(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
        }
        // Right: P acts on columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            Real s = 0;
            for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
        }
        a(k + 1, k) = alpha * scale;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0;
    }
}

/// Francis implicit double-shift QR on an upper Hessenberg matrix.
/// Trailing 1x1 and 2x2 blocks are solved in closed form, which is where
/// conjugate pairs are extracted exactly. Exceptional ad-hoc shifts every
/// ten sweeps break the rare shift cycles.
template <std::floating_point Real>
std::vector<std::complex<Real>> hessenberg_qr(Matrix<Real>& h, int max_sweeps,
                                              Real* achieved_tol) {
    // Deflation thresholds are pinned to double precision: results are
    // reported as doubles, so a subdiagonal below that scale carries no
    // output information, while waiting for it to decay to extended-
    // precision eps would waste the sweep budget. The arithmetic itself
    // still runs in Real.
    const Real eps = std::max<Real>(std::numeric_limits<Real>::epsilon(),
                                    std::numeric_limits<double>::epsilon());
    const int n = static_cast<int>(h.dim());
    std::vector<std::complex<Real>> eig;
    eig.reserve(static_cast<std::size_t>(n));

    Real anorm = 0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
    if (achieved_tol) *achieved_tol = 0;

    auto partial_as_double = [&eig]() {
        std::vector<std::complex<double>> partial;
        partial.reserve(eig.size());
        for (const auto& v : eig)
            partial.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        return partial;
    };

    int nn = n - 1;
    Real t = 0;  // accumulated exceptional shift
    int its = 0;
    // The sweep budget is max_sweeps per eigenvalue, pooled over the whole
    // matrix: a block may borrow sweeps from eigenvalues that deflated
    // cheaply, which is how the reference implementations size ITMAX.
    const long budget = static_cast<long>(max_sweeps) * n;
    long total_sweeps = 0;
    while (nn >= 0) {
        // Find a negligible subdiagonal entry splitting off a trailing block.
        // Entries below eps * anorm are inside the backward-error budget of
        // the reduction itself, so they deflate even when both neighbouring
        // diagonal entries happen to be tiny.
        int l = nn;
        for (; l >= 1; --l) {
            Real s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (s == Real(0)) s = anorm;
            if (std::abs(h(l, l - 1)) <= eps * std::max(s, anorm)) {
                if (achieved_tol && s > Real(0))
                    *achieved_tol = std::max(*achieved_tol, std::abs(h(l, l - 1)) / s);
                h(l, l - 1) = 0;
                break;
            }
        }

        const Real x = h(nn, nn);
        if (l == nn) {  // one real eigenvalue
            eig.emplace_back(x + t, Real(0));
            --nn;
            its = 0;
            continue;
        }
        const Real y = h(nn - 1, nn - 1);
        const Real w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {  // trailing 2x2 block in closed form
            const Real p = Real(0.5) * (y - x);
            const Real q = p * p + w;
            const Real zr = std::sqrt(std::abs(q));
            const Real xs = x + t;
            if (q >= Real(0)) {
                const Real z = p + std::copysign(zr, p);
                const Real lam1 = xs + z;
                const Real lam2 = (z != Real(0)) ? xs - w / z : lam1;
                eig.emplace_back(lam1, Real(0));
                eig.emplace_back(lam2, Real(0));
            } else {
                eig.emplace_back(xs + p, zr);
                eig.emplace_back(xs + p, -zr);
            }
            nn -= 2;
            its = 0;
            continue;
        }

        if (++total_sweeps > budget)
            throw EigenFailure("QR iteration did not converge within the sweep budget",
                               partial_as_double());
        Real sx = x, sy = y, sw = w;  // shift data, possibly replaced below
        if (its != 0 && its % 10 == 0) {
            t += sx;
            for (int i = 0; i <= nn; ++i) h(i, i) -= sx;
            const Real s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
            sx = sy = Real(0.75) * s;
            sw = Real(-0.4375) * s * s;
        }
        ++its;

        // Start the chase at the lowest m where the first bulge column is
        // already negligible against its neighbours.
        int m = nn - 2;
        Real p = 0, q = 0, r = 0;
        for (; m >= l; --m) {
            const Real z = h(m, m);
            const Real rr = sx - z;
            const Real ss = sy - z;
            p = (rr * ss - sw) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - rr - ss;
            r = h(m + 2, m + 1);
            const Real s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const Real u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
            const Real v = std::abs(p) *
                           (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
            if (u <= eps * v) break;
        }
        for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0;
            if (i != m + 2) h(i, i - 3) = 0;
        }

        // Chase the bulge down the active block.
        for (int k = m; k <= nn - 1; ++k) {
            Real chase_scale = 1;
            if (k != m) {
                p = h(k, k - 1);
                q = h(k + 1, k - 1);
                r = (k != nn - 1) ? h(k + 2, k - 1) : Real(0);
                chase_scale = std::abs(p) + std::abs(q) + std::abs(r);
                if (chase_scale != Real(0)) {
                    p /= chase_scale;
                    q /= chase_scale;
                    r /= chase_scale;
                }
            }
            const Real s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
            if (s == Real(0)) continue;
            if (k == m) {
                if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
                h(k, k - 1) = -s * chase_scale;
            }
            p += s;
            const Real fx = p / s;
            const Real fy = q / s;
            const Real fz = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
                Real pp = h(k, j) + q * h(k + 1, j);
                if (k != nn - 1) {
                    pp += r * h(k + 2, j);
                    h(k + 2, j) -= pp * fz;
                }
                h(k + 1, j) -= pp * fy;
                h(k, j) -= pp * fx;
            }
            const int imax = std::min(nn, k + 3);
            for (int i = l; i <= imax; ++i) {
                Real pp = fx * h(i, k) + fy * h(i, k + 1);
                if (k != nn - 1) {
                    pp += fz * h(i, k + 2);
                    h(i, k + 2) -= pp * r;
                }
                h(i, k + 1) -= pp * q;
                h(i, k) -= pp;
            }
        }
    }
    return eig;
}

/// Residual ||A v - lambda v||_2 for a unit v obtained by two steps of
/// inverse iteration at the computed eigenvalue.
inline double eigenpair_residual(const DenseMatrix& a, std::complex<double> lambda) {
    using C = std::complex<double>;
    const std::size_t n = a.dim();
    Matrix<C> shifted(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) shifted(i, j) = C(a(i, j)) - (i == j ? lambda : C(0));
    const auto lu = LuDecomposition<C>::factor(std::move(shifted), /*shift_singular_pivots=*/true);

    std::uint64_t seed = 0x5eadbeefcafef00dull;
    std::vector<C> v(n);
    double norm = 0.0;
    for (auto& e : v) {
        const double re = static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53 - 0.5;
        const double im = static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53 - 0.5;
        e = C(re, im);
        norm += std::norm(e);
    }
    norm = std::sqrt(norm);
    for (auto& e : v) e /= norm;

    for (int pass = 0; pass < 2; ++pass) {
        std::vector<C> w = lu.solve(v);
        // Rescale by the largest component first so the 2-norm cannot
        // overflow even when the solve amplifies by 1/eps.
        double big = 0.0;
        bool finite = true;
        for (const auto& e : w) {
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
                finite = false;
                break;
            }
            big = std::max({big, std::abs(e.real()), std::abs(e.imag())});
        }
        if (!finite || big == 0.0) break;
        for (auto& e : w) e /= big;
        double wn = 0.0;
        for (const auto& e : w) wn += std::norm(e);
        wn = std::sqrt(wn);
        if (wn == 0.0) break;
        for (auto& e : w) e /= wn;
        v = std::move(w);
    }

    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        C acc = -lambda * v[i];
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * v[j];
        res += std::norm(acc);
    }
    return std::sqrt(res);
}

} // namespace detail

/// All n eigenvalues of a real dense matrix: optional balancing, Householder
/// reduction to Hessenberg form, then implicit double-shift QR with
/// deflation. The iteration runs in extended precision internally; results
/// are reported as doubles in the canonical order. Deterministic for a
/// fixed input.
inline Spectrum eigenvalues(const DenseMatrix& a, const EigenOptions& opts = {}) {
    const std::size_t n = a.dim();
    if (n == 0) throw std::invalid_argument("eigenvalues of an empty matrix");
    if (!all_finite(a)) throw std::invalid_argument("matrix entries must be finite");

    Spectrum out;
    if (n == 1) {
        out.eigenvalues = {std::complex<double>(a(0, 0), 0.0)};
        out.max_residual = 0.0;
        return out;
    }

    Matrix<long double> work(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) work(i, j) = a(i, j);

    out.eigenvalues.reserve(n);
    const auto [lo, hi] = detail::isolate_by_permutation(work);
    for (int i = 0; i < lo; ++i)
        out.eigenvalues.emplace_back(static_cast<double>(work(i, i)), 0.0);
    for (int i = hi; i < static_cast<int>(n); ++i)
        out.eigenvalues.emplace_back(static_cast<double>(work(i, i)), 0.0);

    long double achieved = 0;
    if (hi - lo > 0) {
        Matrix<long double> core(static_cast<std::size_t>(hi - lo));
        for (int i = lo; i < hi; ++i)
            for (int j = lo; j < hi; ++j) core(i - lo, j - lo) = work(i, j);
        if (opts.balance) detail::balance_in_place(core);
        detail::hessenberg_in_place(core);
        std::vector<std::complex<long double>> eig;
        try {
            eig = detail::hessenberg_qr(core, opts.max_sweeps, &achieved);
        } catch (EigenFailure& e) {
            e.partial_eigenvalues.insert(e.partial_eigenvalues.end(), out.eigenvalues.begin(),
                                         out.eigenvalues.end());
            throw;
        }
        for (const auto& v : eig)
            out.eigenvalues.emplace_back(static_cast<double>(v.real()),
                                         static_cast<double>(v.imag()));
    }
    sort_spectrum(out.eigenvalues);

    if (opts.compute_residuals) {
        double worst = 0.0;
        for (const auto& lambda : out.eigenvalues)
            worst = std::max(worst, detail::eigenpair_residual(a, lambda));
        out.max_residual = worst;
    } else {
        double scale = 0.0;
        for (double e : a.entries()) scale += std::abs(e);
        out.max_residual = static_cast<double>(achieved) * scale;
    }
    return out;
}

inline Spectrum eigenvalues(const NonnegativeMatrix& a, const EigenOptions& opts = {}) {
    return eigenvalues(a.matrix(), opts);
}

} // namespace spreadlab
