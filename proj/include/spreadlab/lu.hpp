#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "spreadlab/matrix.hpp"

namespace spreadlab {

/// LU factorization with partial pivoting, generic over real and complex
/// scalars. Used for determinants (an eigensolver cross-check that stays
/// independent of the QR path) and for inverse-iteration residual checks.
template <typename T>
class LuDecomposition {
  public:
    /// When shift_singular_pivots is set, an exactly zero pivot is replaced
    /// by a tiny value so the factorization stays usable for inverse
    /// iteration on a singular shift; `singular()` still reports it.
    static LuDecomposition factor(Matrix<T> a, bool shift_singular_pivots = false) {
        LuDecomposition d;
        const std::size_t n = a.dim();
        d.perm_.resize(n);
        double scale = 0.0;
        for (const T& e : a.entries()) scale = std::max(scale, std::abs(e));
        // Replacement pivot for the singular case: small enough to mark the
        // null direction, large enough that solves stay finite.
        const double eps = std::numeric_limits<double>::epsilon();
        const double tiny = scale > 0.0 ? scale * eps : eps;

        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            double best = std::abs(a(col, col));
            for (std::size_t i = col + 1; i < n; ++i)
                if (std::abs(a(i, col)) > best) {
                    best = std::abs(a(i, col));
                    pivot = i;
                }
            d.perm_[col] = pivot;
            if (pivot != col) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
                d.sign_ = -d.sign_;
            }
            if (a(col, col) == T{}) {
                d.singular_ = true;
                if (!shift_singular_pivots) continue;
                a(col, col) = T(tiny);
            }
            for (std::size_t i = col + 1; i < n; ++i) {
                a(i, col) /= a(col, col);
                const T f = a(i, col);
                if (f == T{}) continue;
                for (std::size_t j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
            }
        }
        d.lu_ = std::move(a);
        return d;
    }

    bool singular() const { return singular_; }

    T determinant() const {
        T det = static_cast<T>(sign_);
        for (std::size_t i = 0; i < lu_.dim(); ++i) det *= lu_(i, i);
        return det;
    }

    std::vector<T> solve(std::vector<T> b) const {
        const std::size_t n = lu_.dim();
        for (std::size_t i = 0; i < n; ++i)
            if (perm_[i] != i) std::swap(b[i], b[perm_[i]]);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) b[i] -= lu_(i, j) * b[j];
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t j = ii + 1; j < n; ++j) b[ii] -= lu_(ii, j) * b[j];
            b[ii] /= lu_(ii, ii);
        }
        return b;
    }

  private:
    Matrix<T> lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
    bool singular_ = false;
};

template <typename T>
T determinant(const Matrix<T>& a) {
    return LuDecomposition<T>::factor(a).determinant();
}

} // namespace spreadlab
