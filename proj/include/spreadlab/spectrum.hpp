#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace spreadlab {

/// Multiset of eigenvalues of a real matrix, with solver quality metadata.
/// max_residual is the largest verified ||Av - lambda v||_2 / ||v||_2 over
/// recomputed eigenpairs, or the deflation tolerance the QR iteration
/// actually achieved when no eigenpair was recomputed.
struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    double max_residual = 0.0;

    std::size_t size() const { return eigenvalues.size(); }
};

/// Deterministic presentation order: descending real part, then descending
/// imaginary part, so conjugate pairs sit next to each other.
inline void sort_spectrum(std::vector<std::complex<double>>& eig) {
    std::sort(eig.begin(), eig.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

/// Maximum distance between any two eigenvalues, by the exact O(n^2)
/// pairwise scan; zero for a single (repeated) eigenvalue.
inline double spread(std::span<const std::complex<double>> eig) {
    if (eig.empty()) throw std::invalid_argument("spread of an empty spectrum");
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < eig.size(); ++i)
        for (std::size_t j = i + 1; j < eig.size(); ++j)
            best = std::max(best, std::abs(eig[i] - eig[j]));
    return best;
}

inline double spread(const Spectrum& s) {
    return spread(std::span<const std::complex<double>>(s.eigenvalues));
}

/// Greedy clustering: eigenvalues are visited in the canonical order and
/// joined to the first cluster whose representative lies within
/// cluster_tol. The count is tolerance-dependent by nature; callers that
/// act on it should surface the tolerance they used.
inline int distinct_eigenvalue_count(std::span<const std::complex<double>> eig,
                                     double cluster_tol) {
    if (cluster_tol <= 0.0) throw std::invalid_argument("cluster_tol must be positive");
    std::vector<std::complex<double>> sorted(eig.begin(), eig.end());
    sort_spectrum(sorted);
    std::vector<std::complex<double>> representatives;
    for (const auto& v : sorted) {
        bool joined = false;
        for (const auto& rep : representatives)
            if (std::abs(v - rep) <= cluster_tol) {
                joined = true;
                break;
            }
        if (!joined) representatives.push_back(v);
    }
    return static_cast<int>(representatives.size());
}

inline int distinct_eigenvalue_count(const Spectrum& s, double cluster_tol) {
    return distinct_eigenvalue_count(std::span<const std::complex<double>>(s.eigenvalues),
                                     cluster_tol);
}

/// True when the multiset of conjugates equals the multiset itself within
/// tol, as it must for the spectrum of a real matrix.
inline bool conjugate_symmetric(std::span<const std::complex<double>> eig, double tol) {
    std::vector<bool> used(eig.size(), false);
    for (const auto& v : eig) {
        const std::complex<double> want = std::conj(v);
        bool found = false;
        for (std::size_t j = 0; j < eig.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(eig[j] - want) <= tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace spreadlab
