#pragma once

namespace spreadlab::defaults {

/// |r(A) - 1| tolerance for unit-radius checks and the Perron bracket.
inline constexpr double radius_tol = 1e-9;

/// Conjugate-pair matching tolerance for spectra of real matrices.
inline constexpr double pairing_tol = 1e-8;

/// Default clustering radius for counting distinct eigenvalues.
inline constexpr double cluster_tol = 1e-6;

/// Relative slack when comparing a spread against a lower bound.
inline constexpr double report_tol = 1e-9;

/// Relative slack for trace-power inequality checks.
inline constexpr double jll_tol = 1e-9;

/// Power-iteration budget before falling back to the QR solver.
inline constexpr int power_max_iter = 5000;

/// Trace powers evaluated by default in bound reports.
inline constexpr int jll_m_max = 5;

} // namespace spreadlab::defaults
