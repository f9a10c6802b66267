#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spreadlab/bounds.hpp"
#include "spreadlab/constructions.hpp"
#include "spreadlab/defaults.hpp"
#include "spreadlab/digraph.hpp"
#include "spreadlab/eigensolver.hpp"
#include "spreadlab/matrix.hpp"
#include "spreadlab/perron.hpp"
#include "spreadlab/rng.hpp"
#include "spreadlab/spectrum.hpp"

namespace spreadlab {

struct SearchConfig {
    int n = 4;
    std::uint64_t seed = 0;
    int restarts = 4;
    int iters_per_restart = 400;
    /// Expected fraction of nonzero entries in a fresh sample, in (0, 1].
    double density = 0.6;
    enum class Method { random, nelder_mead, anneal };
    Method method = Method::nelder_mead;

    void validate() const {
        if (n < 2) throw std::invalid_argument("search requires n >= 2");
        if (restarts < 1) throw std::invalid_argument("search requires restarts >= 1");
        if (iters_per_restart < 1) throw std::invalid_argument("search requires iters >= 1");
        if (!(density > 0.0 && density <= 1.0))
            throw std::invalid_argument("density must lie in (0, 1]");
    }
};

inline std::string to_string(SearchConfig::Method m) {
    switch (m) {
        case SearchConfig::Method::random: return "random";
        case SearchConfig::Method::nelder_mead: return "nelder_mead";
        case SearchConfig::Method::anneal: return "anneal";
    }
    return "unknown";
}

inline SearchConfig::Method method_from_string(const std::string& s) {
    if (s == "random") return SearchConfig::Method::random;
    if (s == "nelder_mead") return SearchConfig::Method::nelder_mead;
    if (s == "anneal") return SearchConfig::Method::anneal;
    throw std::invalid_argument("unknown search method '" + s + "'");
}

struct SearchResult {
    NonnegativeMatrix best_matrix{DenseMatrix(1)};
    double best_spread = std::numeric_limits<double>::infinity();
    double theoretical_bound = 0.0;
    double gap = 0.0;
    long evaluations = 0;
    /// Best objective value found by each restart, in restart order.
    std::vector<double> restart_best;
    int best_restart = -1;
    /// Set when gap < -report_tol: a finding that must be surfaced loudly,
    /// never smoothed over.
    bool bound_violation = false;
};

/// Draw one member of C_n: entries are zero with probability 1 - density
/// and uniform on (0, 1] otherwise, the corner entry is pinned to zero, and
/// the result is scaled to unit spectral radius. Nilpotent draws are
/// rejected; one hundred in a row aborts with an error since the density
/// is then too low to be useful.
inline NonnegativeMatrix sample_cn(int n, Rng& rng, double density) {
    if (n < 2) throw std::invalid_argument("sample_cn requires n >= 2");
    if (!(density > 0.0 && density <= 1.0))
        throw std::invalid_argument("density must lie in (0, 1]");
    const auto un = static_cast<std::size_t>(n);
    for (int attempt = 0; attempt < 100; ++attempt) {
        DenseMatrix m(un);
        for (std::size_t i = 0; i < un; ++i)
            for (std::size_t j = 0; j < un; ++j) {
                if (i == 0 && j == 0) continue;
                if (rng.next_double() < density) m(i, j) = rng.next_positive();
            }
        if (!pattern_has_cycle(m)) continue;  // nilpotent draw
        return normalize_to_unit_radius(NonnegativeMatrix{std::move(m)});
    }
    throw NumericError("sample_cn: 100 consecutive nilpotent draws; density too low");
}

namespace detail {

/// Parameter vector <-> matrix: the n^2 - 1 free entries (everything but
/// the pinned zero corner) map through absolute value, which keeps the
/// objective continuous across the nonnegativity boundary.
inline DenseMatrix matrix_from_params(int n, const std::vector<double>& p) {
    const auto un = static_cast<std::size_t>(n);
    DenseMatrix m(un);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j) {
            if (i == 0 && j == 0) continue;
            m(i, j) = std::abs(p[idx++]);
        }
    return m;
}

inline std::vector<double> params_from_matrix(const DenseMatrix& m) {
    std::vector<double> p;
    p.reserve(m.dim() * m.dim() - 1);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (i == 0 && j == 0) continue;
            p.push_back(m(i, j));
        }
    return p;
}

struct Objective {
    int n;
    mutable long evaluations = 0;

    double operator()(const std::vector<double>& p) const {
        ++evaluations;
        try {
            NonnegativeMatrix m{matrix_from_params(n, p)};
            const NonnegativeMatrix unit = normalize_to_unit_radius(m);
            const Spectrum s =
                eigenvalues(unit.matrix(), EigenOptions{.compute_residuals = false});
            return spread(s);
        } catch (const NumericError&) {  // nilpotent point or solver failure
            return std::numeric_limits<double>::infinity();
        } catch (const MatrixError&) {  // parameters overflowed to non-finite
            return std::numeric_limits<double>::infinity();
        }
    }
};

struct RestartOutcome {
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_params;
    long evaluations = 0;
};

/// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
/// contract 0.5, shrink 0.5); stops when the simplex diameter collapses
/// below 1e-10 or the iteration budget is spent.
inline RestartOutcome nelder_mead(const Objective& obj, std::vector<double> start, int iters) {
    const std::size_t dim = start.size();
    std::vector<std::vector<double>> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back(start);
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> v = start;
        v[i] += (v[i] != 0.0) ? 0.05 * v[i] : 0.1;
        simplex.push_back(std::move(v));
    }
    std::vector<double> value(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) value[i] = obj(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) order[i] = i;
    auto sort_order = [&] {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (value[a] != value[b]) return value[a] < value[b];
            return a < b;
        });
    };

    for (int it = 0; it < iters; ++it) {
        sort_order();
        const std::size_t best = order[0], worst = order[dim];
        double diameter = 0.0;
        for (std::size_t i = 1; i <= dim; ++i)
            for (std::size_t d = 0; d < dim; ++d)
                diameter = std::max(diameter,
                                    std::abs(simplex[order[i]][d] - simplex[best][d]));
        if (diameter < 1e-10) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coef) {
            std::vector<double> v(dim);
            for (std::size_t d = 0; d < dim; ++d)
                v[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
            return v;
        };

        std::vector<double> reflected = blend(-1.0);
        const double fr = obj(reflected);
        if (fr < value[best]) {
            std::vector<double> expanded = blend(-2.0);
            const double fe = obj(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                value[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                value[worst] = fr;
            }
            continue;
        }
        if (fr < value[order[dim - 1]]) {
            simplex[worst] = std::move(reflected);
            value[worst] = fr;
            continue;
        }
        std::vector<double> contracted = blend(fr < value[worst] ? -0.5 : 0.5);
        const double fc = obj(contracted);
        if (fc < std::min(fr, value[worst])) {
            simplex[worst] = std::move(contracted);
            value[worst] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < dim; ++d)
                simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
            value[i] = obj(simplex[i]);
        }
    }
    sort_order();
    RestartOutcome out;
    out.best = value[order[0]];
    out.best_params = simplex[order[0]];
    return out;
}

inline RestartOutcome anneal(const Objective& obj, std::vector<double> start, int iters,
                             Rng& rng) {
    const double t_initial = 0.25, t_final = 1e-4;
    std::vector<double> current = start;
    double f_current = obj(current);
    RestartOutcome out;
    out.best = f_current;
    out.best_params = current;
    for (int it = 0; it < iters; ++it) {
        const double temp =
            t_initial * std::pow(t_final / t_initial,
                                 static_cast<double>(it) / std::max(1, iters - 1));
        std::vector<double> proposal = current;
        const std::size_t coord = rng.next_index(proposal.size());
        proposal[coord] += temp * rng.next_gaussian();
        const double f_prop = obj(proposal);
        const double delta = f_prop - f_current;
        if (delta <= 0.0 || rng.next_double() < std::exp(-delta / temp)) {
            current = std::move(proposal);
            f_current = f_prop;
            if (f_current < out.best) {
                out.best = f_current;
                out.best_params = current;
            }
        }
    }
    return out;
}

inline RestartOutcome random_search(const Objective& obj, int n, int iters, Rng& rng,
                                    double density) {
    RestartOutcome out;
    for (int it = 0; it < iters; ++it) {
        NonnegativeMatrix m = sample_cn(n, rng, density);
        std::vector<double> p = params_from_matrix(m.matrix());
        const double f = obj(p);
        if (f < out.best) {
            out.best = f;
            out.best_params = std::move(p);
        }
    }
    return out;
}

inline RestartOutcome run_restart(const SearchConfig& config, int restart_index) {
    Objective obj{config.n};
    Rng rng = Rng::for_stream(config.seed, static_cast<std::uint64_t>(restart_index));

    RestartOutcome out;
    switch (config.method) {
        case SearchConfig::Method::random:
            out = random_search(obj, config.n, config.iters_per_restart, rng, config.density);
            break;
        case SearchConfig::Method::nelder_mead:
        case SearchConfig::Method::anneal: {
            std::vector<double> start;
            if (restart_index == 0) {
                // Incumbent: the known sharpness witness.
                start = params_from_matrix(extremal_matrix(config.n).matrix());
            } else {
                start = params_from_matrix(sample_cn(config.n, rng, config.density).matrix());
            }
            out = (config.method == SearchConfig::Method::nelder_mead)
                      ? nelder_mead(obj, std::move(start), config.iters_per_restart)
                      : anneal(obj, std::move(start), config.iters_per_restart, rng);
            break;
        }
    }
    out.evaluations = obj.evaluations;
    return out;
}

/// Worker cap: SPREADLAB_THREADS, where 0 or unset means auto.
inline unsigned thread_cap() {
    unsigned cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("SPREADLAB_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0) cap = static_cast<unsigned>(parsed);
    }
    return cap;
}

} // namespace detail

/// Minimize the spread over nonnegative matrices with a pinned zero corner.
/// Restarts are independent streams and may run on several threads; the
/// final selection is the lexicographic minimum of (spread, restart index),
/// so the result does not depend on scheduling.
inline SearchResult minimize_spread(const SearchConfig& config) {
    config.validate();

    std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
    const unsigned workers =
        std::min<unsigned>(detail::thread_cap(), static_cast<unsigned>(config.restarts));
    if (workers <= 1) {
        for (int r = 0; r < config.restarts; ++r)
            outcomes[static_cast<std::size_t>(r)] = detail::run_restart(config, r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < config.restarts; r = next.fetch_add(1))
                    outcomes[static_cast<std::size_t>(r)] = detail::run_restart(config, r);
            });
        for (auto& t : pool) t.join();
    }

    SearchResult result;
    result.theoretical_bound = spread_lower_bound(config.n).value;
    for (int r = 0; r < config.restarts; ++r) {
        const auto& o = outcomes[static_cast<std::size_t>(r)];
        result.evaluations += o.evaluations;
        result.restart_best.push_back(o.best);
        if (o.best < result.best_spread) {
            result.best_spread = o.best;
            result.best_restart = r;
        }
    }
    if (result.best_restart < 0 || !std::isfinite(result.best_spread))
        throw NumericError("search produced no finite objective value");

    const auto& winner = outcomes[static_cast<std::size_t>(result.best_restart)];
    result.best_matrix = normalize_to_unit_radius(
        NonnegativeMatrix{detail::matrix_from_params(config.n, winner.best_params)});
    result.gap = result.best_spread - result.theoretical_bound;
    result.bound_violation = result.gap < -defaults::report_tol;
    return result;
}

struct SweepRow {
    int n = 0;
    double theoretical_bound_general = 0.0;
    double theoretical_bound_d_n = 0.0;
    double best_spread = 0.0;
    double gap = 0.0;
    long evaluations = 0;
    std::string status = "ok";
    bool bound_violation = false;
};

/// One minimize_spread run per dimension; failures are recorded in the row
/// and the sweep continues.
inline std::vector<SweepRow> sweep_experiment(int n_min, int n_max, SearchConfig base) {
    if (n_min < 2 || n_min > n_max)
        throw std::invalid_argument("sweep requires 2 <= n_min <= n_max");
    std::vector<SweepRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        SweepRow row;
        row.n = n;
        row.theoretical_bound_general = spread_lower_bound(n).value;
        row.theoretical_bound_d_n = two_eigenvalue_bound(n);
        try {
            SearchConfig config = base;
            config.n = n;
            const SearchResult r = minimize_spread(config);
            row.best_spread = r.best_spread;
            row.gap = r.gap;
            row.evaluations = r.evaluations;
            row.bound_violation = r.bound_violation;
            if (r.bound_violation) row.status = "bound_violation";

            // Cross-check the winner against the full bound report.
            const BoundReport report = verify_bounds(r.best_matrix);
            if (!report.violations.empty() || !report.jll_all_satisfied()) {
                row.bound_violation = true;
                row.status = "bound_violation";
            }
        } catch (const std::exception& e) {
            row.status = e.what();
            row.best_spread = std::numeric_limits<double>::quiet_NaN();
            row.gap = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Fixed column set, documented in the README; doubles are shortest
/// round-trip so identical runs serialize identically.
inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "# format_version 1\n";
    out += "n,theoretical_bound_general,theoretical_bound_D_n,best_spread,gap,evaluations,status\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += format_entry(r.theoretical_bound_general);
        out += ',';
        out += format_entry(r.theoretical_bound_d_n);
        out += ',';
        out += format_entry(r.best_spread);
        out += ',';
        out += format_entry(r.gap);
        out += ',';
        out += std::to_string(r.evaluations);
        out += ',';
        out += r.status;
        out += '\n';
    }
    return out;
}

} // namespace spreadlab
