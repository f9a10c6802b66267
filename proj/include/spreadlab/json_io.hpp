#pragma once

// JSON serialization for the report types. Kept out of the core headers so
// the library itself has no dependency on the vendored json library.

#include <json.hpp>

#include "spreadlab/bounds.hpp"
#include "spreadlab/constructions.hpp"
#include "spreadlab/search.hpp"
#include "spreadlab/spectrum.hpp"

namespace spreadlab {

using OrderedJson = nlohmann::ordered_json;

inline OrderedJson to_json(const Spectrum& s, int n) {
    OrderedJson j;
    j["format_version"] = 1;
    j["n"] = n;
    OrderedJson eig = OrderedJson::array();
    for (const auto& v : s.eigenvalues) eig.push_back({{"re", v.real()}, {"im", v.imag()}});
    j["eigenvalues"] = std::move(eig);
    j["spread"] = spread(s);
    j["max_residual"] = s.max_residual;
    return j;
}

inline OrderedJson to_json(const BoundReport& r) {
    OrderedJson j;
    j["format_version"] = 1;
    j["n"] = r.n;
    j["k"] = r.k;
    j["spread"] = r.spread_value;
    j["perron"] = r.perron;
    OrderedJson bounds = OrderedJson::object();
    for (const auto& [name, value] : r.bounds) bounds[name] = value;
    j["bounds"] = std::move(bounds);
    OrderedJson jll = OrderedJson::array();
    for (const auto& c : r.jll) {
        jll.push_back({{"kind", c.kind == JllCheck::Kind::modified ? "modified" : "classical"},
                       {"k", c.k},
                       {"m", c.m},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"satisfied", c.satisfied},
                       {"skipped", c.skipped}});
    }
    j["jll"] = std::move(jll);
    j["violations"] = r.violations;
    j["normalized"] = r.normalized;
    j["d_n_detected"] = r.d_n_detected;
    j["distinct_eigenvalues"] = r.distinct_eigenvalues;
    j["cluster_tol"] = r.cluster_tol;
    j["max_residual"] = r.max_residual;
    return j;
}

inline OrderedJson to_json(const SimilarityCertificate& c) {
    OrderedJson j;
    j["format_version"] = 1;
    j["n"] = c.n;
    j["similarity_exact"] = c.similarity_exact;
    j["commutators_exact"] = c.commutators_exact;
    j["series_identity_exact"] = c.series_identity_exact;
    return j;
}

inline OrderedJson to_json(const SearchResult& r, const SearchConfig& config) {
    OrderedJson j;
    j["format_version"] = 1;
    j["n"] = config.n;
    j["seed"] = config.seed;
    j["method"] = to_string(config.method);
    j["restarts"] = config.restarts;
    j["iters_per_restart"] = config.iters_per_restart;
    j["density"] = config.density;
    j["best_spread"] = r.best_spread;
    j["theoretical_bound"] = r.theoretical_bound;
    j["gap"] = r.gap;
    j["evaluations"] = r.evaluations;
    j["best_restart"] = r.best_restart;
    j["bound_violation"] = r.bound_violation;
    j["restart_best"] = r.restart_best;
    j["best_matrix"] = to_text(r.best_matrix.matrix());
    return j;
}

} // namespace spreadlab
