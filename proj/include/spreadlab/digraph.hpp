#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "spreadlab/matrix.hpp"

namespace spreadlab {

namespace detail {

/// Tarjan's algorithm, iterative to keep the stack flat. Returns the number
/// of strongly connected components of the adjacency-list digraph.
inline int scc_count(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    int components = 0;

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            auto& [v, child] = call.back();
            if (child == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            if (child < adj[v].size()) {
                int w = adj[v][child++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], index[w]);
                }
                continue;
            }
            if (lowlink[v] == index[v]) {
                ++components;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                } while (w != v);
            }
            int finished = v;
            call.pop_back();
            if (!call.empty())
                lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[finished]);
        }
    }
    return components;
}

template <typename T>
std::vector<std::vector<int>> pattern_digraph(const Matrix<T>& a) {
    const int n = static_cast<int>(a.dim());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a(i, j) != T{}) adj[i].push_back(j);
    return adj;
}

} // namespace detail

/// A matrix is irreducible iff no simultaneous row/column permutation makes
/// it block upper triangular, i.e. iff the digraph with an edge i -> j
/// exactly when a_ij is nonzero is strongly connected. Entries are compared
/// exactly to zero. A 1x1 matrix counts as irreducible by convention.
template <typename T>
bool is_irreducible(const Matrix<T>& a) {
    if (a.dim() <= 1) return true;
    return detail::scc_count(detail::pattern_digraph(a)) == 1;
}

inline bool is_irreducible(const NonnegativeMatrix& a) { return is_irreducible(a.matrix()); }

/// Whether the nonzero-pattern digraph contains a directed cycle. For a
/// nonnegative matrix this decides nilpotency exactly: r(A) > 0 iff some
/// cycle exists, so no numeric tolerance is involved.
template <typename T>
bool pattern_has_cycle(const Matrix<T>& a) {
    const auto adj = detail::pattern_digraph(a);
    const int n = static_cast<int>(adj.size());
    enum class State : unsigned char { fresh, active, done };
    std::vector<State> state(static_cast<std::size_t>(n), State::fresh);

    struct Frame {
        int v;
        std::size_t child;
    };
    std::vector<Frame> stack;
    for (int root = 0; root < n; ++root) {
        if (state[root] != State::fresh) continue;
        stack.push_back({root, 0});
        state[root] = State::active;
        while (!stack.empty()) {
            auto& [v, child] = stack.back();
            if (child < adj[v].size()) {
                const int w = adj[v][child++];
                if (state[w] == State::active) return true;
                if (state[w] == State::fresh) {
                    state[w] = State::active;
                    stack.push_back({w, 0});
                }
                continue;
            }
            state[v] = State::done;
            stack.pop_back();
        }
    }
    return false;
}

inline bool pattern_has_cycle(const NonnegativeMatrix& a) {
    return pattern_has_cycle(a.matrix());
}

} // namespace spreadlab
