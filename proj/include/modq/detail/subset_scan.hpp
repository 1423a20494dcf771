#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "modq/graph.hpp"

namespace modq::detail {

// Bitmask view of a graph with at most 64 vertices, shared by the positivity
// oracle and the edit searcher (which toggles pairs in place between scans).
struct SubsetScanner {
    int n = 0;
    long long m = 0;
    std::vector<uint64_t> adj;  // adj[v] bit w <=> edge vw
    std::vector<int> deg;

    static SubsetScanner from_graph(const Graph& g) {
        SubsetScanner s;
        s.n = g.vertex_count();
        s.m = g.edge_count();
        s.adj.assign(s.n, 0);
        s.deg.assign(s.n, 0);
        for (auto [u, v] : g.edges()) {
            s.adj[u] |= uint64_t(1) << v;
            s.adj[v] |= uint64_t(1) << u;
            ++s.deg[u];
            ++s.deg[v];
        }
        return s;
    }

    bool has_pair(int u, int v) const { return (adj[u] >> v) & 1u; }

    void toggle_pair(int u, int v) {
        int delta = has_pair(u, v) ? -1 : 1;
        adj[u] ^= uint64_t(1) << v;
        adj[v] ^= uint64_t(1) << u;
        deg[u] += delta;
        deg[v] += delta;
        m += delta;
    }

    struct Hit {
        uint64_t mask;  // witness subset, bit v <=> vertex v (vertex 0 never set)
        long long p;
    };

    // First subset (lowest Gray-code index) with p(U) > 0, among nonempty
    // subsets of {1..n-1}.
    std::optional<Hit> first_positive() const {
        if (n < 2 || m == 0) return std::nullopt;
        const long long nu = 2 * m;
        uint64_t mask = 0;
        long long vol = 0;
        long long cut = 0;
        const uint64_t steps = (uint64_t(1) << (n - 1)) - 1;
        for (uint64_t k = 1; k <= steps; ++k) {
            const int v = std::countr_zero(k) + 1;
            const uint64_t bit = uint64_t(1) << v;
            if (mask & bit) {
                mask ^= bit;
                const long long in_u = std::popcount(adj[v] & mask);
                cut -= deg[v] - 2 * in_u;
                vol -= deg[v];
            } else {
                const long long in_u = std::popcount(adj[v] & mask);
                cut += deg[v] - 2 * in_u;
                vol += deg[v];
                mask ^= bit;
            }
            const long long p = vol * (nu - vol) - cut * nu;
            if (p > 0) return Hit{mask, p};
        }
        return std::nullopt;
    }
};

inline VertexSet mask_to_set(int n, uint64_t mask) {
    VertexSet s(n);
    while (mask) {
        int v = std::countr_zero(mask);
        s.insert(v);
        mask &= mask - 1;
    }
    return s;
}

}  // namespace modq::detail
