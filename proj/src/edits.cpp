#include "modq/edits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "modq/detail/subset_scan.hpp"

namespace modq {

std::string serialize_edits(const std::vector<Edit>& edits) {
    std::string out;
    for (const Edit& e : edits) {
        out += e.add ? '+' : '-';
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
        out += '\n';
    }
    return out;
}

Graph apply_edits(const Graph& g, const std::vector<Edit>& edits) {
    auto edges = g.edges();
    for (const Edit& e : edits) {
        auto pair = std::minmax(e.u, e.v);
        std::pair<int, int> key{pair.first, pair.second};
        auto it = std::find(edges.begin(), edges.end(), key);
        if (e.add) {
            if (it != edges.end()) throw std::invalid_argument("adding an existing edge");
            edges.push_back(key);
        } else {
            if (it == edges.end()) throw std::invalid_argument("removing a missing edge");
            edges.erase(it);
        }
    }
    return Graph::from_edges(g.vertex_count(), std::move(edges));
}

namespace {

std::vector<std::pair<int, int>> candidate_pairs(const Graph& g, EditMode mode) {
    std::vector<std::pair<int, int>> out;
    const int n = g.vertex_count();
    switch (mode) {
        case EditMode::RemoveOnly:
            return g.edges();
        case EditMode::AddOnly:
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (!g.has_edge(u, v)) out.emplace_back(u, v);
            return out;
        case EditMode::Both:
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) out.emplace_back(u, v);
            return out;
    }
    return out;
}

EditSearchResult build_result(const Graph& g, int level, int budget,
                              const std::vector<std::pair<int, int>>& pairs,
                              const std::vector<int>& chosen,
                              const detail::SubsetScanner::Hit& hit) {
    EditSearchResult res;
    res.distance = level;
    res.budget = budget;
    for (int i : chosen) {
        auto [u, v] = pairs[i];
        res.witness_edits.push_back({u, v, !g.has_edge(u, v)});
    }
    Graph edited = apply_edits(g, res.witness_edits);
    Bipartition bip{detail::mask_to_set(g.vertex_count(), hit.mask)};
    ScoreBreakdown sb = modularity_score(edited, bip);
    if (!sb.score.is_positive())
        throw std::logic_error("witness rescore disagrees with scan");  // two routes must agree
    res.witness = bip;
    res.witness_score = sb;
    return res;
}

// Orbit key of a single toggled pair under the part-structure symmetries of a
// complete multipartite graph: same-part flag plus the two part sizes.
using OrbitKey = std::tuple<int, int, int>;

OrbitKey pair_orbit_key(const std::vector<int>& part_of, const std::vector<int>& sizes, int u,
                        int v) {
    int pu = part_of[u], pv = part_of[v];
    int a = sizes[pu], b = sizes[pv];
    if (a > b) std::swap(a, b);
    return {pu == pv ? 1 : 0, a, b};
}

}  // namespace

EditSearchResult edit_distance_to_positive(const Graph& g, EditMode mode, int budget,
                                           const EditSearchOptions& options) {
    if (budget < 1) throw std::invalid_argument("budget must be at least 1");
    const int n = g.vertex_count();
    int cap = std::min(options.subset_cap, 64);
    if (n > cap)
        throw CapExceeded("edit search refused: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap));

    auto scanner = detail::SubsetScanner::from_graph(g);
    if (auto hit = scanner.first_positive()) {
        // already positive: zero edits
        return build_result(g, 0, budget, {}, {}, *hit);
    }

    auto pairs = candidate_pairs(g, mode);

    // orbit representatives for level 1 on a declared multipartite structure
    std::vector<int> level1_candidates(pairs.size());
    std::iota(level1_candidates.begin(), level1_candidates.end(), 0);
    if (options.orbit_parts) {
        const auto& sizes = *options.orbit_parts;
        if (!(g == complete_multipartite(sizes)))
            throw std::invalid_argument("orbit pruning requires the canonical multipartite graph");
        std::vector<int> part_of;
        for (size_t p = 0; p < sizes.size(); ++p)
            part_of.insert(part_of.end(), sizes[p], static_cast<int>(p));
        std::map<OrbitKey, int> first_of_orbit;
        level1_candidates.clear();
        for (size_t i = 0; i < pairs.size(); ++i) {
            OrbitKey key = pair_orbit_key(part_of, sizes, pairs[i].first, pairs[i].second);
            if (first_of_orbit.emplace(key, static_cast<int>(i)).second)
                level1_candidates.push_back(static_cast<int>(i));
        }
    }

    for (int level = 1; level <= budget; ++level) {
        if (level > static_cast<int>(pairs.size())) break;
        if (level == 1) {
            for (int i : level1_candidates) {
                scanner.toggle_pair(pairs[i].first, pairs[i].second);
                auto hit = scanner.first_positive();
                scanner.toggle_pair(pairs[i].first, pairs[i].second);
                if (hit) return build_result(g, 1, budget, pairs, {i}, *hit);
            }
            continue;
        }
        // k-combinations of pair indices in lexicographic order
        std::vector<int> idx(level);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            for (int i : idx) scanner.toggle_pair(pairs[i].first, pairs[i].second);
            auto hit = scanner.first_positive();
            for (int i : idx) scanner.toggle_pair(pairs[i].first, pairs[i].second);
            if (hit) return build_result(g, level, budget, pairs, idx, *hit);

            int pos = level - 1;
            while (pos >= 0 && idx[pos] == static_cast<int>(pairs.size()) - level + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int j = pos + 1; j < level; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    EditSearchResult res;
    res.budget = budget;
    return res;
}

int predicted_delta_complete(int n) {
    if (n <= 3)
        throw std::invalid_argument("K_n with n <= 3 can never reach positive modularity");
    return n / 2 + 1;
}

BipartiteDeltas predicted_deltas_bipartite(int s, int t) {
    if (s < 1 || s > t) throw std::invalid_argument("need 1 <= s <= t");
    BipartiteDeltas d;
    d.remove = (s == 1) ? std::nullopt : std::optional<int>(1);
    bool add_impossible = (s == 1 && t <= 3) || (s == 2 && t == 2);
    d.add = add_impossible ? std::nullopt : std::optional<int>(1);
    if (s == 1 && t <= 2)
        d.edit = std::nullopt;
    else if (s == 1 && t == 3)
        d.edit = 2;
    else
        d.edit = 1;
    return d;
}

DiophantinePair diophantine_pair(long long s, long long t) {
    if (s < 2) throw std::invalid_argument("need s >= 2");
    if (s > t) throw std::invalid_argument("need s <= t");
    if (std::gcd(s, t) != 1) throw std::invalid_argument("s and t must be coprime");
    // a' = t^{-1} mod s, via extended Euclid on (t mod s, s)
    long long r0 = s, r1 = t % s, x0 = 0, x1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - q * r1);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
    }
    long long a = ((x0 % s) + s) % s;  // t*a == 1 (mod s), 0 <= a < s
    if (a == 0) throw std::logic_error("inverse cannot be zero for s >= 2");
    long long b = (a * t - 1) / s;
    DiophantinePair out{a, b};
    if (!(1 <= out.a_prime && out.a_prime <= s - 1 && 1 <= out.b_prime && out.b_prime <= t - 1))
        throw std::logic_error("diophantine pair out of range");
    return out;
}

namespace {

WitnessConstruction finish_witness(const Graph& base, std::vector<Edit> edits, VertexSet a) {
    Graph edited = apply_edits(base, edits);
    Bipartition bip{std::move(a)};
    ScoreBreakdown sb = modularity_score(edited, bip);
    if (!sb.score.is_positive()) throw std::logic_error("constructed witness is not positive");
    return {std::move(edited), std::move(edits), std::move(bip), std::move(sb)};
}

// lexicographically smallest edge of g crossing (A, ~A)
std::pair<int, int> first_crossing_edge(const Graph& g, const VertexSet& a) {
    for (auto [u, v] : g.edges())
        if (a.contains(u) != a.contains(v)) return {u, v};
    throw std::logic_error("no crossing edge");
}

// lexicographically smallest non-edge with both endpoints in A
std::pair<int, int> first_internal_nonedge(const Graph& g, const VertexSet& a) {
    auto verts = a.to_vector();
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (!g.has_edge(verts[i], verts[j])) return {verts[i], verts[j]};
    throw std::logic_error("no internal non-edge");
}

}  // namespace

WitnessConstruction kn_minus_witness(int n) {
    if (n <= 3) throw std::invalid_argument("need n >= 4");
    Graph kn = complete_graph(n);
    const int half_up = (n + 1) / 2;
    VertexSet a(n);
    for (int v = 0; v < half_up; ++v) a.insert(v);
    // the k lexicographically-first cut edges, k = floor(n/2) + 1
    int k = n / 2 + 1;
    std::vector<Edit> edits;
    for (auto [u, v] : kn.edges()) {
        if (static_cast<int>(edits.size()) == k) break;
        if (a.contains(u) != a.contains(v)) edits.push_back({u, v, false});
    }
    return finish_witness(kn, std::move(edits), std::move(a));
}

WitnessConstruction bipartite_removal_witness(int s, int t) {
    if (s < 2) throw std::invalid_argument("need s >= 2 (stars never reach positive modularity)");
    if (s > t) throw std::invalid_argument("need s <= t");
    Graph g = complete_bipartite(s, t);
    const int common = static_cast<int>(std::gcd(s, t));
    long long in_s, in_t;
    if (common > 1) {
        in_s = s / common;
        in_t = t / common;
    } else {
        DiophantinePair dp = diophantine_pair(s, t);
        in_s = dp.a_prime;
        in_t = dp.b_prime;
    }
    VertexSet a(s + t);
    for (int v = 0; v < in_s; ++v) a.insert(v);
    for (int v = s; v < s + in_t; ++v) a.insert(v);
    auto [u, v] = first_crossing_edge(g, a);
    return finish_witness(g, {{u, v, false}}, std::move(a));
}

std::optional<WitnessConstruction> bipartite_addition_witness(int s, int t) {
    if (s < 1 || s > t) throw std::invalid_argument("need 1 <= s <= t");
    if ((s == 1 && t <= 3) || (s == 2 && t == 2)) return std::nullopt;
    Graph g = complete_bipartite(s, t);
    const int n = s + t;
    VertexSet a(n);
    if (s == 1) {
        // join two leaves of the star and cluster them
        a.insert(1);
        a.insert(2);
        return finish_witness(g, {{1, 2, true}}, std::move(a));
    }
    const int common = static_cast<int>(std::gcd(s, t));
    long long small_s, small_t;
    bool a_is_complement;
    if (common > 1) {
        small_s = s / common;
        small_t = t / common;
        a_is_complement = true;  // A is the larger side, room for an internal edge
    } else {
        DiophantinePair dp = diophantine_pair(s, t);
        small_s = dp.a_prime;
        small_t = dp.b_prime;
        a_is_complement = (dp.a_prime == 1 && dp.b_prime == 1);
    }
    VertexSet small(n);
    for (int v = 0; v < small_s; ++v) small.insert(v);
    for (int v = s; v < s + small_t; ++v) small.insert(v);
    a = a_is_complement ? small.complement() : small;
    auto [u, v] = first_internal_nonedge(g, a);
    return finish_witness(g, {{u, v, true}}, std::move(a));
}

WitnessConstruction multipartite_removal_witness(const std::vector<int>& part_sizes, int ell) {
    if (part_sizes.size() < 2) throw std::invalid_argument("need at least two parts");
    if (ell < 2) throw std::invalid_argument("need ell >= 2");
    for (int s : part_sizes)
        if (s % ell != 0)
            throw std::invalid_argument("ell must divide every part size");
    Graph g = complete_multipartite(part_sizes);
    VertexSet a(g.vertex_count());
    int at = 0;
    for (int s : part_sizes) {
        for (int v = at; v < at + s / ell; ++v) a.insert(v);
        at += s;
    }
    auto [u, v] = first_crossing_edge(g, a);
    return finish_witness(g, {{u, v, false}}, std::move(a));
}

}  // namespace modq
