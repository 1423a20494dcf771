#include "modq/modularity.hpp"

#include <algorithm>
#include <bit>

#include "modq/detail/subset_scan.hpp"

namespace modq {

ScoreBreakdown modularity_score(const Graph& g, const std::vector<VertexSet>& partition) {
    const int n = g.vertex_count();
    std::vector<int> label(n, -1);
    for (size_t p = 0; p < partition.size(); ++p) {
        if (partition[p].universe() != n)
            throw std::invalid_argument("partition defined over a different vertex range");
        for (int v : partition[p].to_vector()) {
            if (label[v] != -1)
                throw std::invalid_argument("not a partition: vertex " + std::to_string(v) +
                                            " in two parts");
            label[v] = static_cast<int>(p);
        }
    }
    for (int v = 0; v < n; ++v)
        if (label[v] == -1)
            throw std::invalid_argument("not a partition: vertex " + std::to_string(v) +
                                        " uncovered");

    const long long m = g.edge_count();
    if (m == 0) return {Rational(), Rational(), Rational()};  // q_A = 0 by convention

    std::vector<long long> internal(partition.size(), 0);
    std::vector<long long> vol(partition.size(), 0);
    for (auto [u, v] : g.edges())
        if (label[u] == label[v]) ++internal[label[u]];
    for (int v = 0; v < n; ++v) vol[label[v]] += g.degree(v);

    Int128 sum_internal = 0;
    Int128 sum_vol_sq = 0;
    for (size_t p = 0; p < partition.size(); ++p) {
        sum_internal += internal[p];
        sum_vol_sq = checked_add(sum_vol_sq, checked_mul(vol[p], vol[p]));
    }
    const Int128 nu = 2 * static_cast<Int128>(m);
    Rational coverage(sum_internal, m);
    Rational tax(sum_vol_sq, checked_mul(nu, nu));
    return {coverage, tax, coverage - tax};
}

ScoreBreakdown modularity_score(const Graph& g, const Bipartition& b) {
    return modularity_score(g, std::vector<VertexSet>{b.part_a, b.part_b()});
}

Int128 p_value(const Graph& g, const VertexSet& u) {
    if (u.universe() != g.vertex_count())
        throw std::invalid_argument("vertex set over a different range");
    if (u.empty() || u.size() == g.vertex_count())
        throw std::invalid_argument("p(U) needs a proper nonempty subset");

    long long e_in = 0, cut = 0, vol = 0;
    for (auto [a, b] : g.edges()) {
        bool ia = u.contains(a), ib = u.contains(b);
        if (ia && ib)
            ++e_in;
        else if (ia != ib)
            ++cut;
    }
    for (int v : u.to_vector()) vol += g.degree(v);

    const Int128 nu = static_cast<Int128>(g.volume());
    Int128 direct = checked_sub(checked_mul(2 * static_cast<Int128>(e_in), nu),
                                checked_mul(vol, vol));
    Int128 via_cut = checked_sub(checked_mul(vol, nu - vol), checked_mul(cut, nu));
    if (direct != via_cut) throw std::logic_error("p(U) closed forms disagree");
    return direct;
}

PositivityWitness has_positive_modularity(const Graph& g, int cap) {
    const int n = g.vertex_count();
    if (cap > 64) cap = 64;  // mask width bound
    if (n > cap)
        throw CapExceeded("positivity scan refused: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap));
    if (g.edge_count() == 0) return {PositivityWitness::Verdict::Zero, std::nullopt, std::nullopt};

    auto scanner = detail::SubsetScanner::from_graph(g);
    if (auto hit = scanner.first_positive())
        return {PositivityWitness::Verdict::Positive, detail::mask_to_set(n, hit->mask), hit->p};
    return {PositivityWitness::Verdict::Zero, std::nullopt, std::nullopt};
}

namespace {

// Recursive restricted-growth enumeration of set partitions with incremental
// per-part volume and internal-edge counts. Scores are compared on the common
// denominator m * nu^2: scaled(q) = sum_e * nu^2 - sum_vol_sq * m.
struct PartitionEnumerator {
    int n;
    long long m, nu;
    std::vector<uint64_t> adj;
    std::vector<int> deg;
    std::vector<uint64_t> part_mask;
    std::vector<long long> part_vol;
    std::vector<int> label;
    long long sum_internal = 0;
    Int128 sum_vol_sq = 0;
    Int128 best_scaled = 0;
    std::vector<int> best_label;

    explicit PartitionEnumerator(const Graph& g)
        : n(g.vertex_count()), m(g.edge_count()), nu(2 * g.edge_count()) {
        adj.assign(n, 0);
        deg.assign(n, 0);
        for (auto [u, v] : g.edges()) {
            adj[u] |= uint64_t(1) << v;
            adj[v] |= uint64_t(1) << u;
            ++deg[u];
            ++deg[v];
        }
        part_mask.assign(n, 0);
        part_vol.assign(n, 0);
        label.assign(n, 0);
        best_label.assign(n, 0);  // trivial partition scores 0 = best_scaled
    }

    void run() { place(0, 0); }

    void place(int v, int used) {
        if (v == n) {
            Int128 scaled = checked_sub(
                checked_mul(static_cast<Int128>(sum_internal),
                            checked_mul(static_cast<Int128>(nu), static_cast<Int128>(nu))),
                checked_mul(sum_vol_sq, m));
            if (scaled > best_scaled) {
                best_scaled = scaled;
                best_label = label;
            }
            return;
        }
        const int limit = std::min(used + 1, v + 1);
        for (int p = 0; p < limit; ++p) {
            const long long gained = std::popcount(adj[v] & part_mask[p]);
            const long long old_vol = part_vol[p];
            sum_internal += gained;
            sum_vol_sq += static_cast<Int128>(2 * old_vol * deg[v] + 1LL * deg[v] * deg[v]);
            part_vol[p] += deg[v];
            part_mask[p] |= uint64_t(1) << v;
            label[v] = p;

            place(v + 1, std::max(used, p + 1));

            part_mask[p] &= ~(uint64_t(1) << v);
            part_vol[p] = old_vol;
            sum_vol_sq -= static_cast<Int128>(2 * old_vol * deg[v] + 1LL * deg[v] * deg[v]);
            sum_internal -= gained;
        }
    }
};

std::vector<std::vector<int>> labels_to_parts(int n, const std::vector<int>& label) {
    int parts = 0;
    for (int v = 0; v < n; ++v) parts = std::max(parts, label[v] + 1);
    std::vector<std::vector<int>> out(std::max(parts, n > 0 ? 1 : 0));
    for (int v = 0; v < n; ++v) out[label[v]].push_back(v);
    if (out.empty() && n == 0) return {};
    return out;
}

}  // namespace

ExactModularity exact_modularity(const Graph& g, int cap) {
    const int n = g.vertex_count();
    if (cap > 20) cap = 20;  // Bell(20) is out of reach anyway; keep masks in one word
    if (n > cap)
        throw CapExceeded("set-partition scan refused: n=" + std::to_string(n) +
                          " exceeds cap " + std::to_string(cap));
    if (n == 0) return {Rational(), {}};
    if (g.edge_count() == 0)
        return {Rational(), labels_to_parts(n, std::vector<int>(n, 0))};

    PartitionEnumerator en(g);
    en.run();
    const Int128 nu = 2 * static_cast<Int128>(g.edge_count());
    Rational value(en.best_scaled,
                   checked_mul(static_cast<Int128>(g.edge_count()), checked_mul(nu, nu)));
    return {value, labels_to_parts(n, en.best_label)};
}

Rational near_complete_upper_bound(const Graph& g) {
    const long long n = g.vertex_count();
    const long long m = g.edge_count();
    if (m == 0) throw std::invalid_argument("upper bound needs at least one edge");
    Int128 num = static_cast<Int128>(n) * (n - 1) - n - 2 * static_cast<Int128>(m);
    if (num < 0) num = 0;
    return Rational(num, m);
}

}  // namespace modq
