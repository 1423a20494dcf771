#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modq/errors.hpp"

namespace modq {

// Subset of a fixed vertex range 0..n-1, bitset semantics.
class VertexSet {
public:
    explicit VertexSet(int universe) : n_(universe), bits_((universe + 63) / 64, 0), count_(0) {}
    static VertexSet of(int universe, const std::vector<int>& vertices);

    int universe() const { return n_; }
    int size() const { return count_; }
    bool empty() const { return count_ == 0; }

    bool contains(int v) const { return (bits_[v >> 6] >> (v & 63)) & 1u; }
    void insert(int v) {
        if (!contains(v)) {
            bits_[v >> 6] |= uint64_t(1) << (v & 63);
            ++count_;
        }
    }
    void erase(int v) {
        if (contains(v)) {
            bits_[v >> 6] &= ~(uint64_t(1) << (v & 63));
            --count_;
        }
    }

    VertexSet complement() const;
    std::vector<int> to_vector() const;
    std::string to_string() const;  // "0,2,5"

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
    int n_;
    std::vector<uint64_t> bits_;
    int count_;
};

// One side of a bipartition; the other side is the complement.
struct Bipartition {
    VertexSet part_a;

    int universe() const { return part_a.universe(); }
    VertexSet part_b() const { return part_a.complement(); }
    bool proper() const {
        return part_a.size() > 0 && part_a.size() < part_a.universe();
    }
};

struct PartitionStats {
    long long internal_edges_a = 0;
    long long internal_edges_b = 0;
    long long cut_edges = 0;
    long long vol_a = 0;
    long long vol_b = 0;
};

// Immutable simple undirected graph. Vertices are 0..n-1; the edge list is
// kept strictly sorted with u < v so structurally equal graphs compare equal.
// Degrees and CSR adjacency are built once in the constructor and never
// mutated; edits produce new graphs.
class Graph {
public:
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    long long volume() const { return 2 * edge_count(); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& degrees() const { return degrees_; }
    int degree(int v) const { return degrees_[v]; }
    std::span<const int> neighbors(int v) const {
        return {adj_.data() + adj_offsets_[v], adj_.data() + adj_offsets_[v + 1]};
    }
    bool has_edge(int u, int v) const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
    Graph() = default;

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> degrees_;
    std::vector<long long> adj_offsets_;
    std::vector<int> adj_;
};

// Builders. Parts occupy consecutive vertex ranges in the given order.
Graph complete_graph(int n);
Graph complete_bipartite(int s, int t);
Graph complete_multipartite(const std::vector<int>& part_sizes);
Graph path_graph(int n);

Graph complement(const Graph& g);

PartitionStats partition_stats(const Graph& g, const Bipartition& b);

// Edge-list text format: "n m" header, then m lines "u v" with 0 <= u < v < n.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

// "0,2|1,3" partition syntax (parts '|'-separated, vertices ','-separated).
std::vector<VertexSet> parse_partition(int n, std::string_view text);
std::string serialize_partition(const std::vector<VertexSet>& parts);
VertexSet parse_vertex_set(int n, std::string_view text);

}  // namespace modq
