#include "modq/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace modq {

VertexSet VertexSet::of(int universe, const std::vector<int>& vertices) {
    VertexSet s(universe);
    for (int v : vertices) {
        if (v < 0 || v >= universe) throw std::invalid_argument("vertex out of range");
        s.insert(v);
    }
    return s;
}

VertexSet VertexSet::complement() const {
    VertexSet s(n_);
    for (size_t w = 0; w < bits_.size(); ++w) s.bits_[w] = ~bits_[w];
    if (n_ & 63) s.bits_.back() &= (uint64_t(1) << (n_ & 63)) - 1;
    s.count_ = n_ - count_;
    return s;
}

std::vector<int> VertexSet::to_vector() const {
    std::vector<int> out;
    out.reserve(count_);
    for (size_t w = 0; w < bits_.size(); ++w) {
        uint64_t x = bits_[w];
        while (x) {
            out.push_back(static_cast<int>(w * 64 + std::countr_zero(x)));
            x &= x - 1;
        }
    }
    return out;
}

std::string VertexSet::to_string() const {
    std::string out;
    bool first = true;
    for (int v : to_vector()) {
        if (!first) out += ',';
        out += std::to_string(v);
        first = false;
    }
    return out;
}

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    for (auto& [u, v] : edges) {
        if (u == v) throw std::invalid_argument("loop edge");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) throw std::invalid_argument("edge endpoint out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.degrees_.assign(n, 0);
    for (auto [u, v] : g.edges_) {
        ++g.degrees_[u];
        ++g.degrees_[v];
    }
    g.adj_offsets_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) g.adj_offsets_[v + 1] = g.adj_offsets_[v] + g.degrees_[v];
    g.adj_.resize(2 * g.edges_.size());
    std::vector<long long> fill(g.adj_offsets_.begin(), g.adj_offsets_.end() - 1);
    for (auto [u, v] : g.edges_) {
        g.adj_[fill[u]++] = v;
        g.adj_[fill[v]++] = u;
    }
    for (int v = 0; v < n; ++v)
        std::sort(g.adj_.begin() + g.adj_offsets_[v], g.adj_.begin() + g.adj_offsets_[v + 1]);
    return g;
}

bool Graph::has_edge(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Graph complete_graph(int n) {
    return complete_multipartite(std::vector<int>(n, 1));
}

Graph complete_bipartite(int s, int t) {
    return complete_multipartite({s, t});
}

Graph complete_multipartite(const std::vector<int>& part_sizes) {
    if (part_sizes.empty()) throw std::invalid_argument("no parts given");
    long long n = 0;
    for (int s : part_sizes) {
        if (s <= 0) throw std::invalid_argument("part sizes must be positive");
        n += s;
    }
    if (n > 100000) throw std::invalid_argument("complete multipartite graph too large to materialize");
    // part id per vertex; parts occupy consecutive ranges in the given order
    std::vector<int> part(n);
    int p = 0, at = 0;
    for (int s : part_sizes) {
        std::fill(part.begin() + at, part.begin() + at + s, p++);
        at += s;
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part[u] != part[v]) edges.emplace_back(u, v);
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph::from_edges(n, std::move(edges));
}

Graph complement(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(n) * (n - 1) / 2 - g.edge_count());
    for (int u = 0; u < n; ++u) {
        auto nb = g.neighbors(u);
        size_t i = std::lower_bound(nb.begin(), nb.end(), u + 1) - nb.begin();
        for (int v = u + 1; v < n; ++v) {
            if (i < nb.size() && nb[i] == v) {
                ++i;
            } else {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph::from_edges(n, std::move(edges));
}

PartitionStats partition_stats(const Graph& g, const Bipartition& b) {
    if (b.universe() != g.vertex_count())
        throw std::invalid_argument("bipartition defined over a different vertex range");
    PartitionStats st;
    for (auto [u, v] : g.edges()) {
        bool au = b.part_a.contains(u);
        bool av = b.part_a.contains(v);
        if (au && av)
            ++st.internal_edges_a;
        else if (!au && !av)
            ++st.internal_edges_b;
        else
            ++st.cut_edges;
    }
    st.vol_a = 2 * st.internal_edges_a + st.cut_edges;
    st.vol_b = 2 * st.internal_edges_b + st.cut_edges;
    return st;
}

namespace {

// strict nonneg decimal parse of a whole token
bool parse_int_token(std::string_view tok, long long& out) {
    if (tok.empty()) return false;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size() && out >= 0;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find(sep, start);
        if (end == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

}  // namespace

Graph parse_graph(std::string_view text) {
    auto lines = split(text, '\n');
    // tolerate one trailing newline
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw ParseError(ParseError::Kind::BadHeader, "missing header line");

    auto header = split(lines[0], ' ');
    long long n = 0, m = 0;
    if (header.size() != 2 || !parse_int_token(header[0], n) || !parse_int_token(header[1], m))
        throw ParseError(ParseError::Kind::BadHeader, "header must be \"n m\"");
    if (n > 2'000'000'000)
        throw ParseError(ParseError::Kind::BadHeader, "vertex count out of range");
    if (static_cast<long long>(lines.size()) - 1 != m)
        throw ParseError(ParseError::Kind::WrongEdgeCount,
                         "expected " + std::to_string(m) + " edge lines, got " +
                             std::to_string(lines.size() - 1));

    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto tok = split(lines[i], ' ');
        long long u = 0, v = 0;
        if (tok.size() != 2 || !parse_int_token(tok[0], u) || !parse_int_token(tok[1], v))
            throw ParseError(ParseError::Kind::BadEdgeLine,
                             "edge line " + std::to_string(i) + " must be \"u v\" with u < v");
        if (u == v)
            throw ParseError(ParseError::Kind::Loop,
                             "loop at vertex " + std::to_string(u) + " (line " + std::to_string(i) + ")");
        if (u > v)
            throw ParseError(ParseError::Kind::BadEdgeLine,
                             "edge line " + std::to_string(i) + " must satisfy u < v");
        if (v >= n)
            throw ParseError(ParseError::Kind::VertexOutOfRange,
                             "vertex " + std::to_string(v) + " out of range (line " + std::to_string(i) + ")");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    std::sort(edges.begin(), edges.end());
    if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end())
        throw ParseError(ParseError::Kind::DuplicateEdge,
                         "duplicate edge " + std::to_string(it->first) + " " +
                             std::to_string(it->second));
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

VertexSet parse_vertex_set(int n, std::string_view text) {
    VertexSet s(n);
    for (auto tok : split(text, ',')) {
        long long v = 0;
        if (!parse_int_token(tok, v))
            throw ParseError(ParseError::Kind::BadPartition, "bad vertex token");
        if (v >= n)
            throw ParseError(ParseError::Kind::BadPartition,
                             "vertex " + std::to_string(v) + " out of range");
        if (s.contains(static_cast<int>(v)))
            throw ParseError(ParseError::Kind::BadPartition,
                             "vertex " + std::to_string(v) + " listed twice");
        s.insert(static_cast<int>(v));
    }
    return s;
}

std::vector<VertexSet> parse_partition(int n, std::string_view text) {
    std::vector<VertexSet> parts;
    for (auto part : split(text, '|')) parts.push_back(parse_vertex_set(n, part));
    return parts;
}

std::string serialize_partition(const std::vector<VertexSet>& parts) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += '|';
        out += parts[i].to_string();
    }
    return out;
}

}  // namespace modq
