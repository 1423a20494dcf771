#include "modq/transition.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace modq {

CoreInfo two_core(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> deg(g.degrees());
    std::vector<char> removed(n, 0);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v)
        if (deg[v] <= 1) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (removed[v]) continue;
        removed[v] = 1;
        for (int w : g.neighbors(v)) {
            if (removed[w]) continue;
            if (--deg[w] == 1) queue.push_back(w);
        }
    }

    CoreInfo info;
    info.core_vertices = VertexSet(n);
    long long degree_sum = 0;
    for (int v = 0; v < n; ++v) {
        if (!removed[v]) {
            info.core_vertices.insert(v);
            degree_sum += deg[v];
        }
    }
    info.core_edges = degree_sum / 2;
    info.excess = info.core_vertices.empty() ? 0 : info.core_edges - info.core_vertices.size();

    // components of the core
    std::vector<char> seen(n, 0);
    for (int v = 0; v < n; ++v) {
        if (removed[v] || seen[v]) continue;
        ++info.components;
        std::vector<int> stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(x))
                if (!removed[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
    }
    return info;
}

namespace {

// size s counts as oversized when s > rho * n
bool oversized(long long s, const Rational& rho, long long n) {
    return static_cast<Int128>(s) * rho.den() > rho.num() * static_cast<Int128>(n);
}

struct AliveForest {
    int n;
    std::vector<std::vector<int>> adj;

    explicit AliveForest(const Graph& f) : n(f.vertex_count()), adj(n) {
        for (auto [u, v] : f.edges()) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    }

    void drop_edge(int u, int v) {
        std::erase(adj[u], v);
        std::erase(adj[v], u);
    }

    // component of v, vertices in discovery order
    std::vector<int> component(int v, std::vector<int>& comp_id, int id) const {
        std::vector<int> verts{v};
        comp_id[v] = id;
        for (size_t i = 0; i < verts.size(); ++i)
            for (int w : adj[verts[i]])
                if (comp_id[w] != id) {
                    comp_id[w] = id;
                    verts.push_back(w);
                }
        return verts;
    }
};

}  // namespace

SplitResult split_forest(const Graph& forest, const Rational& rho) {
    const int n = forest.vertex_count();
    if (static_cast<Int128>(rho.num()) * n < rho.den())
        throw std::invalid_argument("need rho >= 1/n");

    // acyclicity: edges == vertices - components
    {
        std::vector<int> comp_id(n, -1);
        AliveForest probe(forest);
        int comps = 0;
        for (int v = 0; v < n; ++v)
            if (comp_id[v] == -1) probe.component(v, comp_id, comps++);
        if (forest.edge_count() != n - comps)
            throw std::invalid_argument("split_forest input has a cycle");
    }

    SplitResult result;
    for (int v = 0; v < n; ++v)
        result.max_degree_observed = std::max(result.max_degree_observed, forest.degree(v));

    AliveForest alive(forest);
    for (;;) {
        // find the oversized component with the smallest vertex
        std::vector<int> comp_id(n, -1);
        int id = 0;
        std::vector<int> target;
        for (int v = 0; v < n && target.empty(); ++v) {
            if (comp_id[v] != -1) continue;
            auto verts = alive.component(v, comp_id, id++);
            if (oversized(static_cast<long long>(verts.size()), rho, n)) target = std::move(verts);
        }
        if (target.empty()) break;

        // root the tree at its smallest leaf and compute subtree sizes
        int root = -1;
        for (int v : target)
            if (alive.adj[v].size() == 1 && (root == -1 || v < root)) root = v;
        std::vector<int> parent(n, -2);
        std::vector<long long> subtree(n, 0);
        std::vector<int> order{root};
        parent[root] = -1;
        for (size_t i = 0; i < order.size(); ++i) {
            int x = order[i];
            for (int w : alive.adj[x])
                if (parent[w] == -2) {
                    parent[w] = x;
                    order.push_back(w);
                }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            subtree[*it] += 1;
            if (parent[*it] != -1) subtree[parent[*it]] += subtree[*it];
        }

        // walk from the leaf towards shrinking far sides
        int v = root;
        for (;;) {
            int next = -1;
            for (int w : alive.adj[v]) {
                if (w == parent[v]) continue;
                if (oversized(subtree[w], rho, n) && (next == -1 || w < next)) next = w;
            }
            if (next == -1) break;
            v = next;
        }
        // remove every edge at v (arrival edge included)
        std::vector<int> nbrs(alive.adj[v]);
        for (int w : nbrs) {
            result.removed_edges.emplace_back(std::min(v, w), std::max(v, w));
            alive.drop_edge(v, w);
        }
    }

    // postconditions: all components small, and fewer than d/rho removals
    {
        std::vector<int> comp_id(n, -1);
        int id = 0;
        for (int v = 0; v < n; ++v) {
            if (comp_id[v] != -1) continue;
            auto verts = alive.component(v, comp_id, id++);
            if (oversized(static_cast<long long>(verts.size()), rho, n))
                throw std::logic_error("split_forest left an oversized component");
        }
        const Int128 removed = static_cast<Int128>(result.removed_edges.size());
        if (!(removed == 0 ||
              removed * rho.num() < static_cast<Int128>(result.max_degree_observed) * rho.den()))
            throw std::logic_error("split_forest removed too many edges");
    }
    return result;
}

SparseBipartition balanced_bipartition_sparse(const Graph& g, const Rational& rho) {
    const int n = g.vertex_count();
    if (static_cast<Int128>(rho.num()) * n < rho.den())
        throw std::invalid_argument("need rho >= 1/n");

    long long isolated = 0;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 0) ++isolated;
    // need isolated >= rho*n - 1
    if (static_cast<Int128>(isolated + 1) * rho.den() < rho.num() * static_cast<Int128>(n))
        throw HypothesisFailed("fewer than rho*n - 1 isolated vertices");

    // step 1: breadth-first spanning forest, roots at component minima
    std::vector<std::pair<int, int>> tree_edges;
    {
        std::vector<char> seen(n, 0);
        std::vector<int> queue;
        for (int r = 0; r < n; ++r) {
            if (seen[r]) continue;
            seen[r] = 1;
            queue.assign(1, r);
            for (size_t i = 0; i < queue.size(); ++i) {
                int x = queue[i];
                for (int w : g.neighbors(x))
                    if (!seen[w]) {
                        seen[w] = 1;
                        tree_edges.emplace_back(std::min(x, w), std::max(x, w));
                        queue.push_back(w);
                    }
            }
        }
    }
    Graph forest = Graph::from_edges(n, tree_edges);
    const long long nontree = g.edge_count() - forest.edge_count();

    // step 2: split oversized trees
    SplitResult split = split_forest(forest, rho);

    // step 3: 2-color the small trees, biggest component first, larger colour
    // class to the lighter side; singletons settle the final imbalance
    std::vector<std::vector<int>> alive_adj(n);
    {
        std::vector<std::pair<int, int>> dropped = split.removed_edges;
        std::sort(dropped.begin(), dropped.end());
        for (auto e : forest.edges())
            if (!std::binary_search(dropped.begin(), dropped.end(), e)) {
                alive_adj[e.first].push_back(e.second);
                alive_adj[e.second].push_back(e.first);
            }
    }
    struct Component {
        int root;
        std::vector<int> class0, class1;  // class0 holds the root
        long long size() const { return static_cast<long long>(class0.size() + class1.size()); }
    };
    std::vector<Component> comps;
    std::vector<int> singles;
    {
        std::vector<char> seen(n, 0);
        for (int r = 0; r < n; ++r) {
            if (seen[r]) continue;
            Component c{r, {}, {}};
            std::vector<std::pair<int, int>> stack{{r, 0}};
            seen[r] = 1;
            while (!stack.empty()) {
                auto [x, colour] = stack.back();
                stack.pop_back();
                (colour == 0 ? c.class0 : c.class1).push_back(x);
                for (int w : alive_adj[x])
                    if (!seen[w]) {
                        seen[w] = 1;
                        stack.emplace_back(w, 1 - colour);
                    }
            }
            if (c.size() == 1)
                singles.push_back(r);
            else
                comps.push_back(std::move(c));
        }
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.root < b.root;
    });

    VertexSet side_a(n);
    long long count_a = 0, count_b = 0;
    auto add_class = [&](const std::vector<int>& cls, bool to_a) {
        if (to_a) {
            for (int v : cls) side_a.insert(v);
            count_a += static_cast<long long>(cls.size());
        } else {
            count_b += static_cast<long long>(cls.size());
        }
    };
    for (const Component& c : comps) {
        const auto& big = c.class0.size() >= c.class1.size() ? c.class0 : c.class1;
        const auto& small = c.class0.size() >= c.class1.size() ? c.class1 : c.class0;
        bool big_to_a = count_a <= count_b;
        add_class(big, big_to_a);
        add_class(small, !big_to_a);
    }
    for (int v : singles) {
        bool to_a = count_a <= count_b;
        if (to_a) {
            side_a.insert(v);
            ++count_a;
        } else {
            ++count_b;
        }
    }
    if (std::llabs(count_a - count_b) > 1)
        throw std::logic_error("bipartition left unbalanced");

    SparseBipartition out{Bipartition{std::move(side_a)}, 0, nontree,
                          static_cast<long long>(split.removed_edges.size()),
                          0};
    for (int v = 0; v < n; ++v)
        out.max_degree_observed = std::max(out.max_degree_observed, g.degree(v));
    PartitionStats st = partition_stats(g, out.bipartition);
    out.edges_sacrificed = st.internal_edges_a + st.internal_edges_b;

    // sacrificed < excess + components + d/rho (degenerate d = 0 has nothing to lose)
    CoreInfo core = two_core(g);
    Int128 lhs = static_cast<Int128>(out.edges_sacrificed - core.excess - core.components) *
                 rho.num();
    Int128 rhs = static_cast<Int128>(out.max_degree_observed) * rho.den();
    if (!(lhs < rhs || (out.max_degree_observed == 0 && out.edges_sacrificed == 0)))
        throw std::logic_error("bipartition sacrificed too many edges");
    return out;
}

double x_of_c(double c) {
    if (!(c >= 1.0)) throw std::invalid_argument("need c >= 1");
    const double target = c * std::exp(-c);
    auto f = [&](double x) { return x * std::exp(-x) - target; };
    if (f(1.0) == 0.0) return 1.0;
    double lo = 1e-300, hi = 1.0;
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::fabs(fm) <= 1e-12) return mid;
        if (fm < 0)
            lo = mid;
        else
            hi = mid;
    }
    throw std::runtime_error("x(c) bisection did not reach residual 1e-12");
}

double delta_of_c(double c) {
    if (!(c > 1.0 && c <= 2.0)) throw std::invalid_argument("need 1 < c <= 2");
    const double x = x_of_c(c);
    return ((c - 1.0) * (2.0 - c) + 2.0 * (x - 1.0) * (x - 1.0)) / (2.0 * c);
}

ScoreBreakdown complement_score(const Graph& g, const Bipartition& b) {
    const long long n = g.vertex_count();
    PartitionStats st = partition_stats(g, b);
    const long long size_a = b.part_a.size();
    const long long size_b = n - size_a;
    const Int128 total = static_cast<Int128>(n) * (n - 1) / 2;
    const Int128 m_dense = total - g.edge_count();
    if (m_dense == 0) return {Rational(), Rational(), Rational()};

    Int128 internal_dense =
        checked_sub(checked_add(static_cast<Int128>(size_a) * (size_a - 1) / 2,
                                static_cast<Int128>(size_b) * (size_b - 1) / 2),
                    static_cast<Int128>(st.internal_edges_a + st.internal_edges_b));
    Int128 vol_a = checked_sub(checked_mul(static_cast<Int128>(size_a), n - 1),
                               static_cast<Int128>(st.vol_a));
    Int128 vol_b = checked_sub(checked_mul(static_cast<Int128>(size_b), n - 1),
                               static_cast<Int128>(st.vol_b));
    Int128 nu = 2 * m_dense;
    Rational coverage(internal_dense, m_dense);
    Rational tax(checked_add(checked_mul(vol_a, vol_a), checked_mul(vol_b, vol_b)),
                 checked_mul(nu, nu));
    return {coverage, tax, coverage - tax};
}

Rational default_rho(int n) {
    long long k = 1;
    while (k * k * k < static_cast<long long>(n) * n) ++k;  // smallest k with k^3 >= n^2
    return Rational(k, n);
}

namespace {

Int128 ceil_div(Int128 a, Int128 b) { return (a + b - 1) / b; }

TransitionRecord run_one(const TransitionConfig& config, const Rational& rho, uint64_t seed) {
    const int n = config.n;
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    std::mt19937_64 rng(seed);

    std::vector<std::pair<int, int>> edges;
    if (config.model == TransitionModel::Gnp) {
        Rational rate = config.c / Rational(n, 1);
        edges = sample_pairs_bernoulli(n, rate, rng);
    } else {
        Int128 k = ceil_div(checked_mul(config.c.num(), n), 2 * config.c.den());
        if (k < 0 || k > total) throw std::invalid_argument("complement edge count out of range");
        edges = sample_pairs_uniform(n, static_cast<long long>(k), rng);
    }
    Graph comp = Graph::from_edges(n, std::move(edges));

    TransitionRecord rec;
    rec.n = n;
    rec.c = config.c;
    rec.model = config.model;
    rec.seed = seed;
    rec.complement_edges = comp.edge_count();
    rec.missing_edges = comp.edge_count();
    rec.rho = rho;
    rec.zero_certified = 2 * comp.edge_count() <= n;

    CoreInfo core = two_core(comp);
    rec.core_excess = core.excess;
    rec.core_components = core.components;

    const Int128 m_dense = static_cast<Int128>(total) - comp.edge_count();
    Int128 ub = 2 * static_cast<Int128>(comp.edge_count()) - n;
    rec.upper = (m_dense == 0 || ub < 0) ? Rational() : Rational(ub, m_dense);

    try {
        SparseBipartition bb = balanced_bipartition_sparse(comp, rho);
        rec.edges_removed = bb.split_removed;
        rec.cut_edges = partition_stats(comp, bb.bipartition).cut_edges;
        rec.certified = complement_score(comp, bb.bipartition).score;
        if (rec.certified->is_positive() && *rec.certified > rec.upper)
            throw std::logic_error("certified score above the upper bound");
    } catch (const HypothesisFailed&) {
        rec.certified = std::nullopt;  // flagged, excluded from certified tallies
    }
    return rec;
}

}  // namespace

std::vector<TransitionRecord> transition_experiment(const TransitionConfig& config) {
    if (config.seeds.empty()) throw std::invalid_argument("seed list is empty");
    if (config.n < 2) throw std::invalid_argument("need n >= 2");
    if (!config.c.is_positive()) throw std::invalid_argument("need c > 0");
    const Rational rho = config.rho ? *config.rho : default_rho(config.n);

    std::vector<TransitionRecord> records(config.seeds.size());
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= config.seeds.size()) return;
            try {
                records[i] = run_one(config, rho, config.seeds[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    unsigned workers = std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()),
                                        config.seeds.size());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return records;
}

const char* const kTransitionCsvHeader =
    "n,c,mode,seed,complement_edges,core_excess,core_components,rho,edges_removed,cut_edges,"
    "certified_num,certified_den,upper_num,upper_den,missing_edges,zero_certified";

namespace {

const char* mode_name(TransitionModel m) { return m == TransitionModel::Gnp ? "gnp" : "gnm"; }

}  // namespace

void write_transition_csv(std::ostream& out, const std::vector<TransitionRecord>& records) {
    out << kTransitionCsvHeader << '\n';
    for (const TransitionRecord& r : records) {
        out << r.n << ',' << decimal_string(r.c) << ',' << mode_name(r.model) << ',' << r.seed
            << ',' << r.complement_edges << ',' << r.core_excess << ',' << r.core_components
            << ',' << decimal_string(r.rho) << ',' << r.edges_removed << ',' << r.cut_edges
            << ',';
        if (r.certified)
            out << to_string_i128(r.certified->num()) << ',' << to_string_i128(r.certified->den());
        else
            out << "0,0";  // hypothesis failed: no certificate for this sample
        out << ',' << to_string_i128(r.upper.num()) << ',' << to_string_i128(r.upper.den()) << ','
            << r.missing_edges << ',' << (r.zero_certified ? 1 : 0) << '\n';
    }
}

std::string transition_csv(const std::vector<TransitionRecord>& records) {
    std::ostringstream out;
    write_transition_csv(out, records);
    return out.str();
}

std::vector<TransitionRecord> parse_transition_csv(std::string_view text) {
    std::vector<std::string> lines;
    for (size_t start = 0; start < text.size();) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        if (end > start) lines.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    if (lines.empty() || lines[0] != kTransitionCsvHeader)
        throw ParseError(ParseError::Kind::BadCsv, "missing or mismatched CSV header");
    if (lines.size() == 1)
        throw ParseError(ParseError::Kind::BadCsv, "schema ok but no rows");

    std::vector<TransitionRecord> out;
    for (size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> f;
        std::stringstream ss(lines[i]);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 16)
            throw ParseError(ParseError::Kind::BadCsv,
                             "row " + std::to_string(i) + ": expected 16 fields");
        try {
            TransitionRecord r;
            r.n = std::stoi(f[0]);
            r.c = parse_decimal(f[1]);
            if (f[2] != "gnp" && f[2] != "gnm")
                throw ParseError(ParseError::Kind::BadCsv, "bad mode " + f[2]);
            r.model = f[2] == "gnp" ? TransitionModel::Gnp : TransitionModel::Gnm;
            r.seed = std::stoull(f[3]);
            r.complement_edges = std::stoll(f[4]);
            r.core_excess = std::stoll(f[5]);
            r.core_components = std::stoi(f[6]);
            r.rho = parse_decimal(f[7]);
            r.edges_removed = std::stoll(f[8]);
            r.cut_edges = std::stoll(f[9]);
            Int128 cnum = parse_i128(f[10]);
            Int128 cden = parse_i128(f[11]);
            r.certified = (cden == 0) ? std::nullopt : std::optional<Rational>(Rational(cnum, cden));
            r.upper = Rational(parse_i128(f[12]), parse_i128(f[13]));
            r.missing_edges = std::stoll(f[14]);
            if (f[15] != "0" && f[15] != "1")
                throw ParseError(ParseError::Kind::BadCsv, "bad boolean " + f[15]);
            r.zero_certified = f[15] == "1";
            out.push_back(std::move(r));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(ParseError::Kind::BadCsv,
                             "row " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    size_t k = values.size();
    if (k == 0) return 0.0;
    return k % 2 ? values[k / 2] : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

}  // namespace

std::vector<TransitionSummary> summarize_records(const std::vector<TransitionRecord>& records) {
    std::map<std::tuple<int, std::string, std::string>, std::vector<const TransitionRecord*>>
        groups;
    for (const TransitionRecord& r : records)
        groups[{r.n, decimal_string(r.c), mode_name(r.model)}].push_back(&r);

    std::vector<TransitionSummary> out;
    for (const auto& [key, rows] : groups) {
        TransitionSummary s;
        s.n = std::get<0>(key);
        s.c = std::get<1>(key);
        s.mode = std::get<2>(key);
        s.samples = static_cast<long long>(rows.size());
        std::vector<double> ncert, nupper;
        long long positive = 0, zero = 0;
        for (const TransitionRecord* r : rows) {
            nupper.push_back(r->n * r->upper.to_double());
            if (r->zero_certified) ++zero;
            if (!r->certified) {
                ++s.hypothesis_failed;
                continue;
            }
            ncert.push_back(r->n * r->certified->to_double());
            if (r->certified->is_positive()) ++positive;
        }
        s.certified_positive_fraction = rows.empty() ? 0.0 : double(positive) / rows.size();
        s.zero_fraction = rows.empty() ? 0.0 : double(zero) / rows.size();
        if (!ncert.empty()) {
            s.n_certified_min = *std::min_element(ncert.begin(), ncert.end());
            s.n_certified_max = *std::max_element(ncert.begin(), ncert.end());
            s.n_certified_median = median(ncert);
        }
        if (!nupper.empty()) {
            s.n_upper_min = *std::min_element(nupper.begin(), nupper.end());
            s.n_upper_max = *std::max_element(nupper.begin(), nupper.end());
            s.n_upper_median = median(nupper);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string format_summary(const std::vector<TransitionSummary>& rows) {
    std::ostringstream out;
    char buf[256];
    for (const TransitionSummary& s : rows) {
        out << "n=" << s.n << " c=" << s.c << " mode=" << s.mode << " samples=" << s.samples
            << " hypothesis-failed=" << s.hypothesis_failed << '\n';
        std::snprintf(buf, sizeof buf, "certified-positive fraction %.2f, zero fraction %.2f\n",
                      s.certified_positive_fraction, s.zero_fraction);
        out << buf;
        std::snprintf(buf, sizeof buf, "n*certified min/median/max = %.6g/%.6g/%.6g\n",
                      s.n_certified_min, s.n_certified_median, s.n_certified_max);
        out << buf;
        std::snprintf(buf, sizeof buf, "n*upper min/median/max = %.6g/%.6g/%.6g\n", s.n_upper_min,
                      s.n_upper_median, s.n_upper_max);
        out << buf;
    }
    return out.str();
}

}  // namespace modq
