#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modq/graph.hpp"
#include "modq/modularity.hpp"
#include "modq/random_graph.hpp"
#include "modq/rational.hpp"

namespace modq {

// 2-core of a graph: what remains after repeatedly peeling degree<=1 vertices.
struct CoreInfo {
    VertexSet core_vertices;
    long long core_edges = 0;
    long long excess = 0;  // core edges - core vertices, 0 when empty
    int components = 0;    // components of the core

    CoreInfo() : core_vertices(0) {}
};
CoreInfo two_core(const Graph& g);

// Splits an oversized forest: repeatedly walk from a leaf of a too-big tree
// towards shrinking far sides and delete all edges at the first vertex whose
// remaining branches are all small enough. Removes fewer than d/rho edges and
// leaves every component with at most rho*n vertices.
struct SplitResult {
    std::vector<std::pair<int, int>> removed_edges;
    int max_degree_observed = 0;
};
SplitResult split_forest(const Graph& forest, const Rational& rho);

// Balanced bipartition of a sparse graph losing few edges: reduce to a
// spanning forest (excess + components edges), split oversized trees, then
// 2-color the small trees and greedily balance, topping up with isolated
// vertices. Requires at least rho*n - 1 isolated vertices.
struct SparseBipartition {
    Bipartition bipartition;
    long long edges_sacrificed = 0;   // e(G) - e(A,B)
    long long nontree_removed = 0;    // step 1
    long long split_removed = 0;      // step 2
    int max_degree_observed = 0;
};
SparseBipartition balanced_bipartition_sparse(const Graph& g, const Rational& rho);

// Unique x in (0,1] with x e^-x = c e^-c, for c >= 1; bisection to 1e-12 residual.
double x_of_c(double c);
// (1/2c)((c-1)(2-c) + 2(x-1)^2) for 1 < c <= 2; strictly positive there.
double delta_of_c(double c);

// Exact modularity breakdown of a bipartition on the *complement* of g,
// computed from g's statistics alone (the dense side is never materialized).
ScoreBreakdown complement_score(const Graph& g, const Bipartition& b);

enum class TransitionModel { Gnp, Gnm };

struct TransitionConfig {
    int n = 0;
    Rational c;  // complement density parameter: Gnp uses p = 1 - c/n, Gnm uses
                 // m = C(n,2) - ceil(c n / 2)
    TransitionModel model = TransitionModel::Gnp;
    std::vector<uint64_t> seeds;
    std::optional<Rational> rho;  // default ceil(n^(2/3)) / n
};

struct TransitionRecord {
    int n = 0;
    Rational c;
    TransitionModel model = TransitionModel::Gnp;
    uint64_t seed = 0;
    long long complement_edges = 0;
    long long core_excess = 0;
    int core_components = 0;
    Rational rho;
    long long edges_removed = 0;  // split_forest removals
    long long cut_edges = 0;      // complement edges crossing the bipartition
    std::optional<Rational> certified;  // nullopt: isolated-vertex hypothesis failed
    Rational upper;                     // near-complete bound on the dense graph
    long long missing_edges = 0;        // = complement_edges
    bool zero_certified = false;        // missing <= n/2 forces q* = 0 exactly
};

// One record per seed; seeds run as independent parallel jobs and the result
// order matches the seed list.
std::vector<TransitionRecord> transition_experiment(const TransitionConfig& config);

extern const char* const kTransitionCsvHeader;
void write_transition_csv(std::ostream& out, const std::vector<TransitionRecord>& records);
std::string transition_csv(const std::vector<TransitionRecord>& records);
std::vector<TransitionRecord> parse_transition_csv(std::string_view text);

struct TransitionSummary {
    int n = 0;
    std::string c;
    std::string mode;
    long long samples = 0;
    long long hypothesis_failed = 0;
    double certified_positive_fraction = 0.0;
    double zero_fraction = 0.0;
    double n_certified_min = 0.0, n_certified_median = 0.0, n_certified_max = 0.0;
    double n_upper_min = 0.0, n_upper_median = 0.0, n_upper_max = 0.0;
};
std::vector<TransitionSummary> summarize_records(const std::vector<TransitionRecord>& records);
std::string format_summary(const std::vector<TransitionSummary>& rows);

Rational default_rho(int n);

}  // namespace modq
