#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modq/graph.hpp"
#include "modq/modularity.hpp"

namespace modq {

enum class EditMode { RemoveOnly, AddOnly, Both };

struct Edit {
    int u = 0;
    int v = 0;
    bool add = false;  // false = remove

    bool operator==(const Edit& o) const { return u == o.u && v == o.v && add == o.add; }
};

std::string serialize_edits(const std::vector<Edit>& edits);  // "+u v" / "-u v" lines
Graph apply_edits(const Graph& g, const std::vector<Edit>& edits);

struct EditSearchResult {
    std::optional<int> distance;  // nullopt: no edit set within budget works
    int budget = 0;
    std::vector<Edit> witness_edits;
    std::optional<Bipartition> witness;
    std::optional<ScoreBreakdown> witness_score;

    bool found() const { return distance.has_value(); }
};

struct EditSearchOptions {
    int subset_cap = kDefaultSubsetCap;
    // When set, the graph must equal complete_multipartite(*orbit_parts) and
    // level-1 candidates are deduplicated to one representative per orbit of
    // the part-structure symmetries. Results are bit-identical to the full
    // scan; deeper levels always enumerate fully.
    std::optional<std::vector<int>> orbit_parts;
};

// Minimum number of edits (per mode) reaching positive modularity, by
// iterative deepening so the returned distance is exactly minimal. Edit sets
// are enumerated in lexicographic order over canonical (u,v) pairs and the
// first success is returned with its positivity witness.
EditSearchResult edit_distance_to_positive(const Graph& g, EditMode mode, int budget,
                                           const EditSearchOptions& options = {});

// floor(n/2) + 1 edge removals take K_n to positive modularity; n <= 3 never gets there.
int predicted_delta_complete(int n);

// (delta-, delta+, delta) for K_{s,t}; nullopt encodes "impossible".
struct BipartiteDeltas {
    std::optional<int> remove;
    std::optional<int> add;
    std::optional<int> edit;
};
BipartiteDeltas predicted_deltas_bipartite(int s, int t);

// Smallest positive solution of a't - b's = 1 with 1 <= a' <= s-1, 1 <= b' <= t-1.
struct DiophantinePair {
    long long a_prime = 0;
    long long b_prime = 0;
};
DiophantinePair diophantine_pair(long long s, long long t);

// A constructive certificate: the edited graph, the edits that produced it,
// and a bipartition scoring strictly positive on it.
struct WitnessConstruction {
    Graph graph;
    std::vector<Edit> edits;
    Bipartition partition;
    ScoreBreakdown score;
};

WitnessConstruction kn_minus_witness(int n);
WitnessConstruction bipartite_removal_witness(int s, int t);
// nullopt for the families where additions can never help: (1,1),(1,2),(1,3),(2,2).
std::optional<WitnessConstruction> bipartite_addition_witness(int s, int t);
WitnessConstruction multipartite_removal_witness(const std::vector<int>& part_sizes, int ell);

}  // namespace modq
