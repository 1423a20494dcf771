#pragma once

#include <optional>
#include <vector>

#include "modq/graph.hpp"
#include "modq/rational.hpp"

namespace modq {

// Default enumeration caps; callers may raise them explicitly, and going
// past a cap is an error rather than an approximation.
inline constexpr int kDefaultSubsetCap = 26;  // 2^(n-1)-1 bipartition scan
inline constexpr int kDefaultPartitionCap = 12;  // Bell(12) ~ 4.2e6 partitions

struct ScoreBreakdown {
    Rational coverage;    // fraction of edges internal to parts
    Rational degree_tax;  // sum over parts of (vol/2m)^2
    Rational score;       // coverage - degree_tax
};

// Exact modularity score of a partition. Empty graphs score 0 for every
// partition by convention.
ScoreBreakdown modularity_score(const Graph& g, const std::vector<VertexSet>& partition);
ScoreBreakdown modularity_score(const Graph& g, const Bipartition& b);

// p(U) = 2 e(U) vol(G) - vol(U)^2 = vol(U) vol(~U) - e(U,~U) vol(G).
// Both forms are evaluated and must agree; U must be a proper nonempty subset.
Int128 p_value(const Graph& g, const VertexSet& u);

struct PositivityWitness {
    enum class Verdict { Positive, Zero };
    Verdict verdict;
    std::optional<VertexSet> witness_set;  // present iff Positive
    std::optional<long long> p;            // p(witness_set) > 0

    bool positive() const { return verdict == Verdict::Positive; }
};

// Decides q*(g) > 0 by scanning all 2^(n-1)-1 proper subsets with vertex 0
// pinned outside (p(U) = p(~U) makes that lossless), walking a Gray code with
// O(1) incremental volume/cut updates. Returns the witness with the lowest
// Gray-code index, or Zero after exhaustion.
PositivityWitness has_positive_modularity(const Graph& g, int cap = kDefaultSubsetCap);

struct ExactModularity {
    Rational value;
    std::vector<std::vector<int>> argmax_partition;
};

// Exact q*(g) by enumerating all set partitions (restricted-growth order).
ExactModularity exact_modularity(const Graph& g, int cap = kDefaultPartitionCap);

// q*(g) <= 2 (C(n,2) - n/2 - m)^+ / m, exact.
Rational near_complete_upper_bound(const Graph& g);

}  // namespace modq
