#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "modq/graph.hpp"
#include "modq/rational.hpp"

namespace modq {

// Identical seed + parameters reproduce the sample exactly: the engine is the
// fully specified mt19937_64 and all bounded draws are derived in-house from
// its raw output (library distributions are implementation-defined).
struct RngSeed {
    uint64_t value = 0;
    std::string generator = "mt19937_64";
};

// Uniform draw in [0, bound) by rejection; bound >= 1.
uint64_t next_below(std::mt19937_64& rng, uint64_t bound);

// G(n,p), p exact rational. Dense p samples the complement at rate 1-p and
// complements, so the work is O(n + (1-p) n^2) expected.
Graph sample_gnp(int n, const Rational& p, const RngSeed& seed);

// G(n,m), uniform over m-edge graphs; dense m samples the complement slots.
Graph sample_gnm(int n, long long m, const RngSeed& seed);

// Building blocks, also used by the transition harness to sample the sparse
// complement without materializing the dense graph.
std::vector<std::pair<int, int>> sample_pairs_bernoulli(int n, const Rational& rate,
                                                        std::mt19937_64& rng);
std::vector<std::pair<int, int>> sample_pairs_uniform(int n, long long k, std::mt19937_64& rng);

}  // namespace modq
