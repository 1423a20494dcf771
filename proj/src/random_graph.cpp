#include "modq/random_graph.hpp"

#include <cmath>
#include <unordered_set>

#include <algorithm>

namespace modq {

uint64_t next_below(std::mt19937_64& rng, uint64_t bound) {
    // rejection below the largest multiple of bound
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

namespace {

void check_seed(const RngSeed& seed) {
    if (seed.generator != "mt19937_64")
        throw std::invalid_argument("unknown generator: " + seed.generator);
}

double unit_open(std::mt19937_64& rng) {
    // (0,1]: 53 uniform bits, zero mapped to 1
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u == 0.0 ? 1.0 : u;
}

long long pair_count(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

// sequential slot -> (u,v) decoding while jumping forward
struct PairCursor {
    int n;
    int u = 0;
    long long row_start = 0;  // slot index of (u, u+1)

    std::pair<int, int> at(long long slot) {
        while (slot >= row_start + (n - 1 - u)) {
            row_start += n - 1 - u;
            ++u;
        }
        return {u, static_cast<int>(u + 1 + (slot - row_start))};
    }
};

}  // namespace

std::vector<std::pair<int, int>> sample_pairs_bernoulli(int n, const Rational& rate,
                                                        std::mt19937_64& rng) {
    if (rate.sign() < 0 || rate > Rational(1, 1))
        throw std::invalid_argument("rate out of [0,1]");
    const long long total = pair_count(n);
    std::vector<std::pair<int, int>> out;
    if (rate.is_zero() || total == 0) return out;
    if (rate == Rational(1, 1)) {
        PairCursor cur{n};
        for (long long s = 0; s < total; ++s) out.push_back(cur.at(s));
        return out;
    }
    const double q = rate.to_double();
    PairCursor cur{n};
    if (q < 1.0 / 64) {
        // geometric jumps between successes
        const double log_miss = std::log1p(-q);
        long long slot = -1;
        for (;;) {
            double skip = std::floor(std::log(unit_open(rng)) / log_miss);
            if (skip >= static_cast<double>(total)) break;
            slot += static_cast<long long>(skip) + 1;
            if (slot >= total) break;
            out.push_back(cur.at(slot));
        }
        return out;
    }
    // exact per-slot Bernoulli(num/den)
    if (rate.den() > static_cast<Int128>(UINT64_MAX))
        throw std::invalid_argument("rate denominator too large");
    const uint64_t den = static_cast<uint64_t>(rate.den());
    const uint64_t num = static_cast<uint64_t>(rate.num());
    for (long long s = 0; s < total; ++s)
        if (next_below(rng, den) < num) out.push_back(cur.at(s));
    return out;
}

std::vector<std::pair<int, int>> sample_pairs_uniform(int n, long long k, std::mt19937_64& rng) {
    const long long total = pair_count(n);
    if (k < 0 || k > total) throw std::invalid_argument("subset size out of range");
    // Floyd's uniform k-subset of [0, total)
    std::unordered_set<long long> chosen;
    chosen.reserve(static_cast<size_t>(k) * 2 + 1);
    for (long long j = total - k; j < total; ++j) {
        long long t = static_cast<long long>(next_below(rng, static_cast<uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<long long> slots(chosen.begin(), chosen.end());
    std::sort(slots.begin(), slots.end());
    std::vector<std::pair<int, int>> out;
    out.reserve(slots.size());
    PairCursor cur{n};
    for (long long s : slots) out.push_back(cur.at(s));
    return out;
}

Graph sample_gnp(int n, const Rational& p, const RngSeed& seed) {
    check_seed(seed);
    if (p.sign() < 0 || p > Rational(1, 1)) throw std::invalid_argument("p out of [0,1]");
    std::mt19937_64 rng(seed.value);
    if (p > Rational(1, 2)) {
        Rational q = Rational(1, 1) - p;
        Graph sparse = Graph::from_edges(n, sample_pairs_bernoulli(n, q, rng));
        return complement(sparse);
    }
    return Graph::from_edges(n, sample_pairs_bernoulli(n, p, rng));
}

Graph sample_gnm(int n, long long m, const RngSeed& seed) {
    check_seed(seed);
    const long long total = pair_count(n);
    if (m < 0 || m > total) throw std::invalid_argument("m out of range");
    std::mt19937_64 rng(seed.value);
    if (2 * m > total) {
        Graph sparse = Graph::from_edges(n, sample_pairs_uniform(n, total - m, rng));
        return complement(sparse);
    }
    return Graph::from_edges(n, sample_pairs_uniform(n, m, rng));
}

}  // namespace modq
