#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algreach/change.hpp"
#include "algreach/modmath.hpp"
#include "algreach/series.hpp"

namespace algreach {

// Maintains the degree-n truncation of (I - xA_G)^{-1} per pool prime; the
// i-th coefficient of entry (s,t) counts directed walks of length i, so the
// distance is the smallest index with a nonzero coefficient. The truncated
// SMW rule never invalidates a prime (the core stays normalized because the
// change matrix carries a factor x). Single-writer, multiple-reader.

struct DistConfig {
    int k = 0;                    // 0: ceil(log2 n / log2 log2 n)
    int epoch_len = 0;            // 0: ceil((log2 n)^2)
    std::size_t prime_count = 0;  // 0: ceil(n log2 n / 61) + 1
    std::uint64_t seed = 1;
};

std::size_t default_dist_prime_count(int n);
PrimePool make_dist_pool(int n, const DistConfig& cfg);

struct DistState {
    int n = 0;
    EdgeSet edges;
    DistConfig cfg;
    PrimePool pool;                    // primes stay valid for good here
    std::vector<SeriesMatrix> series;  // per prime, n x n, degree bound n
    int step_count = 0;
};

/// Truncation of sum_{i<=bound} (xA_G)^i mod p; coefficient i of entry (s,t)
/// is the length-i walk count.
SeriesMatrix truncated_resolvent(int n, const EdgeSet& edges, int bound, std::uint64_t p);

/// Requires the pool product to exceed 2*n^n so that a nonzero walk count of
/// length <= n survives modulo some prime; throws on an undersized pool.
DistState init_dist(int n, const EdgeSet& graph, PrimePool pool, DistConfig cfg = {});
DistState init_dist(int n, const EdgeSet& graph, DistConfig cfg = {});

void dist_smw_step(DistState& state, const ChangeBatch& batch);

/// Smallest i <= n whose coefficient at entry (s,t) is nonzero mod some pool
/// prime; empty when every coefficient vanishes (unreachable).
std::optional<int> distance(const DistState& state, NodeId s, NodeId t);

/// Coefficient i of entry (s,t) of the maintained truncation mod p.
Residue walk_count_mod(const DistState& state, NodeId s, NodeId t, int len, std::uint64_t p);

void rebuild(DistState& state);

}  // namespace algreach
