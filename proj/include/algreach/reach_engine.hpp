#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algreach/change.hpp"
#include "algreach/modmath.hpp"
#include "algreach/smalldet.hpp"

namespace algreach {

// Maintains reachability by keeping (nI - A_G)^{-1} modulo every valid pool
// prime and applying Sherman-Morrison-Woodbury corrections per change batch.
//
// Updates follow a single-writer, multiple-reader contract: queries may run
// concurrently with each other but not with an in-flight step.

enum class PrimeMode { Random, Deterministic };

struct ReachConfig {
    int k = 0;                   // 0: ceil(log2 n / log2 log2 n), at least 1
    int epoch_len = 0;           // 0: ceil((log2 n)^2), at least 1
    int rebuild_threshold = -1;  // -1: half the pool
    PrimeMode prime_mode = PrimeMode::Random;
    std::size_t prime_count = 8;  // random mode pool size
    std::uint64_t seed = 1;
    DetRoutine core_det = DetRoutine::Elimination;
};

int default_k(int n);
int default_epoch_len(int n);

/// Deterministic-mode pool size: the m smallest primes whose product exceeds
/// 2^{n^2+1}, plus n^2 * (epoch_len + 1) expendable ones (at most n^2 primes
/// can be invalidated at init and per step).
std::size_t deterministic_pool_size(int n, int epoch_len);

/// Pool as a pure function of (n, config); rebuild regenerates it identically.
PrimePool make_reach_pool(int n, const ReachConfig& cfg);

struct ReachState {
    int n = 0;
    EdgeSet edges;
    ReachConfig cfg;  // fully resolved
    PrimePool pool;
    std::vector<ModMatrix> inv;  // per pool prime; meaningful where valid
    int step_count = 0;
};

struct ReachStepStats {
    int invalidated = 0;
    bool rebuilt = false;
};

/// nI - A_G reduced mod p.
ModMatrix reach_system_matrix(int n, const EdgeSet& edges, std::uint64_t p);

ReachState init_reach(int n, const EdgeSet& graph, PrimePool pool, ReachConfig cfg = {});
ReachState init_reach(int n, const EdgeSet& graph, ReachConfig cfg = {});

/// One SMW correction of a single per-prime inverse; empty optional when the
/// core matrix E = I + BVA^{-1}U is singular mod p (the prime must then be
/// invalidated).
std::optional<ModMatrix> smw_apply(const ModMatrix& inv, const UBVDecomposition& ubv,
                                   DetRoutine routine);

/// Applies one batch: decomposes -dA_G, updates every valid prime's inverse,
/// invalidates primes whose core went singular, and triggers a rebuild when
/// the epoch ends or the valid count drops below the threshold.
ReachStepStats smw_step(ReachState& state, const ChangeBatch& batch);

/// True iff inv[p] entry (s,t) is nonzero mod some valid prime.
bool reachable(const ReachState& state, NodeId s, NodeId t);

/// Recomputes the state from the current edge set with a fresh pool; queries
/// before and after agree.
void rebuild(ReachState& state);

}  // namespace algreach
