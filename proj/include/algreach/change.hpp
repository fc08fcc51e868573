#pragma once

#include <compare>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace algreach {

using NodeId = int;  // 1-based

struct Edge {
    NodeId from = 0;
    NodeId to = 0;

    auto operator<=>(const Edge&) const = default;
};

using EdgeSet = std::set<Edge>;

struct Graph {
    int n = 0;
    EdgeSet edges;
};

/// Out-neighbour lists indexed 1..n.
std::vector<std::vector<NodeId>> adjacency_list(const Graph& g);

// One application of edge insertions/deletions touching at most k source
// nodes and at most k target nodes.
struct ChangeBatch {
    std::vector<Edge> inserts;
    std::vector<Edge> deletes;

    bool empty() const { return inserts.empty() && deletes.empty(); }
};

/// Checks node range, insert/delete disjointness, presence/absence against
/// the current edge set, the k source/target bound, and (optionally) the
/// absence of self-loops. Throws std::invalid_argument / std::domain_error.
void validate_batch(const ChangeBatch& batch, int n, const EdgeSet& current, int k,
                    bool allow_self_loops);

/// Sparse n x n change matrix: (row, col) -> value.
using SparseDelta = std::map<std::pair<NodeId, NodeId>, int>;

/// -dA_G for the batch: inserted edge -> -1, deleted edge -> +1. This is the
/// change to nI - A_G (reach) and, scaled by x, to I - xA_G (dist/quotient).
SparseDelta negated_adjacency_delta(const ChangeBatch& batch);

// Factorization delta = U * B * V where U (n x r) selects the nonzero rows,
// V (c x n) selects the nonzero columns, and B (r x c) is delta with all-zero
// rows and columns removed. U and V are kept as index lists since their
// rows/columns are unit vectors.
struct UBVDecomposition {
    std::vector<NodeId> row_nodes;  // ascending, size r
    std::vector<NodeId> col_nodes;  // ascending, size c
    std::vector<int> core;          // r x c row-major

    int row_count() const { return static_cast<int>(row_nodes.size()); }
    int col_count() const { return static_cast<int>(col_nodes.size()); }
    int core_at(int m, int l) const { return core[static_cast<std::size_t>(m) * col_nodes.size() + l]; }
    bool empty() const { return row_nodes.empty(); }

    /// Dense n x n reconstruction of U * B * V (signed entries).
    std::vector<long long> to_dense(int n) const;
};

/// Throws std::domain_error when delta has more than k nonzero rows or
/// columns (the caller must batch-partition first).
UBVDecomposition decompose(const SparseDelta& delta, int k);

/// Greedily packs the change into batches of at most k distinct sources and
/// k distinct targets, scanning edges in ascending node order. Batches cover
/// the change exactly once and may be applied in list order.
std::vector<ChangeBatch> batch_partition(const EdgeSet& inserts, const EdgeSet& deletes, int k);

/// Applies inserts/deletes without validation (used by oracles and tests).
void apply_batch(EdgeSet& edges, const ChangeBatch& batch);

}  // namespace algreach
