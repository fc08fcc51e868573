#pragma once

#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "algreach/change.hpp"
#include "algreach/modmath.hpp"

namespace algreach {

// Brute-force references the engines are tested against. Exact unbounded
// arithmetic throughout; performance is irrelevant here.

using BigRational = boost::multiprecision::cpp_rational;
using IntMatrix = std::vector<std::vector<BigInt>>;
using RationalMatrix = std::vector<std::vector<BigRational>>;

/// Nodes reachable from s, including s itself.
std::set<NodeId> bfs_reach(const Graph& g, NodeId s);

/// Shortest-path lengths from s, indexed 1..n; nullopt means unreachable.
std::vector<std::optional<int>> bfs_dist(const Graph& g, NodeId s);

/// Number of directed walks of length exactly `len` from s to t.
BigInt walk_count_dp(const Graph& g, NodeId s, NodeId t, int len);

/// Determinant by fraction-free (Bareiss) elimination.
BigInt det_exact(IntMatrix m);

/// Exact inverse as reduced fractions, entry (i,j) = (-1)^{i+j} det(m_ji) / det(m),
/// minors by Bareiss. Throws std::domain_error on singular input. Entries of
/// nI - A_G inverses reach 2^{n^2} scale, so dimensions above `guard_dim`
/// are rejected unless the caller raises the guard.
RationalMatrix inverse_exact(const IntMatrix& m, int guard_dim = 8);

/// nI - A_G over the integers (the reach engine's system matrix).
IntMatrix reach_system_matrix_exact(const Graph& g);

}  // namespace algreach
