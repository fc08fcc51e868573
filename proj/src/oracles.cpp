#include "algreach/oracles.hpp"

#include <deque>
#include <stdexcept>

namespace algreach {

namespace {

void check_node(NodeId v, int n) {
    if (v < 1 || v > n) throw std::invalid_argument("node index out of range");
}

}  // namespace

std::set<NodeId> bfs_reach(const Graph& g, NodeId s) {
    check_node(s, g.n);
    const auto adj = adjacency_list(g);
    std::set<NodeId> seen{s};
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (NodeId v : adj[u]) {
            if (seen.insert(v).second) queue.push_back(v);
        }
    }
    return seen;
}

std::vector<std::optional<int>> bfs_dist(const Graph& g, NodeId s) {
    check_node(s, g.n);
    const auto adj = adjacency_list(g);
    std::vector<std::optional<int>> dist(static_cast<std::size_t>(g.n) + 1);
    dist[s] = 0;
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        for (NodeId v : adj[u]) {
            if (!dist[v]) {
                dist[v] = *dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

BigInt walk_count_dp(const Graph& g, NodeId s, NodeId t, int len) {
    check_node(s, g.n);
    check_node(t, g.n);
    if (len < 0) throw std::invalid_argument("walk length must be nonnegative");
    const auto adj = adjacency_list(g);
    // counts[v] = number of walks of the current length from s to v
    std::vector<BigInt> counts(static_cast<std::size_t>(g.n) + 1, 0);
    counts[s] = 1;
    for (int step = 0; step < len; ++step) {
        std::vector<BigInt> next(static_cast<std::size_t>(g.n) + 1, 0);
        for (NodeId u = 1; u <= g.n; ++u) {
            if (counts[u] == 0) continue;
            for (NodeId v : adj[u]) next[v] += counts[u];
        }
        counts = std::move(next);
    }
    return counts[t];
}

BigInt det_exact(IntMatrix m) {
    const int k = static_cast<int>(m.size());
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != k) throw std::invalid_argument("det_exact: matrix not square");
    if (k == 0) return 1;
    bool negate = false;
    BigInt prev = 1;
    for (int col = 0; col < k - 1; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            negate = !negate;
        }
        for (int r = col + 1; r < k; ++r) {
            for (int j = col + 1; j < k; ++j) {
                m[r][j] = (m[r][j] * m[col][col] - m[r][col] * m[col][j]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[col][col];
    }
    return negate ? BigInt(-m[k - 1][k - 1]) : m[k - 1][k - 1];
}

RationalMatrix inverse_exact(const IntMatrix& m, int guard_dim) {
    const int k = static_cast<int>(m.size());
    if (k > guard_dim) throw std::domain_error("inverse_exact: dimension above the oracle guard");
    const BigInt det = det_exact(m);
    if (det == 0) throw std::domain_error("inverse_exact: singular matrix");
    const bool flip = det < 0;  // cpp_rational wants a positive denominator
    const BigInt den = flip ? BigInt(-det) : det;
    RationalMatrix out(k, std::vector<BigRational>(k));
    if (k == 1) {
        out[0][0] = BigRational(flip ? -1 : 1, den);
        return out;
    }
    IntMatrix minor(k - 1, std::vector<BigInt>(k - 1));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            int mi = 0;
            for (int r = 0; r < k; ++r) {
                if (r == j) continue;
                int mj = 0;
                for (int c = 0; c < k; ++c) {
                    if (c == i) continue;
                    minor[mi][mj++] = m[r][c];
                }
                ++mi;
            }
            BigInt cof = det_exact(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            if (flip) cof = -cof;
            out[i][j] = BigRational(cof, den);
        }
    }
    return out;
}

IntMatrix reach_system_matrix_exact(const Graph& g) {
    IntMatrix m(g.n, std::vector<BigInt>(g.n, 0));
    for (int i = 0; i < g.n; ++i) m[i][i] = g.n;
    for (const Edge& e : g.edges) m[e.from - 1][e.to - 1] -= 1;
    return m;
}

}  // namespace algreach
