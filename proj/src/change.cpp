#include "algreach/change.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace algreach {

std::vector<std::vector<NodeId>> adjacency_list(const Graph& g) {
    std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(g.n) + 1);
    for (const Edge& e : g.edges) adj[e.from].push_back(e.to);
    return adj;
}

namespace {

void check_node(NodeId v, int n) {
    if (v < 1 || v > n) throw std::invalid_argument("node index " + std::to_string(v) + " out of range");
}

}  // namespace

void validate_batch(const ChangeBatch& batch, int n, const EdgeSet& current, int k,
                    bool allow_self_loops) {
    std::set<NodeId> sources, targets;
    std::set<Edge> seen;
    auto check_edge = [&](const Edge& e, bool inserting) {
        check_node(e.from, n);
        check_node(e.to, n);
        if (!allow_self_loops && e.from == e.to)
            throw std::domain_error("self-loop rejected: (" + std::to_string(e.from) + ", " + std::to_string(e.to) + ")");
        if (!seen.insert(e).second)
            throw std::invalid_argument("edge appears twice in one batch");
        const bool present = current.contains(e);
        if (inserting && present) throw std::invalid_argument("insert of an edge already present");
        if (!inserting && !present) throw std::invalid_argument("delete of an edge not present");
        sources.insert(e.from);
        targets.insert(e.to);
    };
    for (const Edge& e : batch.inserts) check_edge(e, true);
    for (const Edge& e : batch.deletes) check_edge(e, false);
    if (static_cast<int>(sources.size()) > k || static_cast<int>(targets.size()) > k)
        throw std::invalid_argument("batch touches more than k sources or targets");
}

SparseDelta negated_adjacency_delta(const ChangeBatch& batch) {
    SparseDelta delta;
    for (const Edge& e : batch.inserts) delta[{e.from, e.to}] -= 1;
    for (const Edge& e : batch.deletes) delta[{e.from, e.to}] += 1;
    return delta;
}

std::vector<long long> UBVDecomposition::to_dense(int n) const {
    std::vector<long long> dense(static_cast<std::size_t>(n) * n, 0);
    for (int m = 0; m < row_count(); ++m) {
        for (int l = 0; l < col_count(); ++l) {
            dense[static_cast<std::size_t>(row_nodes[m] - 1) * n + (col_nodes[l] - 1)] = core_at(m, l);
        }
    }
    return dense;
}

UBVDecomposition decompose(const SparseDelta& delta, int k) {
    UBVDecomposition out;
    std::set<NodeId> rows, cols;
    for (const auto& [pos, v] : delta) {
        if (v == 0) continue;
        rows.insert(pos.first);
        cols.insert(pos.second);
    }
    if (static_cast<int>(rows.size()) > k || static_cast<int>(cols.size()) > k)
        throw std::domain_error("decompose: change exceeds the k row/column bound");
    out.row_nodes.assign(rows.begin(), rows.end());
    out.col_nodes.assign(cols.begin(), cols.end());
    out.core.assign(out.row_nodes.size() * out.col_nodes.size(), 0);
    for (const auto& [pos, v] : delta) {
        if (v == 0) continue;
        const auto m = std::lower_bound(out.row_nodes.begin(), out.row_nodes.end(), pos.first) - out.row_nodes.begin();
        const auto l = std::lower_bound(out.col_nodes.begin(), out.col_nodes.end(), pos.second) - out.col_nodes.begin();
        out.core[static_cast<std::size_t>(m) * out.col_nodes.size() + l] = v;
    }
    return out;
}

std::vector<ChangeBatch> batch_partition(const EdgeSet& inserts, const EdgeSet& deletes, int k) {
    if (k < 1) throw std::invalid_argument("batch_partition: k must be positive");
    // merge in ascending (from, to) order; an edge cannot be in both sets
    std::vector<std::pair<Edge, bool>> all;
    all.reserve(inserts.size() + deletes.size());
    for (const Edge& e : inserts) all.emplace_back(e, true);
    for (const Edge& e : deletes) all.emplace_back(e, false);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<ChangeBatch> batches;
    std::set<NodeId> sources, targets;
    ChangeBatch cur;
    auto flush = [&] {
        if (!cur.empty()) batches.push_back(std::move(cur));
        cur = ChangeBatch{};
        sources.clear();
        targets.clear();
    };
    for (const auto& [e, is_insert] : all) {
        const bool new_src = !sources.contains(e.from);
        const bool new_tgt = !targets.contains(e.to);
        if (static_cast<int>(sources.size()) + (new_src ? 1 : 0) > k ||
            static_cast<int>(targets.size()) + (new_tgt ? 1 : 0) > k) {
            flush();
        }
        sources.insert(e.from);
        targets.insert(e.to);
        (is_insert ? cur.inserts : cur.deletes).push_back(e);
    }
    flush();
    return batches;
}

void apply_batch(EdgeSet& edges, const ChangeBatch& batch) {
    for (const Edge& e : batch.inserts) edges.insert(e);
    for (const Edge& e : batch.deletes) edges.erase(e);
}

}  // namespace algreach
