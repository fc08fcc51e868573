#pragma once

#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "algreach/change.hpp"
#include "algreach/oracles.hpp"
#include "algreach/smalldet.hpp"

namespace testutil {

// exact Newton interpolation over the rationals (test-only reference)
inline std::vector<algreach::BigRational> interpolate_exact(
    const std::vector<std::uint64_t>& xs, const std::vector<algreach::BigInt>& ys) {
    using algreach::BigInt;
    using algreach::BigRational;
    const std::size_t m = xs.size();
    std::vector<BigRational> dd(ys.begin(), ys.end());
    std::vector<BigRational> newton(m);
    newton[0] = dd[0];
    for (std::size_t l = 1; l < m; ++l) {
        for (std::size_t i = 0; i + l < m; ++i)
            dd[i] = (dd[i + 1] - dd[i]) / BigRational(BigInt(xs[i + l]) - BigInt(xs[i]));
        newton[l] = dd[0];
    }
    std::vector<BigRational> coeffs(m, 0);
    std::vector<BigRational> basis{1};  // expands prod_{i<j} (x - x_i)
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += newton[j] * basis[i];
        if (j + 1 < m) {  // basis *= (x - x_j)
            basis.insert(basis.begin(), 0);
            for (std::size_t i = 0; i + 1 < basis.size(); ++i)
                basis[i] -= BigRational(BigInt(xs[j])) * basis[i + 1];
        }
    }
    return coeffs;
}

inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

inline algreach::Graph random_graph(int n, double density, std::mt19937_64& rng,
                                    bool allow_self_loops = false) {
    algreach::Graph g{n, {}};
    for (int u = 1; u <= n; ++u) {
        for (int v = 1; v <= n; ++v) {
            if (u == v && !allow_self_loops) continue;
            if (std::uniform_real_distribution<double>(0, 1)(rng) < density) g.edges.insert({u, v});
        }
    }
    return g;
}

inline algreach::ModMatrix random_mod_matrix(int k, std::uint64_t p, std::mt19937_64& rng) {
    algreach::ModMatrix m(k, k, p);
    for (auto& v : m.entries) v = rng() % p;
    return m;
}

// all-pairs reachability by boolean matrix squaring (independent of BFS)
inline std::vector<std::vector<bool>> closure_by_squaring(const algreach::Graph& g) {
    const int n = g.n;
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) reach[i][i] = true;
    for (const algreach::Edge& e : g.edges) reach[e.from - 1][e.to - 1] = true;
    for (int doubling = 1; doubling < n; doubling *= 2) {
        std::vector<std::vector<bool>> next = reach;
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (reach[i][k])
                    for (int j = 0; j < n; ++j)
                        if (reach[k][j]) next[i][j] = true;
        reach = std::move(next);
    }
    return reach;
}

// Splits strict CSV: '\n' line endings only, no quoting, uniform field count.
// Returns rows of fields; throws on violations.
inline std::vector<std::vector<std::string>> parse_strict_csv(const std::string& text) {
    if (text.empty() || text.back() != '\n') throw std::runtime_error("csv must end with a newline");
    std::vector<std::vector<std::string>> rows;
    std::size_t field_count = 0;
    std::vector<std::string> row;
    std::string field;
    for (const char ch : text) {
        if (ch == '\r' || ch == '"') throw std::runtime_error("forbidden character in csv");
        if (ch == ',') {
            row.push_back(field);
            field.clear();
        } else if (ch == '\n') {
            row.push_back(field);
            field.clear();
            if (field_count == 0) field_count = row.size();
            if (row.size() != field_count) throw std::runtime_error("ragged csv row");
            rows.push_back(std::move(row));
            row.clear();
        } else {
            field.push_back(ch);
        }
    }
    return rows;
}

}  // namespace testutil
