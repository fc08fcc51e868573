#include "algreach/dist_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "algreach/reach_engine.hpp"

namespace algreach {

std::size_t default_dist_prime_count(int n) {
    const double bits = n * std::log2(static_cast<double>(std::max(n, 2)));
    return static_cast<std::size_t>(std::ceil(bits / 61.0)) + 1;
}

namespace {

DistConfig resolve_config(int n, DistConfig cfg) {
    if (cfg.k <= 0) cfg.k = default_k(n);
    if (cfg.epoch_len <= 0) cfg.epoch_len = default_epoch_len(n);
    if (cfg.prime_count == 0) cfg.prime_count = default_dist_prime_count(n);
    return cfg;
}

// 2 * n^n, the walk-count ceiling
long long required_pool_bits(int n) {
    BigInt ceiling = 2;
    for (int i = 0; i < n; ++i) ceiling *= n;
    return static_cast<long long>(boost::multiprecision::msb(ceiling)) + 1;
}

}  // namespace

PrimePool make_dist_pool(int n, const DistConfig& cfg) {
    const DistConfig c = resolve_config(n, cfg);
    return random_prime_pool(c.prime_count, 62, c.seed);
}

SeriesMatrix truncated_resolvent(int n, const EdgeSet& edges, int bound, std::uint64_t p) {
    // adjacency mod p
    ModMatrix adj(n, n, p);
    for (const Edge& e : edges) adj.at(e.from - 1, e.to - 1) = add_mod(adj.at(e.from - 1, e.to - 1), 1 % p, p);

    SeriesMatrix out(n, n, bound, p);
    ModMatrix power = ModMatrix::identity(n, p);
    for (int i = 0; i <= bound; ++i) {
        if (i > 0) power = mat_mul(power, adj);
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < n; ++t) out.at(s, t).coeffs[i] = power.at(s, t);
    }
    return out;
}

DistState init_dist(int n, const EdgeSet& graph, PrimePool pool, DistConfig cfg) {
    if (n < 1) throw std::invalid_argument("init_dist: n must be positive");
    if (pool.empty()) throw std::invalid_argument("init_dist: empty prime pool");
    for (const Edge& e : graph) {
        if (e.from < 1 || e.from > n || e.to < 1 || e.to > n)
            throw std::invalid_argument("init_dist: edge endpoint out of range");
    }
    if (pool.valid_product_bits() <= required_pool_bits(n))
        throw std::domain_error("init_dist: pool product below the walk-count ceiling");

    DistState state;
    state.n = n;
    state.edges = graph;
    state.cfg = resolve_config(n, cfg);
    state.pool = std::move(pool);
    state.pool.reset_flags();
    state.series.reserve(state.pool.size());
    for (std::uint64_t p : state.pool.primes)
        state.series.push_back(truncated_resolvent(n, graph, n, p));
    state.step_count = 0;
    return state;
}

DistState init_dist(int n, const EdgeSet& graph, DistConfig cfg) {
    const DistConfig resolved = resolve_config(n, cfg);
    return init_dist(n, graph, make_dist_pool(n, resolved), resolved);
}

namespace {

// E = I_r + B V C U with B = x * core; the x factor keeps E normalized.
SeriesMatrix build_core_matrix(const SeriesMatrix& c, const UBVDecomposition& ubv) {
    const std::uint64_t p = c.modulus;
    const int bound = c.bound;
    const int r = ubv.row_count();
    const int cc = ubv.col_count();
    SeriesMatrix e = SeriesMatrix::identity(r, bound, p);
    for (int m = 0; m < r; ++m) {
        for (int m2 = 0; m2 < r; ++m2) {
            TruncatedSeries& dst = e.at(m, m2);
            for (int l = 0; l < cc; ++l) {
                const int b = ubv.core_at(m, l);
                if (b == 0) continue;
                const TruncatedSeries& src = c.at(ubv.col_nodes[l] - 1, ubv.row_nodes[m2] - 1);
                const std::uint64_t bm = b > 0 ? static_cast<std::uint64_t>(b) % p
                                               : p - static_cast<std::uint64_t>(-b) % p;
                // multiply by b*x: shift up one degree, drop the top term
                for (int d = 0; d + 1 <= bound; ++d)
                    dst.coeffs[d + 1] = add_mod(dst.coeffs[d + 1], mul_mod(bm, src.coeffs[d], p), p);
            }
        }
    }
    return e;
}

}  // namespace

void dist_smw_step(DistState& state, const ChangeBatch& batch) {
    if (batch.empty()) return;
    validate_batch(batch, state.n, state.edges, state.cfg.k, /*allow_self_loops=*/true);
    const UBVDecomposition ubv = decompose(negated_adjacency_delta(batch), state.cfg.k);
    const int n = state.n;
    const int r = ubv.row_count();
    const int cc = ubv.col_count();

    for (std::size_t pi = 0; pi < state.pool.size(); ++pi) {
        const std::uint64_t p = state.pool.primes[pi];
        SeriesMatrix& c = state.series[pi];

        SeriesMatrix e = build_core_matrix(c, ubv);
        if (!has_identity_constant_term(e))
            throw std::logic_error("dist_smw_step: core lost normalization");
        const SeriesMatrix einv = polymat_inverse_normalized(e);

        // B V C: rows of C picked by V, scaled by b*x
        SeriesMatrix bvc(r, n, n, p);
        for (int m = 0; m < r; ++m) {
            for (int l = 0; l < cc; ++l) {
                const int b = ubv.core_at(m, l);
                if (b == 0) continue;
                const std::uint64_t bm = b > 0 ? static_cast<std::uint64_t>(b) % p
                                               : p - static_cast<std::uint64_t>(-b) % p;
                for (int t = 0; t < n; ++t) {
                    const TruncatedSeries& src = c.at(ubv.col_nodes[l] - 1, t);
                    TruncatedSeries& dst = bvc.at(m, t);
                    for (int d = 0; d + 1 <= n; ++d)
                        dst.coeffs[d + 1] = add_mod(dst.coeffs[d + 1], mul_mod(bm, src.coeffs[d], p), p);
                }
            }
        }
        const SeriesMatrix correction = polymat_mul(einv, bvc);  // r x n

        // C <- C - (C U) correction
        SeriesMatrix cu(n, r, n, p);
        for (int s = 0; s < n; ++s)
            for (int m = 0; m < r; ++m) cu.at(s, m) = c.at(s, ubv.row_nodes[m] - 1);
        c = polymat_sub(c, polymat_mul(cu, correction));
    }

    apply_batch(state.edges, batch);
    ++state.step_count;
    if (state.step_count >= state.cfg.epoch_len) rebuild(state);
}

std::optional<int> distance(const DistState& state, NodeId s, NodeId t) {
    if (s < 1 || s > state.n || t < 1 || t > state.n)
        throw std::invalid_argument("distance: node out of range");
    for (int i = 0; i <= state.n; ++i) {
        for (std::size_t pi = 0; pi < state.pool.size(); ++pi) {
            if (state.series[pi].at(s - 1, t - 1).coeffs[i] != 0) return i;
        }
    }
    return std::nullopt;
}

Residue walk_count_mod(const DistState& state, NodeId s, NodeId t, int len, std::uint64_t p) {
    if (s < 1 || s > state.n || t < 1 || t > state.n)
        throw std::invalid_argument("walk_count_mod: node out of range");
    if (len < 0 || len > state.n) throw std::invalid_argument("walk_count_mod: length exceeds the truncation");
    for (std::size_t pi = 0; pi < state.pool.size(); ++pi) {
        if (state.pool.primes[pi] == p)
            return Residue{state.series[pi].at(s - 1, t - 1).coeffs[len], p};
    }
    throw std::invalid_argument("walk_count_mod: prime not in pool");
}

void rebuild(DistState& state) {
    state = init_dist(state.n, state.edges, make_dist_pool(state.n, state.cfg), state.cfg);
}

}  // namespace algreach
