#include "algreach/reach_engine.hpp"

#include <cmath>
#include <stdexcept>

namespace algreach {

int default_k(int n) {
    if (n < 3) return 1;
    const double l = std::log2(static_cast<double>(n));
    const double ll = std::log2(l);
    if (ll <= 0) return 1;
    const int k = static_cast<int>(std::ceil(l / ll));
    return std::max(1, std::min(k, n));
}

int default_epoch_len(int n) {
    const double l = std::log2(static_cast<double>(std::max(n, 2)));
    return std::max(1, static_cast<int>(std::ceil(l * l)));
}

std::size_t deterministic_pool_size(int n, int epoch_len) {
    const BigInt ceiling = BigInt(1) << (static_cast<unsigned>(n) * n + 1);
    BigInt product = 1;
    std::size_t m = 0;
    std::uint64_t p = 1;
    while (product <= ceiling) {
        p = next_prime(p + 1);
        product *= p;
        ++m;
    }
    return m + static_cast<std::size_t>(n) * n * (epoch_len + 1);
}

namespace {

ReachConfig resolve_config(int n, ReachConfig cfg) {
    if (cfg.k <= 0) cfg.k = default_k(n);
    if (cfg.epoch_len <= 0) cfg.epoch_len = default_epoch_len(n);
    if (cfg.prime_count == 0) cfg.prime_count = 8;
    return cfg;
}

}  // namespace

PrimePool make_reach_pool(int n, const ReachConfig& cfg) {
    const ReachConfig c = resolve_config(n, cfg);
    if (c.prime_mode == PrimeMode::Deterministic)
        return gen_primes(deterministic_pool_size(n, c.epoch_len), 2);
    return random_prime_pool(c.prime_count, 62, c.seed);
}

ModMatrix reach_system_matrix(int n, const EdgeSet& edges, std::uint64_t p) {
    ModMatrix a(n, n, p);
    const std::uint64_t diag = static_cast<std::uint64_t>(n) % p;
    for (int i = 0; i < n; ++i) a.at(i, i) = diag;
    for (const Edge& e : edges) {
        a.at(e.from - 1, e.to - 1) = sub_mod(a.at(e.from - 1, e.to - 1), 1 % p, p);
    }
    return a;
}

ReachState init_reach(int n, const EdgeSet& graph, PrimePool pool, ReachConfig cfg) {
    if (n < 1) throw std::invalid_argument("init_reach: n must be positive");
    if (pool.empty()) throw std::invalid_argument("init_reach: empty prime pool");
    for (const Edge& e : graph) {
        if (e.from < 1 || e.from > n || e.to < 1 || e.to > n)
            throw std::invalid_argument("init_reach: edge endpoint out of range");
        if (e.from == e.to) throw std::domain_error("init_reach: self-loop rejected");
    }
    ReachState state;
    state.n = n;
    state.edges = graph;
    state.cfg = resolve_config(n, cfg);
    if (state.cfg.rebuild_threshold < 0)
        state.cfg.rebuild_threshold = static_cast<int>(pool.size() / 2);
    state.pool = std::move(pool);
    state.pool.reset_flags();
    state.inv.assign(state.pool.size(), ModMatrix{});
    for (std::size_t i = 0; i < state.pool.size(); ++i) {
        auto inv = invert_elimination(reach_system_matrix(n, graph, state.pool.primes[i]));
        if (inv) {
            state.inv[i] = std::move(*inv);
        } else {
            state.pool.invalidate(i);  // invalid at birth
        }
    }
    state.step_count = 0;
    return state;
}

ReachState init_reach(int n, const EdgeSet& graph, ReachConfig cfg) {
    const ReachConfig resolved = resolve_config(n, cfg);
    return init_reach(n, graph, make_reach_pool(n, resolved), resolved);
}

namespace {

std::uint64_t signed_mod(int v, std::uint64_t p) {
    const long long r = static_cast<long long>(v) % static_cast<long long>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
}

}  // namespace

std::optional<ModMatrix> smw_apply(const ModMatrix& inv, const UBVDecomposition& ubv,
                                   DetRoutine routine) {
    if (ubv.empty()) return inv;
    const std::uint64_t p = inv.modulus;
    const int n = inv.rows;
    const int r = ubv.row_count();
    const int c = ubv.col_count();

    ModMatrix core(r, c, p);
    for (int m = 0; m < r; ++m)
        for (int l = 0; l < c; ++l) core.at(m, l) = signed_mod(ubv.core_at(m, l), p);

    // E = I_r + B (V A^{-1} U); V picks rows, U picks columns
    ModMatrix vau(c, r, p);
    for (int l = 0; l < c; ++l)
        for (int m = 0; m < r; ++m) vau.at(l, m) = inv.at(ubv.col_nodes[l] - 1, ubv.row_nodes[m] - 1);
    ModMatrix e = mat_add(ModMatrix::identity(r, p), mat_mul(core, vau));

    SelfReducibleGuard guard;
    DetRoutine effective = routine;
    if (routine == DetRoutine::SelfReducible && (p > guard.max_modulus || r > guard.max_dim))
        effective = DetRoutine::Elimination;  // guard exceeded: fall back

    const std::uint64_t det = det_by(e, effective).value;
    if (det == 0) return std::nullopt;
    ModMatrix einv = cofactor_adjugate(e, effective);
    const std::uint64_t dinv = inv_mod(det, p);
    for (std::uint64_t& v : einv.entries) v = mul_mod(v, dinv, p);

    // B V A^{-1}: rows of the inverse picked by V, multiplied by the core
    ModMatrix bva(r, n, p);
    for (int m = 0; m < r; ++m) {
        for (int l = 0; l < c; ++l) {
            const std::uint64_t b = core.at(m, l);
            if (b == 0) continue;
            const int row = ubv.col_nodes[l] - 1;
            for (int t = 0; t < n; ++t)
                bva.at(m, t) = add_mod(bva.at(m, t), mul_mod(b, inv.at(row, t), p), p);
        }
    }
    const ModMatrix correction = mat_mul(einv, bva);  // r x n

    ModMatrix out = inv;
    for (int s = 0; s < n; ++s) {
        for (int m = 0; m < r; ++m) {
            const std::uint64_t au = inv.at(s, ubv.row_nodes[m] - 1);
            if (au == 0) continue;
            for (int t = 0; t < n; ++t)
                out.at(s, t) = sub_mod(out.at(s, t), mul_mod(au, correction.at(m, t), p), p);
        }
    }
    return out;
}

ReachStepStats smw_step(ReachState& state, const ChangeBatch& batch) {
    ReachStepStats stats;
    if (batch.empty()) return stats;
    validate_batch(batch, state.n, state.edges, state.cfg.k, /*allow_self_loops=*/false);

    const UBVDecomposition ubv = decompose(negated_adjacency_delta(batch), state.cfg.k);
    for (std::size_t i = 0; i < state.pool.size(); ++i) {
        if (!state.pool.is_valid(i)) continue;
        auto updated = smw_apply(state.inv[i], ubv, state.cfg.core_det);
        if (updated) {
            state.inv[i] = std::move(*updated);
        } else {
            state.pool.invalidate(i);
            ++stats.invalidated;
        }
    }
    apply_batch(state.edges, batch);
    ++state.step_count;

    const std::size_t valid = state.pool.valid_count();
    if (state.step_count >= state.cfg.epoch_len ||
        static_cast<int>(valid) < state.cfg.rebuild_threshold || valid == 0) {
        rebuild(state);
        stats.rebuilt = true;
    }
    return stats;
}

bool reachable(const ReachState& state, NodeId s, NodeId t) {
    if (s < 1 || s > state.n || t < 1 || t > state.n)
        throw std::invalid_argument("reachable: node out of range");
    for (std::size_t i = 0; i < state.pool.size(); ++i) {
        if (state.pool.is_valid(i) && state.inv[i].at(s - 1, t - 1) != 0) return true;
    }
    return false;
}

void rebuild(ReachState& state) {
    state = init_reach(state.n, state.edges, make_reach_pool(state.n, state.cfg), state.cfg);
}

}  // namespace algreach
