#include "algreach/quotient_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "algreach/reach_engine.hpp"
#include "algreach/smalldet.hpp"

namespace algreach {

namespace {

long long clog2(long long x) {  // ceil(log2 x) for x >= 1
    long long b = 0;
    while ((1LL << b) < x) ++b;
    return b;
}

long long clog2_factorial(int k) {
    double acc = 0;
    for (int i = 2; i <= k; ++i) acc += std::log2(static_cast<double>(i));
    return static_cast<long long>(std::ceil(acc));
}

}  // namespace

PolyBound pb_add(PolyBound a, PolyBound b) {
    return {std::max(a.deg, b.deg), std::max(a.bits, b.bits) + 1};
}

PolyBound pb_mul(PolyBound a, PolyBound b) {
    return {a.deg + b.deg, a.bits + b.bits + clog2(std::min(a.deg, b.deg) + 1)};
}

PolyBound pb_sum(PolyBound term, long long count) {
    if (count <= 1) return term;
    return {term.deg, term.bits + clog2(count)};
}

PolyBound pb_pow(PolyBound a, long long e) {
    PolyBound r{0, 1};
    for (long long i = 0; i < e; ++i) r = pb_mul(r, a);
    return r;
}

PolyBound pb_det(PolyBound entry, int k) {
    if (k <= 0) return {0, 1};
    return {k * entry.deg,
            k * entry.bits + (k - 1) * clog2(entry.deg + 1) + clog2_factorial(k)};
}

QuotientBounds quotient_initial_bounds(int n) {
    const long long walk_bits =
        static_cast<long long>(std::ceil((n - 1) * std::log2(static_cast<double>(std::max(n, 2))))) + 1;
    return {PolyBound{n, std::max(1LL, walk_bits)}, PolyBound{0, 1}};
}

QuotientBounds quotient_advance_bounds(const QuotientBounds& b, int r, int c) {
    if (r == 0 || c == 0) return b;
    const PolyBound num = b.num, den = b.den;
    const PolyBound core{1, 1};  // x * (+-1)
    const PolyBound p_entry = pb_sum(pb_mul(core, num), c);  // B V C U numerators
    const PolyBound e_num = pb_add(den, p_entry);            // diagonal adds h
    const PolyBound fe = pb_mul(e_num, pb_pow(den, static_cast<long long>(r) * r - 1));
    const PolyBound delta = pb_det(fe, r);
    const PolyBound estar = pb_det(fe, r - 1);                    // adjugate entries
    const PolyBound q_entry = pb_sum(pb_mul(core, num), c);       // B V C numerators
    const PolyBound x_entry = pb_sum(pb_mul(estar, q_entry), r);  // adj * Q
    const PolyBound y_entry = pb_sum(pb_mul(num, x_entry), r);    // (C U) * X
    const PolyBound s_num = pb_mul(pb_pow(den, static_cast<long long>(r) * r), y_entry);
    const PolyBound g_new = pb_add(pb_mul(num, pb_mul(den, delta)), s_num);
    const PolyBound h_new = pb_mul(pb_mul(den, den), delta);
    return {g_new, h_new};
}

QuotientBounds quotient_project_epoch(int n, int k, int epoch_len) {
    QuotientBounds b = quotient_initial_bounds(n);
    for (int i = 0; i < epoch_len; ++i) b = quotient_advance_bounds(b, k, k);
    return b;
}

namespace {

QuotientConfig resolve_config(int n, QuotientConfig cfg) {
    if (cfg.k <= 0) cfg.k = default_k(n);
    if (cfg.epoch_len <= 0) cfg.epoch_len = 2;
    return cfg;
}

}  // namespace

QuotientState init_quotient(int n, const EdgeSet& graph, std::size_t point_count, PrimePool pool,
                            QuotientConfig cfg) {
    if (n < 1) throw std::invalid_argument("init_quotient: n must be positive");
    for (const Edge& e : graph) {
        if (e.from < 1 || e.from > n || e.to < 1 || e.to > n)
            throw std::invalid_argument("init_quotient: edge endpoint out of range");
    }
    QuotientState state;
    state.n = n;
    state.edges = graph;
    state.cfg = resolve_config(n, cfg);
    state.cfg.point_count = point_count;
    state.cfg.prime_count = pool.size();

    const QuotientBounds projected =
        quotient_project_epoch(n, state.cfg.k, state.cfg.epoch_len);
    if (static_cast<long long>(point_count) < projected.deg_bound() + 1)
        throw std::domain_error("init_quotient: point set undersized for the configured epoch");
    long long pool_bits = 0;
    for (std::uint64_t p : pool.primes) {
        if (p <= point_count) throw std::invalid_argument("init_quotient: primes must exceed max(S)");
        pool_bits += clog2(static_cast<long long>(p)) - 1;
    }
    if (pool_bits <= projected.coeff_bits())
        throw std::domain_error("init_quotient: prime pool undersized for the configured epoch");

    state.points.resize(point_count);
    for (std::size_t i = 0; i < point_count; ++i) state.points[i] = i + 1;
    state.pool = std::move(pool);
    state.pool.reset_flags();
    state.point_valid.assign(point_count, 1);
    state.cell_valid.assign(point_count * state.pool.size(), 1);
    state.numer.assign(point_count * state.pool.size(), {});
    state.denom.assign(point_count * state.pool.size(), 1);

    // numerators: truncated walk series evaluated at each point
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    for (std::size_t pi = 0; pi < state.pool.size(); ++pi) {
        const std::uint64_t p = state.pool.primes[pi];
        ModMatrix adj(n, n, p);
        for (const Edge& e : graph)
            adj.at(e.from - 1, e.to - 1) = add_mod(adj.at(e.from - 1, e.to - 1), 1 % p, p);
        std::vector<ModMatrix> powers;
        powers.reserve(n + 1);
        powers.push_back(ModMatrix::identity(n, p));
        for (int i = 1; i <= n; ++i) powers.push_back(mat_mul(powers.back(), adj));

        for (std::size_t ai = 0; ai < point_count; ++ai) {
            std::vector<std::uint64_t>& g = state.numer[state.cell(ai, pi)];
            g.assign(nn, 0);
            std::uint64_t apow = 1 % p;
            for (int i = 0; i <= n; ++i) {
                if (i > 0) apow = mul_mod(apow, state.points[ai] % p, p);
                for (std::size_t e = 0; e < nn; ++e)
                    g[e] = add_mod(g[e], mul_mod(apow, powers[i].entries[e], p), p);
            }
        }
    }
    state.bounds = quotient_initial_bounds(n);
    state.step_count = 0;
    return state;
}

QuotientState init_quotient(int n, const EdgeSet& graph, QuotientConfig cfg) {
    const QuotientConfig resolved = resolve_config(n, cfg);
    const QuotientBounds projected = quotient_project_epoch(n, resolved.k, resolved.epoch_len);
    std::size_t points = resolved.point_count;
    if (points == 0) points = static_cast<std::size_t>(projected.deg_bound()) + 1 + 8;
    std::size_t primes = resolved.prime_count;
    if (primes == 0) primes = static_cast<std::size_t>(projected.coeff_bits() / 60) + 3;
    return init_quotient(n, graph, points, random_prime_pool(primes, 61, resolved.seed), resolved);
}

bool extraction_ready(const QuotientState& state) {
    const long long need_points = state.bounds.deg_bound() + 1;
    long long bits = 0;
    for (std::size_t pi = 0; pi < state.pool.size(); ++pi) {
        long long pts = 0;
        for (std::size_t ai = 0; ai < state.points.size(); ++ai)
            if (state.is_cell_valid(ai, pi)) ++pts;
        if (pts >= need_points) bits += clog2(static_cast<long long>(state.pool.primes[pi])) - 1;
    }
    return bits > state.bounds.coeff_bits();
}

QuotientStepStats quotient_update(QuotientState& state, const ChangeBatch& batch) {
    QuotientStepStats stats;
    if (batch.empty()) return stats;
    validate_batch(batch, state.n, state.edges, state.cfg.k, /*allow_self_loops=*/true);
    if (state.step_count >= state.cfg.epoch_len) {
        rebuild(state);
        stats.rebuilt = true;
    }

    const UBVDecomposition ubv = decompose(negated_adjacency_delta(batch), state.cfg.k);
    const int n = state.n;
    const int r = ubv.row_count();
    const int c = ubv.col_count();
    const std::size_t nn = static_cast<std::size_t>(n) * n;

    std::vector<std::uint64_t> e_num(static_cast<std::size_t>(r) * r);
    std::vector<std::uint64_t> fe(static_cast<std::size_t>(r) * r);
    std::vector<std::uint64_t> q(static_cast<std::size_t>(r) * n);
    std::vector<std::uint64_t> x(static_cast<std::size_t>(r) * n);
    std::vector<std::uint64_t> g_new(nn);

    for (std::size_t ai = 0; ai < state.points.size(); ++ai) {
        if (!state.point_valid[ai]) continue;
        for (std::size_t pi = 0; pi < state.pool.size(); ++pi) {
            const std::size_t cell = state.cell(ai, pi);
            if (!state.cell_valid[cell]) continue;
            const std::uint64_t p = state.pool.primes[pi];
            const std::uint64_t a = state.points[ai] % p;
            const std::uint64_t h = state.denom[cell];
            const std::vector<std::uint64_t>& g = state.numer[cell];

            auto selected = [&](NodeId row_node, int t) {
                return g[static_cast<std::size_t>(row_node - 1) * n + t];
            };

            // E numerators: a * sum_l core(m,l) * g[col_l][row_m2], + h on the diagonal
            for (int m = 0; m < r; ++m) {
                for (int m2 = 0; m2 < r; ++m2) {
                    std::uint64_t acc = 0;
                    for (int l = 0; l < c; ++l) {
                        const int b = ubv.core_at(m, l);
                        if (b == 0) continue;
                        const std::uint64_t v = selected(ubv.col_nodes[l], ubv.row_nodes[m2] - 1);
                        acc = b > 0 ? add_mod(acc, v, p) : sub_mod(acc, v, p);
                    }
                    acc = mul_mod(acc, a, p);
                    if (m == m2) acc = add_mod(acc, h, p);
                    e_num[static_cast<std::size_t>(m) * r + m2] = acc;
                }
            }

            // f = h^{r^2}; fE entries carry h^{r^2 - 1}
            const std::uint64_t hp = pow_mod(h, static_cast<std::uint64_t>(r) * r - 1, p);
            for (std::size_t i = 0; i < e_num.size(); ++i) fe[i] = mul_mod(e_num[i], hp, p);

            std::vector<std::uint64_t> fe_scratch(fe);
            const std::uint64_t delta = detail::det_destructive(fe_scratch.data(), r, p);
            if (delta == 0) {  // new shared denominator h^2 * delta vanishes
                state.cell_valid[cell] = 0;
                ++stats.cells_invalidated;
                continue;
            }

            ModMatrix fe_mat(r, r, p);
            fe_mat.entries.assign(fe.begin(), fe.end());
            const ModMatrix adj = cofactor_adjugate(fe_mat, DetRoutine::Elimination);

            // Q = numerators of B V C (rows picked by V, scaled by a*core)
            for (int m = 0; m < r; ++m) {
                for (int t = 0; t < n; ++t) {
                    std::uint64_t acc = 0;
                    for (int l = 0; l < c; ++l) {
                        const int b = ubv.core_at(m, l);
                        if (b == 0) continue;
                        const std::uint64_t v = selected(ubv.col_nodes[l], t);
                        acc = b > 0 ? add_mod(acc, v, p) : sub_mod(acc, v, p);
                    }
                    q[static_cast<std::size_t>(m) * n + t] = mul_mod(acc, a, p);
                }
            }
            // X = adj * Q
            for (int m = 0; m < r; ++m) {
                for (int t = 0; t < n; ++t) {
                    std::uint64_t acc = 0;
                    for (int m2 = 0; m2 < r; ++m2)
                        acc = add_mod(acc, mul_mod(adj.at(m, m2), q[static_cast<std::size_t>(m2) * n + t], p), p);
                    x[static_cast<std::size_t>(m) * n + t] = acc;
                }
            }

            // G' = G * h * delta - h^{r^2} * (C U) X over the common denominator h^2 * delta
            const std::uint64_t h_delta = mul_mod(h, delta, p);
            const std::uint64_t hr2 = mul_mod(hp, h, p);
            for (int s = 0; s < n; ++s) {
                for (int t = 0; t < n; ++t) {
                    std::uint64_t y = 0;
                    for (int m = 0; m < r; ++m) {
                        const std::uint64_t gu = g[static_cast<std::size_t>(s) * n + (ubv.row_nodes[m] - 1)];
                        if (gu == 0) continue;
                        y = add_mod(y, mul_mod(gu, x[static_cast<std::size_t>(m) * n + t], p), p);
                    }
                    const std::size_t e = static_cast<std::size_t>(s) * n + t;
                    g_new[e] = sub_mod(mul_mod(g[e], h_delta, p), mul_mod(hr2, y, p), p);
                }
            }
            state.numer[cell] = g_new;
            state.denom[cell] = mul_mod(h, h_delta, p);
        }
        // a point with no primes left carries no signal; drop it
        bool any = false;
        for (std::size_t pi = 0; pi < state.pool.size() && !any; ++pi)
            any = state.cell_valid[state.cell(ai, pi)] != 0;
        if (!any) {
            state.point_valid[ai] = 0;
            ++stats.points_invalidated;
        }
    }

    state.bounds = quotient_advance_bounds(state.bounds, r, c);
    apply_batch(state.edges, batch);
    ++state.step_count;

    if (!extraction_ready(state)) {
        rebuild(state);
        stats.rebuilt = true;
    }
    return stats;
}

QuotientExtraction extract_all(const QuotientState& state) {
    if (!extraction_ready(state)) throw std::domain_error("extract_all: insufficient valid data");
    const int n = state.n;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    const long long need_points = state.bounds.deg_bound() + 1;

    QuotientExtraction out;
    out.dist.assign(nn, std::nullopt);
    std::vector<std::optional<long long>> smallest(nn);

    for (std::size_t pi = 0; pi < state.pool.size(); ++pi) {
        std::vector<std::size_t> cells;
        std::vector<std::uint64_t> xs;
        for (std::size_t ai = 0; ai < state.points.size(); ++ai) {
            if (!state.is_cell_valid(ai, pi)) continue;
            cells.push_back(state.cell(ai, pi));
            xs.push_back(state.points[ai]);
        }
        if (static_cast<long long>(xs.size()) < need_points) continue;  // not qualifying
        const std::uint64_t p = state.pool.primes[pi];
        out.primes_used.push_back(p);

        const NewtonInterpolator interp(xs, p);
        std::vector<std::uint64_t> ys(xs.size());
        for (std::size_t e = 0; e < nn; ++e) {
            for (std::size_t i = 0; i < cells.size(); ++i) ys[i] = state.numer[cells[i]][e];
            const std::vector<std::uint64_t> coeffs = interp.coefficients(ys);
            long long deg = -1;
            std::optional<long long> low;
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (coeffs[i] != 0) {
                    if (!low) low = static_cast<long long>(i);
                    deg = static_cast<long long>(i);
                }
            }
            if (deg > state.bounds.deg_bound())
                throw std::logic_error("extract_all: interpolated degree exceeds the tracked bound");
            out.max_numerator_degree = std::max(out.max_numerator_degree, deg);
            if (low && (!smallest[e] || *low < *smallest[e])) smallest[e] = low;
        }
    }

    for (std::size_t e = 0; e < nn; ++e) {
        if (smallest[e] && *smallest[e] <= n) out.dist[e] = static_cast<int>(*smallest[e]);
    }
    return out;
}

std::optional<int> extract_distance(const QuotientState& state, NodeId s, NodeId t) {
    if (s < 1 || s > state.n || t < 1 || t > state.n)
        throw std::invalid_argument("extract_distance: node out of range");
    return extract_all(state).at(s, t, state.n);
}

void rebuild(QuotientState& state) {
    state = init_quotient(state.n, state.edges, state.cfg.point_count,
                          random_prime_pool(state.cfg.prime_count, 61, state.cfg.seed), state.cfg);
}

}  // namespace algreach
