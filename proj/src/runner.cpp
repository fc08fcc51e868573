#include "algreach/runner.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "algreach/dist_engine.hpp"
#include "algreach/oracles.hpp"
#include "algreach/quotient_engine.hpp"

namespace algreach {

EngineKind parse_engine(const std::string& name) {
    if (name == "reach") return EngineKind::Reach;
    if (name == "dist") return EngineKind::Dist;
    if (name == "quotient") return EngineKind::Quotient;
    throw std::invalid_argument("unknown engine '" + name + "' (expected reach, dist or quotient)");
}

std::string engine_name(EngineKind kind) {
    switch (kind) {
        case EngineKind::Reach: return "reach";
        case EngineKind::Dist: return "dist";
        case EngineKind::Quotient: return "quotient";
    }
    return "?";
}

int RunReport::total_mismatches() const {
    int total = 0;
    for (const StepRecord& s : steps) total += s.mismatches;
    return total;
}

namespace {

long long now_micros() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

ReachConfig reach_config(const EngineOptions& opt) {
    ReachConfig cfg;
    cfg.k = opt.k;
    cfg.epoch_len = opt.epoch_len;
    cfg.prime_mode = opt.prime_mode;
    if (opt.prime_count > 0) cfg.prime_count = opt.prime_count;
    cfg.seed = opt.seed;
    return cfg;
}

DistConfig dist_config(const EngineOptions& opt) {
    DistConfig cfg;
    cfg.k = opt.k;
    cfg.epoch_len = opt.epoch_len;
    cfg.prime_count = opt.prime_count;
    cfg.seed = opt.seed;
    return cfg;
}

QuotientConfig quotient_config(const EngineOptions& opt) {
    QuotientConfig cfg;
    cfg.k = opt.k;
    cfg.epoch_len = opt.epoch_len;
    cfg.prime_count = opt.prime_count;
    cfg.point_count = opt.point_count;
    cfg.seed = opt.seed;
    return cfg;
}

// one engine state behind a common stepping/query surface
struct EngineInstance {
    EngineKind kind;
    std::optional<ReachState> reach;
    std::optional<DistState> dist;
    std::optional<QuotientState> quot;

    static EngineInstance make(int n, const EdgeSet& edges, const EngineOptions& opt) {
        EngineInstance e;
        e.kind = opt.engine;
        switch (opt.engine) {
            case EngineKind::Reach: e.reach = init_reach(n, edges, reach_config(opt)); break;
            case EngineKind::Dist: e.dist = init_dist(n, edges, dist_config(opt)); break;
            case EngineKind::Quotient: e.quot = init_quotient(n, edges, quotient_config(opt)); break;
        }
        return e;
    }

    int resolved_k() const {
        switch (kind) {
            case EngineKind::Reach: return reach->cfg.k;
            case EngineKind::Dist: return dist->cfg.k;
            case EngineKind::Quotient: return quot->cfg.k;
        }
        return 1;
    }

    // returns the number of invalidations caused by the batch
    int step(const ChangeBatch& batch) {
        switch (kind) {
            case EngineKind::Reach: return smw_step(*reach, batch).invalidated;
            case EngineKind::Dist: dist_smw_step(*dist, batch); return 0;
            case EngineKind::Quotient: return quotient_update(*quot, batch).cells_invalidated;
        }
        return 0;
    }

    long long valid_primes() const {
        switch (kind) {
            case EngineKind::Reach: return static_cast<long long>(reach->pool.valid_count());
            case EngineKind::Dist: return static_cast<long long>(dist->pool.size());
            case EngineKind::Quotient: {
                // primes still holding enough valid points to qualify for extraction
                const QuotientState& q = *quot;
                const long long need = q.bounds.deg_bound() + 1;
                long long count = 0;
                for (std::size_t pi = 0; pi < q.pool.size(); ++pi) {
                    long long pts = 0;
                    for (std::size_t ai = 0; ai < q.points.size(); ++ai)
                        if (q.is_cell_valid(ai, pi)) ++pts;
                    if (pts >= need) ++count;
                }
                return count;
            }
        }
        return 0;
    }
};

std::string answer_query(const EngineInstance& engine, const Query& q,
                         const std::optional<QuotientExtraction>& extraction) {
    switch (engine.kind) {
        case EngineKind::Reach:
            if (q.kind == Query::Kind::Dist)
                throw std::invalid_argument("the reach engine cannot answer dist queries");
            return reachable(*engine.reach, q.u, q.v) ? "true" : "false";
        case EngineKind::Dist: {
            const auto d = distance(*engine.dist, q.u, q.v);
            if (q.kind == Query::Kind::Reach) return d ? "true" : "false";
            return d ? std::to_string(*d) : "inf";
        }
        case EngineKind::Quotient: {
            const auto d = extraction->at(q.u, q.v, engine.quot->n);
            if (q.kind == Query::Kind::Reach) return d ? "true" : "false";
            return d ? std::to_string(*d) : "inf";
        }
    }
    return "?";
}

}  // namespace

RunResult run_script(const Graph& graph, const ChangeScript& script, const EngineOptions& opt) {
    RunResult result;
    result.report.engine = engine_name(opt.engine);
    result.report.n = graph.n;
    result.report.seed = opt.seed;

    long long t0 = now_micros();
    EngineInstance engine = EngineInstance::make(graph.n, graph.edges, opt);
    result.report.init_micros = now_micros() - t0;
    const int k = engine.resolved_k();

    for (std::size_t si = 0; si < script.steps.size(); ++si) {
        const ScriptStep& step = script.steps[si];
        StepRecord rec;
        rec.step = static_cast<int>(si) + 1;
        const EdgeSet inserts(step.inserts.begin(), step.inserts.end());
        const EdgeSet deletes(step.deletes.begin(), step.deletes.end());
        const auto batches = batch_partition(inserts, deletes, k);
        rec.batch_count = static_cast<int>(batches.size());
        t0 = now_micros();
        try {
            for (const ChangeBatch& batch : batches) rec.invalidated += engine.step(batch);
        } catch (const std::exception& e) {
            throw std::runtime_error("step " + std::to_string(rec.step) + ": " + e.what());
        }
        rec.update_micros = now_micros() - t0;
        rec.valid_primes = engine.valid_primes();
        result.report.steps.push_back(rec);
    }

    std::optional<QuotientExtraction> extraction;
    if (opt.engine == EngineKind::Quotient && !script.queries.empty())
        extraction = extract_all(*engine.quot);
    for (const Query& q : script.queries)
        result.answers.push_back(answer_query(engine, q, extraction));
    return result;
}

namespace {

// One random step touching at most max(k,2) nodes, with at most k distinct
// sources and k distinct targets. Biased toward deletions on odd steps once
// density exceeds 30%.
ChangeBatch random_step(std::mt19937_64& rng, const Graph& g, int k, int step_index) {
    const int n = g.n;
    const int affected = std::min(n, std::max(k, 2));
    std::vector<NodeId> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i + 1;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    nodes.resize(affected);

    std::vector<std::pair<Edge, bool>> candidates;  // (edge, present)
    for (NodeId u : nodes)
        for (NodeId v : nodes)
            if (u != v) candidates.emplace_back(Edge{u, v}, g.edges.contains({u, v}));
    std::shuffle(candidates.begin(), candidates.end(), rng);

    const double density =
        n > 1 ? static_cast<double>(g.edges.size()) / (static_cast<double>(n) * (n - 1)) : 0.0;
    const bool prefer_delete = density > 0.3 && step_index % 2 == 1;
    const std::size_t want = 1 + rng() % candidates.size();

    ChangeBatch batch;
    std::set<NodeId> sources, targets;
    auto try_take = [&](const Edge& e, bool present) {
        if (sources.size() + (sources.contains(e.from) ? 0 : 1) > static_cast<std::size_t>(k)) return;
        if (targets.size() + (targets.contains(e.to) ? 0 : 1) > static_cast<std::size_t>(k)) return;
        sources.insert(e.from);
        targets.insert(e.to);
        (present ? batch.deletes : batch.inserts).push_back(e);
    };
    for (const auto& [e, present] : candidates) {
        if (batch.inserts.size() + batch.deletes.size() >= want) break;
        if (prefer_delete && !present) continue;
        try_take(e, present);
    }
    if (batch.empty()) {  // deletion-biased step found nothing present
        for (const auto& [e, present] : candidates) {
            if (batch.empty()) try_take(e, present);
        }
    }
    return batch;
}

}  // namespace

RunReport verify_fuzz(int n, int steps, std::uint64_t seed, const EngineOptions& opt) {
    if (n < 2) throw std::invalid_argument("verify_fuzz: n must be at least 2");
    RunReport report;
    report.engine = engine_name(opt.engine);
    report.n = n;
    report.seed = seed;

    long long t0 = now_micros();
    EngineInstance engine = EngineInstance::make(n, {}, opt);
    report.init_micros = now_micros() - t0;
    const int k = engine.resolved_k();

    Graph shadow{n, {}};
    std::mt19937_64 rng(seed);

    for (int step = 1; step <= steps; ++step) {
        StepRecord rec;
        rec.step = step;
        rec.batch_count = 1;
        const ChangeBatch batch = random_step(rng, shadow, k, step);

        t0 = now_micros();
        rec.invalidated = engine.step(batch);
        rec.update_micros = now_micros() - t0;
        apply_batch(shadow.edges, batch);
        rec.valid_primes = engine.valid_primes();

        t0 = now_micros();
        std::optional<QuotientExtraction> extraction;
        if (opt.engine == EngineKind::Quotient) extraction = extract_all(*engine.quot);
        for (NodeId s = 1; s <= n; ++s) {
            const auto oracle_dist = bfs_dist(shadow, s);
            for (NodeId t = 1; t <= n; ++t) {
                const bool oracle_reach = oracle_dist[t].has_value();
                switch (opt.engine) {
                    case EngineKind::Reach:
                        if (reachable(*engine.reach, s, t) != oracle_reach) ++rec.mismatches;
                        break;
                    case EngineKind::Dist:
                        if (distance(*engine.dist, s, t) != oracle_dist[t]) ++rec.mismatches;
                        break;
                    case EngineKind::Quotient:
                        if (extraction->at(s, t, n) != oracle_dist[t]) ++rec.mismatches;
                        break;
                }
            }
        }
        if (opt.engine == EngineKind::Reach) {
            // SMW consistency on three sampled valid primes
            const ReachState& st = *engine.reach;
            std::vector<std::size_t> valid;
            for (std::size_t i = 0; i < st.pool.size(); ++i)
                if (st.pool.is_valid(i)) valid.push_back(i);
            std::shuffle(valid.begin(), valid.end(), rng);
            if (valid.size() > 3) valid.resize(3);
            for (std::size_t i : valid) {
                const std::uint64_t p = st.pool.primes[i];
                const ModMatrix a = reach_system_matrix(n, st.edges, p);
                if (mat_mul(st.inv[i], a) != ModMatrix::identity(n, p)) ++rec.mismatches;
            }
        }
        rec.check_micros = now_micros() - t0;
        report.steps.push_back(rec);
    }
    return report;
}

void bench(const std::vector<int>& ns, int steps, const EngineOptions& opt, std::ostream& csv) {
    csv << "engine,n,step,phase,micros,valid_primes,invalidated\n";
    const std::string name = engine_name(opt.engine);
    for (int n : ns) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(n));
        Graph g{n, {}};
        const std::size_t target = static_cast<std::size_t>(0.1 * n * (n - 1));
        while (g.edges.size() < target) {
            const NodeId u = 1 + static_cast<NodeId>(rng() % n);
            const NodeId v = 1 + static_cast<NodeId>(rng() % n);
            if (u != v) g.edges.insert({u, v});
        }

        long long t0 = now_micros();
        EngineInstance engine = EngineInstance::make(n, g.edges, opt);
        csv << name << ',' << n << ",0,init," << (now_micros() - t0) << ','
            << engine.valid_primes() << ",0\n";

        for (int step = 1; step <= steps; ++step) {
            // single-edge change: delete when the coin lands on an edge, else insert
            ChangeBatch batch;
            while (batch.empty()) {
                const NodeId u = 1 + static_cast<NodeId>(rng() % n);
                const NodeId v = 1 + static_cast<NodeId>(rng() % n);
                if (u == v) continue;
                if (g.edges.contains({u, v}))
                    batch.deletes.push_back({u, v});
                else
                    batch.inserts.push_back({u, v});
            }
            t0 = now_micros();
            const int invalidated = engine.step(batch);
            const long long update_micros = now_micros() - t0;
            apply_batch(g.edges, batch);
            csv << name << ',' << n << ',' << step << ",update," << update_micros << ','
                << engine.valid_primes() << ',' << invalidated << "\n";

            t0 = now_micros();
            EngineInstance baseline = EngineInstance::make(n, g.edges, opt);
            csv << name << ',' << n << ',' << step << ",baseline," << (now_micros() - t0) << ','
                << baseline.valid_primes() << ",0\n";
        }
    }
}

void write_report_csv(std::ostream& out, const RunReport& report, bool include_timing) {
    out << "engine,n,step,batches,invalidated,valid_primes,mismatches,update_micros,check_micros\n";
    for (const StepRecord& s : report.steps) {
        out << report.engine << ',' << report.n << ',' << s.step << ',' << s.batch_count << ','
            << s.invalidated << ',' << s.valid_primes << ',' << s.mismatches << ','
            << (include_timing ? s.update_micros : 0) << ','
            << (include_timing ? s.check_micros : 0) << "\n";
    }
}

std::string format_report(const RunReport& report) {
    std::ostringstream out;
    out << "engine=" << report.engine << " n=" << report.n << " seed=" << report.seed
        << " steps=" << report.steps.size() << "\n";
    for (const StepRecord& s : report.steps) {
        out << "step=" << s.step << " batches=" << s.batch_count << " invalidated=" << s.invalidated
            << " valid_primes=" << s.valid_primes << " mismatches=" << s.mismatches << "\n";
    }
    out << "total_mismatches=" << report.total_mismatches() << "\n";
    return out.str();
}

}  // namespace algreach
