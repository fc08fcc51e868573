#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "algreach/change.hpp"
#include "algreach/reach_engine.hpp"
#include "algreach/script.hpp"

namespace algreach {

enum class EngineKind { Reach, Dist, Quotient };

EngineKind parse_engine(const std::string& name);
std::string engine_name(EngineKind kind);

// Flag bag shared by the CLI subcommands; zero values mean "derive default".
struct EngineOptions {
    EngineKind engine = EngineKind::Reach;
    int k = 0;
    int epoch_len = 0;
    std::size_t prime_count = 0;
    PrimeMode prime_mode = PrimeMode::Random;
    std::uint64_t seed = 1;
    std::size_t point_count = 0;  // quotient evaluation points
};

struct StepRecord {
    int step = 0;  // 1-based
    int batch_count = 0;
    int invalidated = 0;
    long long valid_primes = 0;
    int mismatches = 0;
    long long update_micros = 0;
    long long check_micros = 0;
};

struct RunReport {
    std::string engine;
    int n = 0;
    std::uint64_t seed = 0;
    long long init_micros = 0;
    std::vector<StepRecord> steps;

    int total_mismatches() const;
};

struct RunResult {
    RunReport report;
    std::vector<std::string> answers;  // one line per trailing query
};

/// Applies every step (auto-partitioned into change batches), records
/// per-step stats, and answers the trailing queries against the final state.
/// Engine errors are rethrown with the offending step index.
RunResult run_script(const Graph& graph, const ChangeScript& script, const EngineOptions& opt);

/// Seeded random script, engine and oracle side by side; all-pairs answers
/// compared after every step. For the reach engine the SMW consistency check
/// (inv[p] * (nI - A_G) = I on three sampled valid primes) runs inline and
/// counts failures as mismatches. Deterministic in (n, steps, seed, options).
RunReport verify_fuzz(int n, int steps, std::uint64_t seed, const EngineOptions& opt);

/// Per-step incremental timing plus a from-scratch-recompute baseline on a
/// seeded random graph; appends CSV rows with header
/// engine,n,step,phase,micros,valid_primes,invalidated.
void bench(const std::vector<int>& ns, int steps, const EngineOptions& opt, std::ostream& csv);

/// Per-step report rows. Timings are zeroed unless include_timing is set, so
/// verify reports for equal seeds are byte-identical.
void write_report_csv(std::ostream& out, const RunReport& report, bool include_timing);

/// Deterministic human-readable summary (no timings).
std::string format_report(const RunReport& report);

}  // namespace algreach
