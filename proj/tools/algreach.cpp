#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algreach/runner.hpp"
#include "algreach/script.hpp"

namespace {

struct CommonFlags {
    std::string engine = "reach";
    int k = 0;
    int epoch = 0;
    std::size_t primes = 0;
    std::string prime_mode = "random";
    std::uint64_t seed = 1;
    std::size_t points = 0;
    std::string csv_path;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--engine", flags.engine, "engine: reach, dist or quotient")
        ->check(CLI::IsMember({"reach", "dist", "quotient"}));
    cmd->add_option("--k", flags.k, "per-batch source/target bound (0 = derive)");
    cmd->add_option("--epoch", flags.epoch, "steps per epoch before rebuild (0 = derive)");
    cmd->add_option("--primes", flags.primes, "prime pool size (0 = derive)");
    cmd->add_option("--prime-mode", flags.prime_mode, "prime pool mode")
        ->check(CLI::IsMember({"random", "deterministic"}));
    cmd->add_option("--seed", flags.seed, "seed for pools and generators");
    cmd->add_option("--points", flags.points, "quotient evaluation point count (0 = derive)");
    cmd->add_option("--csv", flags.csv_path, "write a CSV report to this path");
}

algreach::EngineOptions to_options(const CommonFlags& flags) {
    algreach::EngineOptions opt;
    opt.engine = algreach::parse_engine(flags.engine);
    opt.k = flags.k;
    opt.epoch_len = flags.epoch;
    opt.prime_count = flags.primes;
    opt.prime_mode = flags.prime_mode == "deterministic" ? algreach::PrimeMode::Deterministic
                                                         : algreach::PrimeMode::Random;
    opt.seed = flags.seed;
    opt.point_count = flags.points;
    return opt;
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open CSV output: " + path);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic reachability/distance query engine"};
    app.require_subcommand(1);

    CommonFlags run_flags, verify_flags, bench_flags;
    std::string graph_path, script_path;
    int verify_n = 8, verify_steps = 100;
    std::vector<int> bench_ns;
    int bench_steps = 10;

    CLI::App* run_cmd = app.add_subcommand("run", "replay a change script and answer its queries");
    run_cmd->add_option("--graph", graph_path, "graph file")->required();
    run_cmd->add_option("--script", script_path, "change script file")->required();
    add_common_flags(run_cmd, run_flags);

    CLI::App* verify_cmd = app.add_subcommand("verify", "fuzz the engine against the BFS oracle");
    verify_cmd->add_option("--n", verify_n, "node count")->required();
    verify_cmd->add_option("--steps", verify_steps, "number of random steps");
    add_common_flags(verify_cmd, verify_flags);

    CLI::App* bench_cmd = app.add_subcommand("bench", "time incremental steps against full recompute");
    bench_cmd->add_option("--n", bench_ns, "node counts")->delimiter(',');
    bench_cmd->add_option("--steps", bench_steps, "steps per node count");
    add_common_flags(bench_cmd, bench_flags);
    bench_cmd->get_option("--csv")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const algreach::Graph graph = algreach::load_graph(graph_path);
            const algreach::ChangeScript script = algreach::load_script(script_path);
            const algreach::RunResult result = run_script(graph, script, to_options(run_flags));
            if (!run_flags.csv_path.empty()) {
                auto out = open_csv(run_flags.csv_path);
                write_report_csv(out, result.report, /*include_timing=*/true);
            }
            for (const std::string& answer : result.answers) std::cout << answer << "\n";
            return 0;
        }
        if (verify_cmd->parsed()) {
            const algreach::RunReport report =
                algreach::verify_fuzz(verify_n, verify_steps, verify_flags.seed, to_options(verify_flags));
            if (!verify_flags.csv_path.empty()) {
                auto out = open_csv(verify_flags.csv_path);
                write_report_csv(out, report, /*include_timing=*/false);
            }
            std::cout << algreach::format_report(report);
            return report.total_mismatches() == 0 ? 0 : 1;
        }
        if (bench_cmd->parsed()) {
            auto out = open_csv(bench_flags.csv_path);
            algreach::bench(bench_ns, bench_steps, to_options(bench_flags), out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
