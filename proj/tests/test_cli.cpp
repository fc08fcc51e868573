#include <doctest.h>

#include <sstream>

#include "algreach/runner.hpp"
#include "algreach/script.hpp"
#include "support/testutil.hpp"

using namespace algreach;

TEST_CASE("parse_graph accepts comments and validates") {
    std::istringstream ok("# a path\n3 2\n1 2   # edge\n2 3\n");
    const Graph g = parse_graph(ok);
    CHECK(g.n == 3);
    CHECK(g.edges == EdgeSet{{1, 2}, {2, 3}});

    std::istringstream bad_header("3\n");
    CHECK_THROWS_WITH_AS(parse_graph(bad_header), "line 1: expected header 'n m'", ParseError);

    std::istringstream out_of_range("2 1\n1 5\n");
    CHECK_THROWS_WITH_AS(parse_graph(out_of_range), "line 2: edge endpoint out of range", ParseError);

    std::istringstream wrong_count("2 2\n1 2\n");
    CHECK_THROWS_AS(parse_graph(wrong_count), ParseError);

    std::istringstream garbage("2 1\n1 x\n");
    try {
        parse_graph(garbage);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("parse_script steps, auto-close and queries") {
    std::istringstream in(
        "+ 1 2\n"
        "+ 2 3\n"
        "step\n"
        "- 1 2\n"  // trailing open step, closed by the query
        "? reach 1 3\n"
        "? dist 2 3\n");
    const ChangeScript s = parse_script(in);
    REQUIRE(s.steps.size() == 2);
    CHECK(s.steps[0].inserts.size() == 2);
    CHECK(s.steps[1].deletes.size() == 1);
    REQUIRE(s.queries.size() == 2);
    CHECK(s.queries[0].kind == Query::Kind::Reach);
    CHECK(s.queries[1].kind == Query::Kind::Dist);

    std::istringstream after("? reach 1 2\n+ 1 2\n");
    CHECK_THROWS_WITH_AS(parse_script(after), "line 2: change lines must precede query lines",
                         ParseError);

    std::istringstream both("+ 1 2\n- 1 2\nstep\n");
    CHECK_THROWS_WITH_AS(parse_script(both), "line 3: edge inserted and deleted in the same step",
                         ParseError);

    std::istringstream unknown("insert 1 2\n");
    CHECK_THROWS_AS(parse_script(unknown), ParseError);

    std::istringstream trailing("+ 1 2\n");
    CHECK(parse_script(trailing).steps.size() == 1);

    std::istringstream empty("# nothing\n");
    const ChangeScript none = parse_script(empty);
    CHECK(none.steps.empty());
    CHECK(none.queries.empty());
}

namespace {

ChangeScript script_from(const std::string& text) {
    std::istringstream in(text);
    return parse_script(in);
}

}  // namespace

TEST_CASE("run_script on a build-then-break path") {
    const Graph empty3{3, {}};
    EngineOptions opt;
    opt.seed = 5;

    const ChangeScript build = script_from("+ 1 2\n+ 2 3\nstep\n? reach 1 3\n");
    CHECK(run_script(empty3, build, opt).answers == std::vector<std::string>{"true"});

    const ChangeScript wreck = script_from("+ 1 2\n+ 2 3\nstep\n- 2 3\nstep\n? reach 1 3\n");
    const RunResult broken = run_script(empty3, wreck, opt);
    CHECK(broken.answers == std::vector<std::string>{"false"});
    CHECK(broken.report.steps.size() == 2);

    opt.engine = EngineKind::Dist;
    const ChangeScript dist_q = script_from("+ 1 2\n+ 2 3\nstep\n? dist 1 3\n? dist 3 1\n");
    CHECK(run_script(empty3, dist_q, opt).answers == std::vector<std::string>{"2", "inf"});
    const ChangeScript dist_w = script_from("+ 1 2\n+ 2 3\nstep\n- 2 3\nstep\n? dist 1 3\n");
    CHECK(run_script(empty3, dist_w, opt).answers == std::vector<std::string>{"inf"});

    opt.engine = EngineKind::Quotient;
    opt.k = 2;
    CHECK(run_script(empty3, dist_q, opt).answers == std::vector<std::string>{"2", "inf"});
}

TEST_CASE("run_script empty script answers on the initial graph") {
    Graph g{3, {{1, 2}}};
    EngineOptions opt;
    const ChangeScript s = script_from("? reach 1 2\n? reach 2 1\n");
    const RunResult r = run_script(g, s, opt);
    CHECK(r.report.steps.empty());
    CHECK(r.answers == std::vector<std::string>{"true", "false"});
}

TEST_CASE("run_script reports the offending step") {
    const Graph g{4, {}};
    EngineOptions opt;
    opt.k = 1;
    // second step inserts an edge that is already present
    const ChangeScript s = script_from("+ 1 2\nstep\n+ 1 2\nstep\n");
    CHECK_THROWS_WITH_AS(run_script(g, s, opt), "step 2: insert of an edge already present",
                         std::runtime_error);
}

TEST_CASE("run_script auto-partitions wide steps") {
    const Graph g{6, {}};
    EngineOptions opt;
    opt.k = 1;  // forces one batch per edge
    const ChangeScript s =
        script_from("+ 1 2\n+ 2 3\n+ 3 4\n+ 4 5\nstep\n? reach 1 5\n? reach 5 1\n");
    const RunResult r = run_script(g, s, opt);
    CHECK(r.report.steps[0].batch_count == 4);
    CHECK(r.answers == std::vector<std::string>{"true", "false"});
}

TEST_CASE("replaying a script reproduces the answers") {
    const Graph g{5, {{1, 2}, {4, 5}}};
    const ChangeScript s =
        script_from("+ 2 3\n+ 3 4\nstep\n- 1 2\nstep\n? reach 2 5\n? reach 1 3\n? reach 2 2\n");
    for (EngineKind kind : {EngineKind::Reach, EngineKind::Dist, EngineKind::Quotient}) {
        EngineOptions opt;
        opt.engine = kind;
        opt.k = 2;
        opt.seed = 17;
        const RunResult first = run_script(g, s, opt);
        const RunResult again = run_script(g, s, opt);
        CHECK(first.answers == again.answers);
        CHECK(first.answers == std::vector<std::string>{"true", "false", "true"});
    }
}

TEST_CASE("verify_fuzz zero steps and determinism") {
    EngineOptions opt;
    const RunReport zero = verify_fuzz(8, 0, 1, opt);
    CHECK(zero.total_mismatches() == 0);
    CHECK(zero.steps.empty());

    const RunReport a = verify_fuzz(8, 25, 42, opt);
    const RunReport b = verify_fuzz(8, 25, 42, opt);
    CHECK(a.total_mismatches() == 0);
    CHECK(format_report(a) == format_report(b));
    std::ostringstream csv_a, csv_b;
    write_report_csv(csv_a, a, false);
    write_report_csv(csv_b, b, false);
    CHECK(csv_a.str() == csv_b.str());  // byte-identical without timings
    CHECK(csv_a.str().find("engine,n,step,") == 0);
}

TEST_CASE("verify_fuzz covers dist and quotient too") {
    EngineOptions opt;
    opt.engine = EngineKind::Dist;
    CHECK(verify_fuzz(6, 15, 3, opt).total_mismatches() == 0);
    opt.engine = EngineKind::Quotient;
    opt.k = 2;
    CHECK(verify_fuzz(6, 4, 3, opt).total_mismatches() == 0);
}

TEST_CASE("bench CSV is strict and well-formed") {
    EngineOptions opt;
    std::ostringstream empty_csv;
    bench({}, 3, opt, empty_csv);
    CHECK(empty_csv.str() == "engine,n,step,phase,micros,valid_primes,invalidated\n");

    std::ostringstream csv;
    bench({12}, 4, opt, csv);
    const auto rows = testutil::parse_strict_csv(csv.str());
    REQUIRE(rows.size() == 1 + 1 + 2 * 4);  // header + init + (update, baseline) per step
    CHECK(rows[0] == std::vector<std::string>{"engine", "n", "step", "phase", "micros",
                                              "valid_primes", "invalidated"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][0] == "reach");
        CHECK(rows[i][1] == "12");
        for (std::size_t f : {2, 4, 5, 6}) {
            CHECK_FALSE(rows[i][f].empty());
            for (char ch : rows[i][f]) CHECK((ch >= '0' && ch <= '9'));
        }
    }
}

TEST_CASE("report CSV includes timing only when asked") {
    EngineOptions opt;
    RunReport report = verify_fuzz(6, 5, 9, opt);
    report.steps[0].update_micros = 1234;  // fake: timings vary, force a visible value
    std::ostringstream with, without;
    write_report_csv(with, report, true);
    write_report_csv(without, report, false);
    CHECK(with.str().find("1234") != std::string::npos);
    CHECK(without.str().find("1234") == std::string::npos);
}

TEST_CASE("parse_engine accepts the three engines") {
    CHECK(parse_engine("reach") == EngineKind::Reach);
    CHECK(parse_engine("dist") == EngineKind::Dist);
    CHECK(parse_engine("quotient") == EngineKind::Quotient);
    CHECK_THROWS_AS(parse_engine("bogus"), std::invalid_argument);
    CHECK(engine_name(EngineKind::Quotient) == "quotient");
}
