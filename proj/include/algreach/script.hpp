#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "algreach/change.hpp"

namespace algreach {

// Graph file: first line "n m", then m lines "u v" (1-indexed). Change
// script: lines "+ u v", "- u v", a bare "step" closing each step, then
// optional query lines "? reach u v" / "? dist u v". '#' starts a comment;
// blank lines are skipped; a trailing open step is auto-closed.

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ": " + message), line(line_) {}
};

struct ScriptStep {
    std::vector<Edge> inserts;
    std::vector<Edge> deletes;
};

struct Query {
    enum class Kind { Reach, Dist };
    Kind kind = Kind::Reach;
    NodeId u = 0;
    NodeId v = 0;
};

struct ChangeScript {
    std::vector<ScriptStep> steps;
    std::vector<Query> queries;
};

Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);

ChangeScript parse_script(std::istream& in);
ChangeScript load_script(const std::string& path);

void write_graph(std::ostream& out, const Graph& g);

}  // namespace algreach
