#include "algreach/script.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace algreach {

namespace {

// strips comments and returns the whitespace-separated tokens
std::vector<std::string> tokenize(const std::string& line) {
    std::string body = line;
    if (const auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
    std::istringstream ss(body);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    return tokens;
}

NodeId parse_node(const std::string& tok, int line) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected a node index, got '" + tok + "'");
    }
}

void close_step(ChangeScript& script, ScriptStep& step, int line) {
    std::set<Edge> ins(step.inserts.begin(), step.inserts.end());
    for (const Edge& e : step.deletes) {
        if (ins.contains(e))
            throw ParseError(line, "edge inserted and deleted in the same step");
    }
    script.steps.push_back(std::move(step));
    step = ScriptStep{};
}

}  // namespace

Graph parse_graph(std::istream& in) {
    Graph g;
    std::string line;
    int lineno = 0;
    long long m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (m < 0) {
            if (tokens.size() != 2) throw ParseError(lineno, "expected header 'n m'");
            g.n = parse_node(tokens[0], lineno);
            m = parse_node(tokens[1], lineno);
            if (g.n < 1) throw ParseError(lineno, "n must be positive");
            if (m < 0) throw ParseError(lineno, "edge count must be nonnegative");
            continue;
        }
        if (tokens.size() != 2) throw ParseError(lineno, "expected an edge 'u v'");
        const Edge e{parse_node(tokens[0], lineno), parse_node(tokens[1], lineno)};
        if (e.from < 1 || e.from > g.n || e.to < 1 || e.to > g.n)
            throw ParseError(lineno, "edge endpoint out of range");
        g.edges.insert(e);
        --m;
    }
    if (m < 0) throw ParseError(lineno, "missing 'n m' header");
    if (m != 0) throw ParseError(lineno, "edge count does not match header");
    return g;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return parse_graph(in);
}

ChangeScript parse_script(std::istream& in) {
    ChangeScript script;
    ScriptStep step;
    bool in_queries = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& head = tokens[0];
        if (head == "?") {
            if (tokens.size() != 4) throw ParseError(lineno, "expected '? reach|dist u v'");
            Query q;
            if (tokens[1] == "reach")
                q.kind = Query::Kind::Reach;
            else if (tokens[1] == "dist")
                q.kind = Query::Kind::Dist;
            else
                throw ParseError(lineno, "unknown query kind '" + tokens[1] + "'");
            q.u = parse_node(tokens[2], lineno);
            q.v = parse_node(tokens[3], lineno);
            if (!in_queries && !(step.inserts.empty() && step.deletes.empty()))
                close_step(script, step, lineno);  // queries close a trailing open step
            in_queries = true;
            script.queries.push_back(q);
            continue;
        }
        if (in_queries) throw ParseError(lineno, "change lines must precede query lines");
        if (head == "step") {
            if (tokens.size() != 1) throw ParseError(lineno, "unexpected tokens after 'step'");
            close_step(script, step, lineno);
            continue;
        }
        if (head == "+" || head == "-") {
            if (tokens.size() != 3) throw ParseError(lineno, "expected '" + head + " u v'");
            const Edge e{parse_node(tokens[1], lineno), parse_node(tokens[2], lineno)};
            (head == "+" ? step.inserts : step.deletes).push_back(e);
            continue;
        }
        throw ParseError(lineno, "unrecognized directive '" + head + "'");
    }
    if (!step.inserts.empty() || !step.deletes.empty()) close_step(script, step, lineno);
    return script;
}

ChangeScript load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open script file: " + path);
    return parse_script(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const Edge& e : g.edges) out << e.from << ' ' << e.to << '\n';
}

}  // namespace algreach
