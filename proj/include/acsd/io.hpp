#pragma once

#include "cliquesep.hpp"
#include "graph.hpp"
#include "triangulation.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace acsd {

// Outcome of parsing a .gr stream; warnings are counted, not fatal.
struct ParseResult {
    Graph graph;
    long long declared_edges = 0;
    long long duplicate_edges = 0;
    bool edge_count_mismatch = false;
};

namespace detail {

inline long long parse_positive(const std::string& tok, int line, const char* what) {
    if (tok.empty()) throw parse_error(std::string("missing ") + what, line);
    for (char c : tok)
        if (c < '0' || c > '9')
            throw parse_error(std::string("expected a positive integer for ") + what + ", got '" +
                                  tok + "'",
                              line);
    try {
        return std::stoll(tok);
    } catch (...) {
        throw parse_error(std::string("integer out of range: '") + tok + "'", line);
    }
}

} // namespace detail

// PACE 2017 .gr reader: 'c' comment lines, one 'p tw <n> <m>' header, then
// '<u> <v>' edge lines with 1-based endpoints.
inline ParseResult parse_gr(std::istream& in) {
    ParseResult res;
    std::string line;
    int lineno = 0;
    bool seen_header = false;
    long long n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<Vertex>> adj;  // built at the end
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank line
        if (first == "c") continue;
        if (first == "p") {
            if (seen_header) throw parse_error("duplicate 'p' header", lineno);
            std::string kind, ntok, mtok, extra;
            if (!(ls >> kind >> ntok >> mtok) || kind != "tw")
                throw parse_error("header must be 'p tw <n> <m>'", lineno);
            if (ls >> extra) throw parse_error("trailing tokens after header", lineno);
            n = detail::parse_positive(ntok, lineno, "vertex count");
            res.declared_edges = detail::parse_positive(mtok, lineno, "edge count");
            if (n > (1 << 30)) throw parse_error("vertex count too large", lineno);
            seen_header = true;
            continue;
        }
        if (!seen_header) throw parse_error("edge line before 'p tw' header", lineno);
        std::string vtok, extra;
        if (!(ls >> vtok)) throw parse_error("edge line needs two endpoints", lineno);
        if (ls >> extra) throw parse_error("trailing tokens on edge line", lineno);
        long long u = detail::parse_positive(first, lineno, "edge endpoint");
        long long v = detail::parse_positive(vtok, lineno, "edge endpoint");
        if (u < 1 || u > n || v < 1 || v > n)
            throw parse_error("edge endpoint out of range 1.." + std::to_string(n), lineno);
        if (u == v) throw parse_error("self-loop on vertex " + std::to_string(u), lineno);
        edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
    }
    if (!seen_header) throw parse_error("missing 'p tw' header", lineno);
    res.graph = Graph::from_edges(static_cast<int>(n), edges);
    res.duplicate_edges = static_cast<long long>(edges.size()) - res.graph.edge_count();
    res.edge_count_mismatch = res.graph.edge_count() != res.declared_edges;
    return res;
}

// Canonical .gr writer: header plus the sorted edge list, 1-based.
inline void write_gr(std::ostream& out, const Graph& g) {
    out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << (u + 1) << ' ' << (v + 1) << '\n';
}

namespace detail {

inline void write_td_bags(std::ostream& out, const std::vector<VertexSet>& bags,
                          const std::vector<std::pair<int, int>>& tree_edges, int n) {
    std::size_t max_bag = 0;
    for (const auto& b : bags) max_bag = std::max(max_bag, b.size());
    out << "s td " << bags.size() << ' ' << max_bag << ' ' << n << '\n';
    for (std::size_t i = 0; i < bags.size(); ++i) {
        out << "b " << (i + 1);
        for (Vertex v : bags[i]) out << ' ' << (v + 1);
        out << '\n';
    }
    for (auto [a, b] : tree_edges) out << (a + 1) << ' ' << (b + 1) << '\n';
}

} // namespace detail

// PACE .td writer; bags of a triangulation are its clique-tree bags.
inline void write_td(std::ostream& out, const Triangulation& t) {
    CliqueTree ct = clique_tree(t.h);
    detail::write_td_bags(out, ct.bags, ct.tree_edges, t.h.vertex_count());
}

inline void write_td(std::ostream& out, const Decomposition& d, int n) {
    detail::write_td_bags(out, d.atoms, d.tree_edges, n);
}

} // namespace acsd
