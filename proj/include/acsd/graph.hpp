#pragma once

#include "errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace acsd {

using Vertex = int;

// Strictly sorted list of vertex ids. All free functions below assume (and
// check on entry where documented) this canonical form.
using VertexSet = std::vector<Vertex>;

using Edge = std::pair<Vertex, Vertex>;

inline bool vs_is_canonical(const VertexSet& u) {
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i - 1] >= u[i]) return false;
    return true;
}

inline bool vs_contains(const VertexSet& u, Vertex v) {
    return std::binary_search(u.begin(), u.end(), v);
}

inline VertexSet vs_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet vs_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline VertexSet vs_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool vs_is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VertexSet vs_sorted(VertexSet u) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

// Simple undirected graph over contiguous 0-based ids. Immutable after
// construction; "mutating" operations return a new value. External (1-based
// PACE) vertex names are kept alongside so I/O can round-trip them.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, std::span<const Edge> edges, std::vector<int> labels = {}) {
        if (n < 0) throw invalid_input("vertex count must be non-negative");
        std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw invalid_input("edge endpoint out of range: {" + std::to_string(u) + "," +
                                    std::to_string(v) + "}");
            if (u == v) throw invalid_input("self-loop on vertex " + std::to_string(u));
            adj[static_cast<std::size_t>(u)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(u);
        }
        return Graph(std::move(adj), std::move(labels));
    }

    static Graph from_adjacency(std::vector<std::vector<Vertex>> adj, std::vector<int> labels = {}) {
        return Graph(std::move(adj), std::move(labels));
    }

    int vertex_count() const { return n_; }
    long long edge_count() const { return m_; }

    const std::vector<Vertex>& neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    bool adjacent(Vertex u, Vertex v) const {
        check_vertex(u);
        check_vertex(v);
        const auto& a = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(a.begin(), a.end(), v);
    }

    // External 1-based name of an internal id (defaults to id+1).
    int label(Vertex v) const {
        check_vertex(v);
        return labels_[static_cast<std::size_t>(v)];
    }
    const std::vector<int>& labels() const { return labels_; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    VertexSet vertices() const {
        VertexSet all(static_cast<std::size_t>(n_));
        std::iota(all.begin(), all.end(), 0);
        return all;
    }

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw invalid_input("vertex id out of range: " + std::to_string(v));
    }

    void check_vertex_set(const VertexSet& u) const {
        if (!vs_is_canonical(u)) throw invalid_input("vertex set is not strictly sorted");
        if (!u.empty()) {
            check_vertex(u.front());
            check_vertex(u.back());
        }
    }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && adj_ == other.adj_ && labels_ == other.labels_;
    }

private:
    Graph(std::vector<std::vector<Vertex>> adj, std::vector<int> labels)
        : n_(static_cast<int>(adj.size())), adj_(std::move(adj)), labels_(std::move(labels)) {
        m_ = 0;
        for (auto& row : adj_) {
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            m_ += static_cast<long long>(row.size());
        }
        m_ /= 2;
        if (labels_.empty()) {
            labels_.resize(static_cast<std::size_t>(n_));
            std::iota(labels_.begin(), labels_.end(), 1);
        }
        if (static_cast<int>(labels_.size()) != n_)
            throw invalid_input("label list length does not match vertex count");
    }

    int n_ = 0;
    long long m_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<int> labels_;
};

// N_g(u): vertices adjacent to some member of u but outside u.
inline VertexSet neighborhood(const Graph& g, const VertexSet& u) {
    g.check_vertex_set(u);
    std::vector<char> in_u(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : u) in_u[static_cast<std::size_t>(v)] = 1;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    VertexSet out;
    for (Vertex v : u)
        for (Vertex w : g.neighbors(v))
            if (!in_u[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Component id per vertex of g with `removed` deleted; removed vertices get -1.
// Ids are assigned in ascending order of the component's smallest vertex.
inline std::vector<int> component_labels(const Graph& g, const VertexSet& removed) {
    const int n = g.vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(n), -2);
    for (Vertex v : removed) comp[static_cast<std::size_t>(v)] = -1;
    int next = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -2) continue;
        comp[static_cast<std::size_t>(s)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (comp[static_cast<std::size_t>(w)] == -2) {
                    comp[static_cast<std::size_t>(w)] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

} // namespace detail

// Connected components of g with `removed` deleted, ordered by smallest member.
inline std::vector<VertexSet> components(const Graph& g, const VertexSet& removed) {
    g.check_vertex_set(removed);
    auto comp = detail::component_labels(g, removed);
    int count = 0;
    for (int c : comp) count = std::max(count, c + 1);
    std::vector<VertexSet> out(static_cast<std::size_t>(count));
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (comp[static_cast<std::size_t>(v)] >= 0)
            out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
    return out;
}

inline bool is_connected(const Graph& g) {
    return g.vertex_count() <= 1 || components(g, {}).size() == 1;
}

// g plus the given edges (already-present edges are no-ops).
inline Graph add_edges(const Graph& g, std::span<const Edge> extra) {
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(g.vertex_count()));
    for (Vertex v = 0; v < g.vertex_count(); ++v) adj[static_cast<std::size_t>(v)] = g.neighbors(v);
    for (auto [u, v] : extra) {
        g.check_vertex(u);
        g.check_vertex(v);
        if (u == v) throw invalid_input("self-loop on vertex " + std::to_string(u));
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    return Graph::from_adjacency(std::move(adj), g.labels());
}

// g with u filled into a clique: g ∪ K(u).
inline Graph fill_clique(const Graph& g, const VertexSet& u) {
    g.check_vertex_set(u);
    std::vector<Edge> extra;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (!g.adjacent(u[i], u[j])) extra.emplace_back(u[i], u[j]);
    return add_edges(g, extra);
}

// g[u] re-labelled to 0..|u|-1, plus the map from new ids back to g's ids.
inline std::pair<Graph, std::vector<Vertex>> induced_subgraph(const Graph& g, const VertexSet& u) {
    g.check_vertex_set(u);
    std::vector<int> to_new(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < u.size(); ++i) to_new[static_cast<std::size_t>(u[i])] = static_cast<int>(i);
    std::vector<std::vector<Vertex>> adj(u.size());
    std::vector<int> labels(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        labels[i] = g.label(u[i]);
        for (Vertex w : g.neighbors(u[i])) {
            int nw = to_new[static_cast<std::size_t>(w)];
            if (nw >= 0) adj[i].push_back(nw);
        }
    }
    return {Graph::from_adjacency(std::move(adj), std::move(labels)), VertexSet(u)};
}

inline bool is_clique(const Graph& g, const VertexSet& u) {
    g.check_vertex_set(u);
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (!g.adjacent(u[i], u[j])) return false;
    return true;
}

} // namespace acsd
