#pragma once

#include "graph.hpp"
#include "separators.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace acsd::oracle {

// Vertex caps for the exponential routines; they refuse rather than degrade.
struct OracleLimits {
    int max_n_subsets = 16;
    int max_n_tw = 16;
};

namespace detail {

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g, int cap, const char* who) {
    const int n = g.vertex_count();
    if (cap < 4) throw invalid_input("oracle caps must be at least 4");
    if (n > cap)
        throw cap_exceeded(std::string(who) + ": graph has " + std::to_string(n) +
                           " vertices, cap is " + std::to_string(cap));
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v : g.neighbors(u)) adj[static_cast<std::size_t>(u)] |= (1u << v);
    return adj;
}

inline VertexSet mask_to_set(std::uint32_t mask) {
    VertexSet out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

// Number of components of the graph restricted to `alive`, or early exit at 2.
inline int count_components(const std::vector<std::uint32_t>& adj, std::uint32_t alive, int stop_at) {
    std::uint32_t todo = alive;
    int count = 0;
    while (todo) {
        ++count;
        if (count >= stop_at) return count;
        std::uint32_t reach = todo & (~todo + 1);  // lowest remaining bit
        for (;;) {
            std::uint32_t frontier = reach;
            std::uint32_t grown = reach;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                grown |= adj[static_cast<std::size_t>(v)] & alive;
            }
            if (grown == reach) break;
            reach = grown;
        }
        todo &= ~reach;
    }
    return count;
}

inline bool mask_is_clique(const std::vector<std::uint32_t>& adj, std::uint32_t s) {
    std::uint32_t rest = s;
    while (rest) {
        int v = std::countr_zero(rest);
        rest &= rest - 1;
        if ((s & ~(1u << v) & ~adj[static_cast<std::size_t>(v)]) != 0) return false;
    }
    return true;
}

// Full components of s: components of V \ s whose neighborhood equals s.
inline int count_full_components(const std::vector<std::uint32_t>& adj, std::uint32_t all,
                                 std::uint32_t s) {
    std::uint32_t todo = all & ~s;
    int full = 0;
    while (todo) {
        std::uint32_t reach = todo & (~todo + 1);
        for (;;) {
            std::uint32_t frontier = reach, grown = reach;
            while (frontier) {
                int v = std::countr_zero(frontier);
                frontier &= frontier - 1;
                grown |= adj[static_cast<std::size_t>(v)] & ~s;
            }
            if (grown == reach) break;
            reach = grown;
        }
        std::uint32_t nb = 0;
        std::uint32_t members = reach;
        while (members) {
            int v = std::countr_zero(members);
            members &= members - 1;
            nb |= adj[static_cast<std::size_t>(v)];
        }
        if ((nb & s) == s) ++full;
        todo &= ~reach;
    }
    return full;
}

} // namespace detail

// All non-empty S ⊊ V with at least two full components, by subset sweep.
inline std::vector<Separator> brute_minimal_separators(const Graph& g, OracleLimits limits = {}) {
    auto adj = detail::adjacency_masks(g, limits.max_n_subsets, "brute_minimal_separators");
    const int n = g.vertex_count();
    if (!is_connected(g)) throw invalid_input("brute_minimal_separators: graph must be connected");
    const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<Separator> out;
    for (std::uint32_t s = 1; s < all; ++s) {
        if (detail::count_full_components(adj, all, s) >= 2)
            out.push_back(Separator{detail::mask_to_set(s), std::nullopt, SeparatorOrigin::Enumeration});
    }
    return canonical_order(std::move(out));
}

// Brute minimal separators filtered to almost-cliques, apexes cached.
inline std::vector<Separator> brute_almost_clique_minimal_separators(const Graph& g,
                                                                     OracleLimits limits = {}) {
    std::vector<Separator> out;
    for (auto& s : brute_minimal_separators(g, limits)) {
        auto apexes = almost_clique_apexes(g, s.vertices);
        if (!apexes.empty())
            out.push_back(Separator{s.vertices, std::move(apexes), SeparatorOrigin::Enumeration});
    }
    return out;
}

// Exact treewidth by dynamic programming over elimination prefixes:
// f(S ∪ {v}) = min(f(S ∪ {v}), max(f(S), q(S, v))) where q(S, v) counts the
// vertices outside S ∪ {v} reachable from v through S.
inline int brute_treewidth(const Graph& g, OracleLimits limits = {}) {
    auto adj = detail::adjacency_masks(g, limits.max_n_tw, "brute_treewidth");
    const int n = g.vertex_count();
    if (n == 0) return -1;
    const std::uint32_t all = (1u << n) - 1;
    std::vector<std::int8_t> f(static_cast<std::size_t>(all) + 1, std::numeric_limits<std::int8_t>::max());
    f[0] = -1;
    std::vector<std::uint32_t> comp_nb(static_cast<std::size_t>(n));
    for (std::uint32_t s = 0; s <= all; ++s) {
        if (f[s] == std::numeric_limits<std::int8_t>::max()) continue;
        if (s == all) break;
        // Label components of G[s] once, collect their outside-neighborhoods.
        int ncomp = 0;
        std::uint32_t todo = s;
        std::vector<std::uint32_t> comps;
        while (todo) {
            std::uint32_t reach = todo & (~todo + 1);
            for (;;) {
                std::uint32_t frontier = reach, grown = reach;
                while (frontier) {
                    int v = std::countr_zero(frontier);
                    frontier &= frontier - 1;
                    grown |= adj[static_cast<std::size_t>(v)] & s;
                }
                if (grown == reach) break;
                reach = grown;
            }
            std::uint32_t nb = 0;
            std::uint32_t members = reach;
            while (members) {
                int v = std::countr_zero(members);
                members &= members - 1;
                nb |= adj[static_cast<std::size_t>(v)];
            }
            comps.push_back(nb & ~s);
            todo &= ~reach;
            ++ncomp;
        }
        std::uint32_t rest = all & ~s;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            std::uint32_t vb = 1u << v;
            // Reachable through S: v's own neighbors plus the boundary of every
            // component of G[S] that touches v.
            std::uint32_t reach = adj[static_cast<std::size_t>(v)];
            for (std::uint32_t nb : comps)
                if (nb & vb) reach |= nb;
            int q = std::popcount(reach & ~s & ~vb);
            std::int8_t cand = static_cast<std::int8_t>(std::max<int>(f[s], q));
            if (cand < f[s | vb]) f[s | vb] = cand;
        }
    }
    return f[all];
}

// tw(G ∪ K(S)) == tw(G): the definition of a safe separator, checked exactly.
inline bool check_safety(const Graph& g, const Separator& s, OracleLimits limits = {}) {
    return brute_treewidth(fill_clique(g, s.vertices), limits) == brute_treewidth(g, limits);
}

// Whether g has any clique separator (not necessarily minimal), by subset sweep.
inline bool has_clique_separator(const Graph& g, OracleLimits limits = {}) {
    auto adj = detail::adjacency_masks(g, limits.max_n_subsets, "has_clique_separator");
    const int n = g.vertex_count();
    const std::uint32_t all = (n >= 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t s = 0; s < all; ++s) {
        if (!detail::mask_is_clique(adj, s)) continue;
        if (detail::count_components(adj, all & ~s, 2) >= 2) return true;
    }
    return false;
}

} // namespace acsd::oracle
