#pragma once

#include "detail/bitrows.hpp"
#include "graph.hpp"
#include "separators.hpp"

#include <iostream>
#include <optional>
#include <vector>

namespace acsd {

enum class EliminationStrategy { MD, MF, MAF };

enum class TriangulationMethod { MD, MF, MAF, MMD, MMF, MMAF, MCSM };

inline const char* name(EliminationStrategy s) {
    switch (s) {
        case EliminationStrategy::MD: return "md";
        case EliminationStrategy::MF: return "mf";
        case EliminationStrategy::MAF: return "maf";
    }
    return "?";
}

inline const char* name(TriangulationMethod m) {
    switch (m) {
        case TriangulationMethod::MD: return "md";
        case TriangulationMethod::MF: return "mf";
        case TriangulationMethod::MAF: return "maf";
        case TriangulationMethod::MMD: return "mmd";
        case TriangulationMethod::MMF: return "mmf";
        case TriangulationMethod::MMAF: return "mmaf";
        case TriangulationMethod::MCSM: return "mcsm";
    }
    return "?";
}

// One step of the elimination game: vertex, its filled neighborhood in the
// current graph, and whether that neighborhood was already a clique.
struct FillRecord {
    int step;
    Vertex vertex;
    VertexSet filled_neighborhood;
    bool was_clique;
};

struct EliminationRun {
    std::vector<Vertex> order;
    std::vector<FillRecord> fill_records;
    Graph h;  // input graph plus all fills; the order is a PEO of h
};

struct Triangulation {
    Graph base;
    Graph h;
    TriangulationMethod method;
    std::vector<Edge> fill_edges;
    bool minimal_claimed;
};

// Tree-decomposition of a chordal graph whose bags are its maximal cliques.
struct CliqueTree {
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> tree_edges;
    std::vector<VertexSet> edge_separators;  // per tree edge, the bag intersection
};

// ---------------------------------------------------------------------------
// Elimination game

// Runs the elimination game with the given selection strategy. Scores are
// taken in the current partially-filled graph; ties break to the lowest id.
// MAF scores fill/degree, with degree-0 vertices scoring 0.
inline EliminationRun eliminate(const Graph& g, EliminationStrategy strategy) {
    const int n = g.vertex_count();
    if (n == 0) throw invalid_input("eliminate: empty graph");

    detail::BitRows h(g);
    detail::BitMask alive(n, true);
    std::vector<long long> deg(static_cast<std::size_t>(n)), fill(static_cast<std::size_t>(n), 0);
    for (Vertex u = 0; u < n; ++u) deg[static_cast<std::size_t>(u)] = g.degree(u);
    // fill(u) = missing pairs inside N(u): C(deg,2) minus present pairs.
    for (Vertex u = 0; u < n; ++u) {
        long long present = 0;
        for (Vertex w : g.neighbors(u)) present += h.count_common(u, w, alive.data());
        fill[static_cast<std::size_t>(u)] =
            deg[static_cast<std::size_t>(u)] * (deg[static_cast<std::size_t>(u)] - 1) / 2 - present / 2;
    }

    // a scores strictly less than b?
    auto better = [&](Vertex a, Vertex b) {
        auto da = deg[static_cast<std::size_t>(a)], db = deg[static_cast<std::size_t>(b)];
        auto fa = fill[static_cast<std::size_t>(a)], fb = fill[static_cast<std::size_t>(b)];
        switch (strategy) {
            case EliminationStrategy::MD: return da < db;
            case EliminationStrategy::MF: return fa < fb;
            case EliminationStrategy::MAF: {
                bool za = (fa == 0), zb = (fb == 0);  // ratio is 0 iff fill is 0
                if (za || zb) return za && !zb;
                return fa * db < fb * da;
            }
        }
        return false;
    };

    EliminationRun run;
    run.order.reserve(static_cast<std::size_t>(n));
    std::vector<Edge> fills;

    for (int step = 1; step <= n; ++step) {
        Vertex v = -1;
        for (Vertex c = 0; c < n; ++c) {
            if (!alive.test(c)) continue;
            if (v < 0 || better(c, v)) v = c;
        }

        VertexSet s;
        {
            const std::uint64_t* rv = h.row(v);
            for (int w = 0; w < alive.words(); ++w) {
                std::uint64_t bits = rv[w] & alive.data()[w];
                while (bits) {
                    s.push_back((w << 6) + std::countr_zero(bits));
                    bits &= bits - 1;
                }
            }
        }
        run.fill_records.push_back({step, v, s, fill[static_cast<std::size_t>(v)] == 0});
        run.order.push_back(v);

        // Retire v, then fill its neighborhood.
        alive.clear(v);
        for (Vertex u : s) {
            long long missing_with_v =
                deg[static_cast<std::size_t>(u)] - 1 - h.count_common(u, v, alive.data());
            fill[static_cast<std::size_t>(u)] -= missing_with_v;
            deg[static_cast<std::size_t>(u)] -= 1;
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                Vertex a = s[i], b = s[j];
                if (h.test(a, b)) continue;
                long long cab = h.count_common(a, b, alive.data());
                fill[static_cast<std::size_t>(a)] += deg[static_cast<std::size_t>(a)] - cab;
                fill[static_cast<std::size_t>(b)] += deg[static_cast<std::size_t>(b)] - cab;
                const std::uint64_t* ra = h.row(a);
                const std::uint64_t* rb = h.row(b);
                for (int w = 0; w < alive.words(); ++w) {
                    std::uint64_t bits = ra[w] & rb[w] & alive.data()[w];
                    while (bits) {
                        fill[static_cast<std::size_t>((w << 6) + std::countr_zero(bits))] -= 1;
                        bits &= bits - 1;
                    }
                }
                h.set(a, b);
                h.set(b, a);
                deg[static_cast<std::size_t>(a)] += 1;
                deg[static_cast<std::size_t>(b)] += 1;
                fills.emplace_back(a, b);
            }
        }
    }

    run.h = add_edges(g, fills);
    return run;
}

// ---------------------------------------------------------------------------
// Chordality, PEO, clique trees

namespace detail {

// Maximum cardinality search; returns the visit order. Ties break to the
// lowest id. The reversed visit order is a PEO iff the graph is chordal.
inline std::vector<Vertex> mcs_order(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> order;
    order.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        Vertex v = -1;
        for (Vertex c = 0; c < n; ++c)
            if (!visited[static_cast<std::size_t>(c)] &&
                (v < 0 || weight[static_cast<std::size_t>(c)] > weight[static_cast<std::size_t>(v)]))
                v = c;
        visited[static_cast<std::size_t>(v)] = 1;
        order.push_back(v);
        for (Vertex w : g.neighbors(v))
            if (!visited[static_cast<std::size_t>(w)]) ++weight[static_cast<std::size_t>(w)];
    }
    return order;
}

} // namespace detail

// Perfect elimination order of g, if one exists (i.e. iff g is chordal).
inline std::optional<std::vector<Vertex>> peo(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<Vertex> order = detail::mcs_order(g);
    std::reverse(order.begin(), order.end());
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    detail::BitRows adj(g);
    for (Vertex v = 0; v < n; ++v) {
        Vertex first = -1;
        for (Vertex w : g.neighbors(v))
            if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)] &&
                (first < 0 || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(first)]))
                first = w;
        if (first < 0) continue;
        for (Vertex w : g.neighbors(v))
            if (w != first && pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)] &&
                !adj.test(first, w))
                return std::nullopt;
    }
    return order;
}

inline bool is_chordal(const Graph& g) { return peo(g).has_value(); }

namespace detail {

inline bool valid_clique_tree(const Graph& h, const CliqueTree& t) {
    const int n = h.vertex_count();
    std::vector<int> bag_count(static_cast<std::size_t>(n), 0), sep_count(static_cast<std::size_t>(n), 0);
    for (const auto& b : t.bags)
        for (Vertex v : b) ++bag_count[static_cast<std::size_t>(v)];
    for (const auto& s : t.edge_separators)
        for (Vertex v : s) ++sep_count[static_cast<std::size_t>(v)];
    for (Vertex v = 0; v < n; ++v) {
        if (bag_count[static_cast<std::size_t>(v)] == 0) return false;
        // Occurrence sets are connected iff each vertex lies in exactly
        // (its bag count - 1) edge intersections.
        if (sep_count[static_cast<std::size_t>(v)] != bag_count[static_cast<std::size_t>(v)] - 1)
            return false;
    }
    return true;
}

// Maximum-weight spanning tree of the clique-intersection graph; any such
// tree is a valid clique tree. Quadratic; used as the fallback path.
inline CliqueTree clique_tree_mst(const Graph& h, std::vector<VertexSet> bags) {
    CliqueTree t;
    t.bags = std::move(bags);
    const int k = static_cast<int>(t.bags.size());
    if (k <= 1) return t;
    std::vector<BitMask> bagbits;
    bagbits.reserve(static_cast<std::size_t>(k));
    for (const auto& b : t.bags) {
        BitMask m(h.vertex_count());
        for (Vertex v : b) m.set(v);
        bagbits.push_back(std::move(m));
    }
    auto weight = [&](int i, int j) {
        int total = 0;
        for (int w = 0; w < bagbits[0].words(); ++w)
            total += std::popcount(bagbits[static_cast<std::size_t>(i)].data()[w] &
                                   bagbits[static_cast<std::size_t>(j)].data()[w]);
        return total;
    };
    std::vector<char> in_tree(static_cast<std::size_t>(k), 0);
    std::vector<int> best(static_cast<std::size_t>(k), -1), best_to(static_cast<std::size_t>(k), -1);
    in_tree[0] = 1;
    for (int j = 1; j < k; ++j) {
        best[static_cast<std::size_t>(j)] = weight(0, j);
        best_to[static_cast<std::size_t>(j)] = 0;
    }
    for (int added = 1; added < k; ++added) {
        int pick = -1;
        for (int j = 0; j < k; ++j)
            if (!in_tree[static_cast<std::size_t>(j)] &&
                (pick < 0 || best[static_cast<std::size_t>(j)] > best[static_cast<std::size_t>(pick)]))
                pick = j;
        in_tree[static_cast<std::size_t>(pick)] = 1;
        t.tree_edges.emplace_back(best_to[static_cast<std::size_t>(pick)], pick);
        t.edge_separators.push_back(
            vs_intersection(t.bags[static_cast<std::size_t>(best_to[static_cast<std::size_t>(pick)])],
                            t.bags[static_cast<std::size_t>(pick)]));
        for (int j = 0; j < k; ++j)
            if (!in_tree[static_cast<std::size_t>(j)]) {
                int w = weight(pick, j);
                if (w > best[static_cast<std::size_t>(j)]) {
                    best[static_cast<std::size_t>(j)] = w;
                    best_to[static_cast<std::size_t>(j)] = pick;
                }
            }
    }
    return t;
}

} // namespace detail (clique tree helpers)

// Maximal cliques of a chordal graph arranged into a clique tree. Bags are
// pairwise distinct; adjacent-bag intersections are the minimal separators.
inline CliqueTree clique_tree(const Graph& h) {
    auto order_opt = peo(h);
    if (!order_opt) throw invalid_input("clique_tree: graph is not chordal");
    const auto& order = *order_opt;
    const int n = h.vertex_count();

    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

    std::vector<VertexSet> madj(static_cast<std::size_t>(n));
    std::vector<Vertex> follower(static_cast<std::size_t>(n), -1);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex w : h.neighbors(v))
            if (pos[static_cast<std::size_t>(w)] > pos[static_cast<std::size_t>(v)]) {
                madj[static_cast<std::size_t>(v)].push_back(w);
                Vertex& f = follower[static_cast<std::size_t>(v)];
                if (f < 0 || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(f)]) f = w;
            }
        std::sort(madj[static_cast<std::size_t>(v)].begin(), madj[static_cast<std::size_t>(v)].end());
    }

    // C_v = {v} ∪ madj(v) is subsumed by C_u exactly when follower(u) = v and
    // |madj(u)| = |madj(v)| + 1; chase those links to reach the maximal clique.
    std::vector<Vertex> swallower(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        Vertex u = order[static_cast<std::size_t>(i)];
        Vertex v = follower[static_cast<std::size_t>(u)];
        if (v >= 0 && swallower[static_cast<std::size_t>(v)] < 0 &&
            madj[static_cast<std::size_t>(u)].size() == madj[static_cast<std::size_t>(v)].size() + 1)
            swallower[static_cast<std::size_t>(v)] = u;
    }
    auto clique_of = [&](Vertex v) {
        while (swallower[static_cast<std::size_t>(v)] >= 0) v = swallower[static_cast<std::size_t>(v)];
        return v;
    };

    CliqueTree t;
    std::vector<int> bag_index(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        Vertex v = order[static_cast<std::size_t>(i)];
        if (swallower[static_cast<std::size_t>(v)] >= 0) continue;
        bag_index[static_cast<std::size_t>(v)] = static_cast<int>(t.bags.size());
        VertexSet bag = madj[static_cast<std::size_t>(v)];
        bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
        t.bags.push_back(std::move(bag));
    }
    std::vector<int> roots;
    for (int i = 0; i < n; ++i) {
        Vertex v = order[static_cast<std::size_t>(i)];
        int bi = bag_index[static_cast<std::size_t>(v)];
        if (bi < 0) continue;
        Vertex f = follower[static_cast<std::size_t>(v)];
        int parent = (f < 0) ? -1 : bag_index[static_cast<std::size_t>(clique_of(f))];
        if (parent < 0 || parent == bi) {
            roots.push_back(bi);
            continue;
        }
        t.tree_edges.emplace_back(parent, bi);
        t.edge_separators.push_back(madj[static_cast<std::size_t>(v)]);
    }
    // Disconnected chordal input: join component roots so the result is a tree.
    for (std::size_t i = 1; i < roots.size(); ++i) {
        t.tree_edges.emplace_back(roots[i - 1], roots[i]);
        t.edge_separators.push_back(
            vs_intersection(t.bags[static_cast<std::size_t>(roots[i - 1])],
                            t.bags[static_cast<std::size_t>(roots[i])]));
    }

    if (!detail::valid_clique_tree(h, t)) {
        // Parent links failed coherence; rebuild by maximum-weight spanning tree.
        return detail::clique_tree_mst(h, std::move(t.bags));
    }
    return t;
}

// Deduplicated, canonically ordered edge separators of a clique tree of h:
// exactly the minimal separators of the chordal graph h.
inline std::vector<Separator> minimal_separators_chordal(const Graph& h) {
    auto t = clique_tree(h);
    std::vector<Separator> out;
    out.reserve(t.edge_separators.size());
    for (auto& s : t.edge_separators)
        if (!s.empty())
            out.push_back(Separator{std::move(s), std::nullopt, SeparatorOrigin::ChordalExtraction});
    return canonical_order(std::move(out));
}

// ---------------------------------------------------------------------------
// Minimalization scheme and MCS-M

// Minimal separators of g contained in s, where s is the filled neighborhood
// of an eliminated vertex (so s = N(C) for some full component C): the
// neighborhoods of the components of g \ s that are proper subsets of s, plus
// s itself when it has two full components.
inline std::vector<Separator> minimal_separators_within(const Graph& g, const VertexSet& s) {
    g.check_vertex_set(s);
    if (s.empty()) throw invalid_input("minimal_separators_within: empty set");
    std::vector<Separator> out;
    int full = 0;
    for (const auto& d : components(g, s)) {
        VertexSet nd = neighborhood(g, d);
        if (nd == s) {
            ++full;
            continue;
        }
        if (!nd.empty())
            out.push_back(Separator{std::move(nd), std::nullopt, SeparatorOrigin::ChordalExtraction});
    }
    if (full >= 2)
        out.push_back(Separator{s, std::nullopt, SeparatorOrigin::ChordalExtraction});
    out = canonical_order(std::move(out));
    for (const auto& sep : out)
        if (!is_minimal_separator(g, sep.vertices))
            throw internal_error("minimal_separators_within: precondition violated, result not minimal");
    return out;
}

namespace detail {

inline std::vector<Edge> edge_difference(const Graph& big, const Graph& small) {
    std::vector<Edge> out;
    for (auto [u, v] : big.edges())
        if (!small.adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

} // namespace detail

// Minimal triangulation via the minimalization scheme: run the elimination
// game, fill only the minimal separators found inside each non-clique filled
// neighborhood, and repeat on the partially filled graph until it is chordal.
inline Triangulation minimalize(const Graph& g, EliminationStrategy strategy) {
    const int n = g.vertex_count();
    if (n == 0) throw invalid_input("minimalize: empty graph");
    if (!is_connected(g)) throw invalid_input("minimalize: graph must be connected");
    TriangulationMethod method = strategy == EliminationStrategy::MD    ? TriangulationMethod::MMD
                                 : strategy == EliminationStrategy::MF  ? TriangulationMethod::MMF
                                                                        : TriangulationMethod::MMAF;
    Graph cur = g;
    int stalls = 0;
    bool used_fallback = false;
    for (int round = 0; round <= n; ++round) {
        EliminationRun run = eliminate(cur, strategy);
        if (run.h.edge_count() == cur.edge_count())
            return Triangulation{g, cur, method, detail::edge_difference(cur, g), !used_fallback};

        detail::BitRows seen(cur);
        std::vector<Edge> new_edges;
        auto fill_set = [&](const VertexSet& s) {
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j)
                    if (!seen.test(s[i], s[j])) {
                        seen.set(s[i], s[j]);
                        seen.set(s[j], s[i]);
                        new_edges.emplace_back(s[i], s[j]);
                    }
        };
        for (const auto& rec : run.fill_records) {
            if (rec.was_clique) continue;
            for (const auto& sep : minimal_separators_within(cur, rec.filled_neighborhood))
                fill_set(sep.vertices);
        }

        if (new_edges.empty()) {
            ++stalls;
            used_fallback = true;
            std::cerr << "acsd: minimalize stalled, filling complete neighborhoods\n";
            if (stalls >= 2)
                return Triangulation{g, run.h, method, detail::edge_difference(run.h, g), false};
            for (const auto& rec : run.fill_records)
                if (!rec.was_clique) fill_set(rec.filled_neighborhood);
            if (new_edges.empty())
                return Triangulation{g, run.h, method, detail::edge_difference(run.h, g), false};
        } else {
            stalls = 0;
        }
        cur = add_edges(cur, new_edges);
    }
    std::cerr << "acsd: minimalize hit the round cap\n";
    EliminationRun run = eliminate(cur, strategy);
    return Triangulation{g, run.h, method, detail::edge_difference(run.h, g), false};
}

// MCS-M: maximum cardinality search producing a minimal triangulation
// directly. At each step the maximum-weight unnumbered vertex v is chosen
// (ties to the lowest id); every unnumbered u reachable from v through
// unnumbered intermediates of weight strictly below weight(u) gets its weight
// bumped, and {u, v} becomes a fill edge when not already present.
inline Triangulation mcs_m(const Graph& g) {
    const int n = g.vertex_count();
    if (n == 0) throw invalid_input("mcs_m: empty graph");
    if (!is_connected(g)) throw invalid_input("mcs_m: graph must be connected");

    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    std::vector<char> numbered(static_cast<std::size_t>(n), 0);

    std::vector<Edge> fills;
    // Per-step scratch: d[u] = min over v-u paths of the max interior weight.
    const int INF = n + 2;
    std::vector<int> d(static_cast<std::size_t>(n));
    std::vector<std::vector<Vertex>> queue(static_cast<std::size_t>(n) + 2);

    for (int step = 0; step < n; ++step) {
        Vertex v = -1;
        for (Vertex c = 0; c < n; ++c)
            if (!numbered[static_cast<std::size_t>(c)] &&
                (v < 0 || weight[static_cast<std::size_t>(c)] > weight[static_cast<std::size_t>(v)]))
                v = c;

        std::fill(d.begin(), d.end(), INF);
        d[static_cast<std::size_t>(v)] = -1;
        for (auto& q : queue) q.clear();
        queue[0].push_back(v);  // key is d + 1
        for (int key = 0; key <= n + 1; ++key) {
            for (std::size_t qi = 0; qi < queue[static_cast<std::size_t>(key)].size(); ++qi) {
                Vertex x = queue[static_cast<std::size_t>(key)][qi];
                if (d[static_cast<std::size_t>(x)] != key - 1) continue;
                int through = (x == v) ? -1
                                       : std::max(d[static_cast<std::size_t>(x)],
                                                  weight[static_cast<std::size_t>(x)]);
                for (Vertex y : g.neighbors(x)) {
                    if (numbered[static_cast<std::size_t>(y)] || y == v) continue;
                    if (through < d[static_cast<std::size_t>(y)]) {
                        d[static_cast<std::size_t>(y)] = through;
                        queue[static_cast<std::size_t>(through + 1)].push_back(y);
                    }
                }
            }
        }

        numbered[static_cast<std::size_t>(v)] = 1;
        for (Vertex u = 0; u < n; ++u) {
            if (numbered[static_cast<std::size_t>(u)]) continue;
            if (d[static_cast<std::size_t>(u)] >= weight[static_cast<std::size_t>(u)] ||
                d[static_cast<std::size_t>(u)] >= INF)
                continue;
            ++weight[static_cast<std::size_t>(u)];
            if (!g.adjacent(u, v)) fills.emplace_back(std::min(u, v), std::max(u, v));
        }
    }

    Graph h = add_edges(g, fills);
    return Triangulation{g, h, TriangulationMethod::MCSM, std::move(fills), true};
}

// True iff t.h is a minimal triangulation of g: chordal, a supergraph, and
// removing any single fill edge breaks chordality.
inline bool verify_minimal(const Graph& g, const Triangulation& t) {
    if (t.h.vertex_count() != g.vertex_count()) return false;
    for (auto [u, v] : g.edges())
        if (!t.h.adjacent(u, v)) return false;
    if (!is_chordal(t.h)) return false;
    auto fills = detail::edge_difference(t.h, g);
    for (auto removed : fills) {
        std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(t.h.vertex_count()));
        for (Vertex v = 0; v < t.h.vertex_count(); ++v) adj[static_cast<std::size_t>(v)] = t.h.neighbors(v);
        std::erase(adj[static_cast<std::size_t>(removed.first)], removed.second);
        std::erase(adj[static_cast<std::size_t>(removed.second)], removed.first);
        if (is_chordal(Graph::from_adjacency(std::move(adj), t.h.labels()))) return false;
    }
    return true;
}

} // namespace acsd
