#pragma once

#include "bench.hpp"
#include "cliquesep.hpp"
#include "graph.hpp"
#include "separators.hpp"
#include "triangulation.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <vector>

namespace acsd {

enum class ListMethod { Heuristic, Standard, All, MaxExpanded };

inline const char* name(ListMethod m) {
    switch (m) {
        case ListMethod::Heuristic: return "heuristic";
        case ListMethod::Standard: return "standard";
        case ListMethod::All: return "all";
        case ListMethod::MaxExpanded: return "max";
    }
    return "?";
}

struct AcsResult {
    std::vector<Separator> separators;
    ListMethod method = ListMethod::All;
    std::optional<TriangulationMethod> triangulation_method;
    double elapsed_ms = 0;
};

struct PreprocessResult {
    Graph filled;
    int rounds = 0;
    std::vector<std::vector<Separator>> filled_separators;  // one list per round
    Decomposition decomposition;
    BenchRecord stats;
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Crossing test against a separator r given component labels of g \ r:
// true iff s meets two different components.
inline bool crosses_labeled(const std::vector<int>& labels_of_r, const VertexSet& s) {
    int seen = -1;
    for (Vertex v : s) {
        int c = labels_of_r[static_cast<std::size_t>(v)];
        if (c < 0) continue;
        if (seen == -1)
            seen = c;
        else if (c != seen)
            return true;
    }
    return false;
}

// Greedy adoption state: adopted separators plus cached component labels so
// each crossing check costs O(|candidate|).
class NonCrossingSet {
public:
    explicit NonCrossingSet(const Graph& g) : g_(g) {}

    bool contains(const VertexSet& s) const { return members_.count(s) > 0; }

    bool crosses_any(const VertexSet& s) const {
        for (const auto& l : labels_)
            if (crosses_labeled(l, s)) return true;
        return false;
    }

    // Adopts iff s is new and crosses no member; returns whether adopted.
    bool try_adopt(Separator s) {
        if (contains(s.vertices) || crosses_any(s.vertices)) return false;
        labels_.push_back(acsd::detail::component_labels(g_, s.vertices));
        members_.insert(s.vertices);
        adopted_.push_back(std::move(s));
        return true;
    }

    std::vector<Separator> take() { return std::move(adopted_); }

private:
    const Graph& g_;
    std::vector<Separator> adopted_;
    std::vector<std::vector<int>> labels_;
    std::set<VertexSet> members_;
};

// Candidates contributed by vertex v: K ∪ {v} for each clique minimal
// separator K of a component of g \ {v}, kept when minimal in g.
inline std::vector<Separator> apex_candidates(const Graph& g, Vertex v, SeparatorOrigin origin) {
    std::vector<Separator> out;
    for (const auto& c : components(g, {v})) {
        auto [sub, to_g] = induced_subgraph(g, c);
        for (const auto& k : clique_minimal_separators(sub)) {
            VertexSet cand;
            cand.reserve(k.vertices.size() + 1);
            for (Vertex x : k.vertices) cand.push_back(to_g[static_cast<std::size_t>(x)]);
            cand.insert(std::lower_bound(cand.begin(), cand.end(), v), v);
            if (!is_minimal_separator(g, cand)) continue;
            auto apexes = almost_clique_apexes(g, cand);
            out.push_back(Separator{std::move(cand), std::move(apexes), origin});
        }
    }
    return out;
}

// apex_candidates for every vertex, optionally across threads. Output is
// indexed by v, so the result is independent of scheduling.
inline std::vector<std::vector<Separator>> all_apex_candidates(const Graph& g, SeparatorOrigin origin,
                                                               int threads) {
    const int n = g.vertex_count();
    std::vector<std::vector<Separator>> per_v(static_cast<std::size_t>(n));
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n));
    if (threads == 1 || n < 4) {
        for (Vertex v = 0; v < n; ++v) per_v[static_cast<std::size_t>(v)] = apex_candidates(g, v, origin);
        return per_v;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                int v = next.fetch_add(1);
                if (v >= n) return;
                per_v[static_cast<std::size_t>(v)] = apex_candidates(g, v, origin);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return per_v;
}

} // namespace detail

// A(H, G): the minimal separators of the triangulation t.h that are
// almost-cliques in g. Prop 2.13 guarantees each is a minimal separator of g
// when t is minimal; a violation there means the triangulation is broken.
inline AcsResult acs_from_triangulation(const Graph& g, const Triangulation& t) {
    detail::Stopwatch clock;
    if (t.h.vertex_count() != g.vertex_count())
        throw invalid_input("acs_from_triangulation: vertex counts differ");
    AcsResult res;
    res.method = ListMethod::Heuristic;
    res.triangulation_method = t.method;
    for (auto& s : minimal_separators_chordal(t.h)) {
        auto apexes = almost_clique_apexes(g, s.vertices);
        if (apexes.empty()) continue;
        if (!is_minimal_separator(g, s.vertices)) {
            if (t.minimal_claimed)
                throw internal_error("acs_from_triangulation: separator of h not minimal in g");
            continue;
        }
        res.separators.push_back(
            Separator{std::move(s.vertices), std::move(apexes), SeparatorOrigin::Heuristic});
    }
    res.separators = canonical_order(std::move(res.separators));
    res.elapsed_ms = clock.ms();
    return res;
}

// The heuristic lister: one minimal triangulation, then filter its separators.
inline AcsResult heuristic_list(const Graph& g,
                                TriangulationMethod method = TriangulationMethod::MMAF) {
    detail::Stopwatch clock;
    Triangulation t = [&] {
        switch (method) {
            case TriangulationMethod::MMD: return minimalize(g, EliminationStrategy::MD);
            case TriangulationMethod::MMF: return minimalize(g, EliminationStrategy::MF);
            case TriangulationMethod::MMAF: return minimalize(g, EliminationStrategy::MAF);
            case TriangulationMethod::MCSM: return mcs_m(g);
            case TriangulationMethod::MD:
            case TriangulationMethod::MF:
            case TriangulationMethod::MAF: {
                auto strat = method == TriangulationMethod::MD   ? EliminationStrategy::MD
                             : method == TriangulationMethod::MF ? EliminationStrategy::MF
                                                                 : EliminationStrategy::MAF;
                if (!is_connected(g)) throw invalid_input("heuristic_list: graph must be connected");
                EliminationRun run = eliminate(g, strat);
                return Triangulation{g, run.h, method, detail::edge_difference(run.h, g), false};
            }
        }
        throw invalid_input("heuristic_list: unknown triangulation method");
    }();
    AcsResult res = acs_from_triangulation(g, t);
    res.elapsed_ms = clock.ms();
    return res;
}

// A_all(G): every almost-clique minimal separator. Non-clique ones are
// K ∪ {apex} with K a clique minimal separator of a component of g minus the
// apex; clique ones are the clique minimal separators of g themselves.
inline AcsResult all_acs(const Graph& g, int threads = 0) {
    detail::Stopwatch clock;
    if (!is_connected(g)) throw invalid_input("all_acs: graph must be connected");
    AcsResult res;
    res.method = ListMethod::All;
    for (auto& s : clique_minimal_separators(g)) {
        auto apexes = almost_clique_apexes(g, s.vertices);
        res.separators.push_back(
            Separator{std::move(s.vertices), std::move(apexes), SeparatorOrigin::Enumeration});
    }
    for (auto& bucket : detail::all_apex_candidates(g, SeparatorOrigin::Enumeration, threads))
        for (auto& s : bucket) res.separators.push_back(std::move(s));
    res.separators = canonical_order(std::move(res.separators));
    res.elapsed_ms = clock.ms();
    return res;
}

// Greedy maximalization: scan the universe in canonical order, adopting
// whatever crosses no previously adopted separator.
inline AcsResult greedy_max(const Graph& g, const std::vector<Separator>& seed,
                            const std::vector<Separator>& universe) {
    detail::Stopwatch clock;
    detail::NonCrossingSet adopted(g);
    for (const auto& s : seed) {
        if (adopted.crosses_any(s.vertices))
            throw invalid_input("greedy_max: seed separators cross each other");
        adopted.try_adopt(s);
    }
    for (const auto& s : canonical_order(universe)) adopted.try_adopt(s);
    AcsResult res;
    res.method = ListMethod::MaxExpanded;
    res.separators = canonical_order(adopted.take());
    res.elapsed_ms = clock.ms();
    return res;
}

// The standard lister: ascending apex vertex, adopting every candidate that
// is minimal in g and crosses nothing adopted so far. Clique minimal
// separators of g are adopted first (they cross nothing).
inline AcsResult standard_list(const Graph& g, int threads = 0) {
    detail::Stopwatch clock;
    if (!is_connected(g)) throw invalid_input("standard_list: graph must be connected");
    detail::NonCrossingSet adopted(g);
    for (auto& s : clique_minimal_separators(g)) {
        auto apexes = almost_clique_apexes(g, s.vertices);
        adopted.try_adopt(
            Separator{std::move(s.vertices), std::move(apexes), SeparatorOrigin::Standard});
    }
    auto per_v = detail::all_apex_candidates(g, SeparatorOrigin::Standard, threads);
    for (auto& bucket : per_v)
        for (auto& s : bucket) adopted.try_adopt(std::move(s));
    AcsResult res;
    res.method = ListMethod::Standard;
    res.separators = canonical_order(adopted.take());
    res.elapsed_ms = clock.ms();
    return res;
}

// Algorithm-1 style preprocessing: repeatedly list almost-clique minimal
// separators of the current graph and fill them, until a round adds nothing;
// then decompose the filled graph into atoms. Disconnected inputs run per
// component; the decomposition of each component becomes one tree of a forest.
inline PreprocessResult preprocess(const Graph& g, ListMethod lister,
                                   TriangulationMethod tri = TriangulationMethod::MMAF,
                                   int threads = 0) {
    if (lister != ListMethod::Heuristic && lister != ListMethod::Standard)
        throw invalid_input("preprocess: lister must be heuristic or standard");
    if (g.vertex_count() == 0) throw invalid_input("preprocess: empty graph");

    PreprocessResult out;
    out.stats.n = g.vertex_count();
    out.stats.m = g.edge_count();
    out.stats.lister = name(lister);
    if (lister == ListMethod::Heuristic) out.stats.triangulation = name(tri);

    // Filling only ever adds edges inside a component, so the component list
    // is fixed for the whole run.
    const auto comps = components(g, {});
    Graph cur = g;
    const int round_cap = g.vertex_count() + 1;
    std::set<VertexSet> distinct_filled;
    for (;;) {
        std::vector<Separator> round_seps;
        std::vector<Edge> new_edges;
        for (const auto& c : comps) {
            auto [sub, to_g] = induced_subgraph(cur, c);
            AcsResult listed = lister == ListMethod::Heuristic ? heuristic_list(sub, tri)
                                                               : standard_list(sub, threads);
            out.stats.t_list_ms += listed.elapsed_ms;
            for (auto& s : listed.separators) {
                VertexSet sg;
                sg.reserve(s.vertices.size());
                for (Vertex v : s.vertices) sg.push_back(to_g[static_cast<std::size_t>(v)]);
                std::optional<VertexSet> apexes_g;
                if (s.apexes) {
                    apexes_g.emplace();
                    for (Vertex v : *s.apexes) apexes_g->push_back(to_g[static_cast<std::size_t>(v)]);
                }
                for (std::size_t i = 0; i < sg.size(); ++i)
                    for (std::size_t j = i + 1; j < sg.size(); ++j)
                        if (!cur.adjacent(sg[i], sg[j])) new_edges.emplace_back(sg[i], sg[j]);
                distinct_filled.insert(sg);
                round_seps.push_back(Separator{std::move(sg), std::move(apexes_g), s.origin});
            }
        }
        out.filled_separators.push_back(std::move(round_seps));
        ++out.rounds;
        if (new_edges.empty()) break;
        if (out.rounds > round_cap)
            throw internal_error("preprocess: round cap exceeded");
        cur = add_edges(cur, new_edges);
    }

    out.filled = cur;
    for (const auto& c : comps) {
        auto [sub, to_g] = induced_subgraph(cur, c);
        Decomposition d = decompose(sub);
        int offset = static_cast<int>(out.decomposition.atoms.size());
        for (auto& a : d.atoms) {
            VertexSet ag;
            ag.reserve(a.size());
            for (Vertex v : a) ag.push_back(to_g[static_cast<std::size_t>(v)]);
            out.decomposition.atoms.push_back(std::move(ag));
        }
        for (auto [x, y] : d.tree_edges) out.decomposition.tree_edges.emplace_back(x + offset, y + offset);
        for (auto& l : d.edge_labels) {
            VertexSet lg;
            for (Vertex v : l.vertices) lg.push_back(to_g[static_cast<std::size_t>(v)]);
            std::optional<VertexSet> apexes_g;
            if (l.apexes) {
                apexes_g.emplace();
                for (Vertex v : *l.apexes) apexes_g->push_back(to_g[static_cast<std::size_t>(v)]);
            }
            out.decomposition.edge_labels.push_back(Separator{std::move(lg), std::move(apexes_g), l.origin});
        }
    }

    out.stats.rounds = out.rounds;
    out.stats.num_acs = static_cast<int>(distinct_filled.size());
    out.stats.num_atoms = static_cast<int>(out.decomposition.atoms.size());
    for (const auto& a : out.decomposition.atoms)
        out.stats.max_atom = std::max(out.stats.max_atom, static_cast<int>(a.size()));
    return out;
}

} // namespace acsd
