#pragma once

#include "graph.hpp"

#include <optional>
#include <vector>

namespace acsd {

// Which procedure produced a separator. Not part of separator identity.
enum class SeparatorOrigin { Heuristic, Standard, Enumeration, ChordalExtraction };

// Canonical (sorted, deduplicated) vertex set with optional cached apex info.
// Two separators are equal iff their vertex sets are equal.
struct Separator {
    VertexSet vertices;
    std::optional<VertexSet> apexes;  // valid apex vertices, when computed
    SeparatorOrigin origin = SeparatorOrigin::Enumeration;

    bool operator==(const Separator& o) const { return vertices == o.vertices; }
};

// size ascending, then lexicographic on the sorted vertex ids
inline bool canonical_less(const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Components of g \ s whose neighborhood is exactly s, in components() order.
inline std::vector<VertexSet> full_components(const Graph& g, const VertexSet& s) {
    g.check_vertex_set(s);
    if (s.empty()) throw invalid_input("full_components: empty separator");
    std::vector<VertexSet> out;
    for (auto& c : components(g, s))
        if (neighborhood(g, c) == s) out.push_back(std::move(c));
    return out;
}

inline bool is_minimal_separator(const Graph& g, const VertexSet& s) {
    g.check_vertex_set(s);
    if (s.empty()) throw invalid_input("is_minimal_separator: empty separator");
    if (static_cast<int>(s.size()) >= g.vertex_count())
        throw invalid_input("is_minimal_separator: separator must be a proper subset of V");
    // Count components whose neighborhood is all of s; stop at two.
    auto comp = detail::component_labels(g, s);
    int count = 0;
    for (int c : comp) count = std::max(count, c + 1);
    if (count < 2) return false;
    // Tally |N(C) ∩ s| per component by scanning s's adjacency once.
    std::vector<char> counted(static_cast<std::size_t>(count) * s.size(), 0);
    std::vector<int> reached(static_cast<std::size_t>(count), 0);
    for (std::size_t si = 0; si < s.size(); ++si)
        for (Vertex w : g.neighbors(s[si])) {
            int c = comp[static_cast<std::size_t>(w)];
            if (c < 0) continue;
            char& flag = counted[static_cast<std::size_t>(c) * s.size() + si];
            if (!flag) {
                flag = 1;
                ++reached[static_cast<std::size_t>(c)];
            }
        }
    int full = 0;
    for (int c = 0; c < count; ++c)
        if (reached[static_cast<std::size_t>(c)] == static_cast<int>(s.size())) ++full;
    return full >= 2;
}

// All q in s such that s \ {q} is a clique of g. Non-empty result means s is
// an almost-clique; a clique yields all of s.
inline VertexSet almost_clique_apexes(const Graph& g, const VertexSet& s) {
    g.check_vertex_set(s);
    if (s.empty()) throw invalid_input("almost_clique_apexes: empty set");
    // Every non-edge inside s must contain the apex, so intersect endpoints.
    bool any_nonedge = false;
    Vertex cand1 = -1, cand2 = -1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (g.adjacent(s[i], s[j])) continue;
            if (!any_nonedge) {
                any_nonedge = true;
                cand1 = s[i];
                cand2 = s[j];
            } else {
                Vertex a = s[i], b = s[j];
                Vertex n1 = (cand1 == a || cand1 == b) ? cand1 : -1;
                Vertex n2 = (cand2 == a || cand2 == b) ? cand2 : -1;
                cand1 = n1;
                cand2 = n2;
                if (cand1 < 0 && cand2 < 0) return {};
            }
        }
    }
    if (!any_nonedge) return s;
    VertexSet out;
    if (cand1 >= 0) out.push_back(cand1);
    if (cand2 >= 0) out.push_back(cand2);
    std::sort(out.begin(), out.end());
    return out;
}

// True iff r separates some pair of vertices of s, i.e. s \ r meets at least
// two components of g \ r. Vertices of s ∩ r are never counted as separated.
inline bool crosses(const Graph& g, const VertexSet& r, const VertexSet& s) {
    g.check_vertex_set(r);
    g.check_vertex_set(s);
    if (r.empty() || s.empty()) throw invalid_input("crosses: empty vertex set");
    auto comp = detail::component_labels(g, r);
    int seen = -1;
    for (Vertex v : s) {
        int c = comp[static_cast<std::size_t>(v)];
        if (c < 0) continue;
        if (seen == -1)
            seen = c;
        else if (c != seen)
            return true;
    }
    return false;
}

// Stable sort by (size, lex); duplicates by vertex set removed, first kept.
inline std::vector<Separator> canonical_order(std::vector<Separator> seps) {
    std::stable_sort(seps.begin(), seps.end(), [](const Separator& a, const Separator& b) {
        return canonical_less(a.vertices, b.vertices);
    });
    seps.erase(std::unique(seps.begin(), seps.end()), seps.end());
    return seps;
}

} // namespace acsd
