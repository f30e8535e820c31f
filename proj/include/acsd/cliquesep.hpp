#pragma once

#include "graph.hpp"
#include "separators.hpp"
#include "triangulation.hpp"

#include <utility>
#include <vector>

namespace acsd {

// Clique minimal separator decomposition: atoms as bags of a valid
// tree-decomposition whose edge labels are clique minimal separators.
struct Decomposition {
    std::vector<VertexSet> atoms;
    std::vector<std::pair<int, int>> tree_edges;
    std::vector<Separator> edge_labels;
};

// All clique minimal separators of g: the minimal separators of a minimal
// triangulation (MCS-M) that are cliques in g. Canonical order.
inline std::vector<Separator> clique_minimal_separators(const Graph& g) {
    Triangulation t = mcs_m(g);
    std::vector<Separator> out;
    for (auto& s : minimal_separators_chordal(t.h))
        if (is_clique(g, s.vertices)) out.push_back(std::move(s));
    return out;
}

namespace detail {

// Recursively decompose g[part] (given in g's ids), appending atoms and tree
// structure to d. Returns nothing; atoms of this part occupy indices
// [first, d.atoms.size()) on return.
inline void decompose_part(const Graph& g, const VertexSet& part, Decomposition& d,
                           bool pick_last = false) {
    auto [sub, to_g] = induced_subgraph(g, part);
    auto seps = clique_minimal_separators(sub);
    if (seps.empty()) {
        d.atoms.push_back(part);
        return;
    }
    // pick_last exists so tests can confirm the atom set is order-invariant
    const VertexSet& s = (pick_last ? seps.back() : seps.front()).vertices;

    auto map_back = [&](const VertexSet& local) {
        VertexSet out;
        out.reserve(local.size());
        for (Vertex v : local) out.push_back(to_g[static_cast<std::size_t>(v)]);
        return out;  // to_g is ascending, so order is preserved
    };

    // Split into G[C ∪ N(C)] per component C of sub \ s; the first full
    // component's part contains all of s and serves as the hub.
    struct Part {
        VertexSet vertices_g;   // in g's ids
        VertexSet boundary_g;   // N(C) in g's ids, a clique
        std::size_t first_atom = 0, last_atom = 0;
    };
    std::vector<Part> parts;
    int hub = -1;
    for (const auto& c : components(sub, s)) {
        VertexSet nb = neighborhood(sub, c);
        Part p;
        p.vertices_g = map_back(vs_union(c, nb));
        p.boundary_g = map_back(nb);
        if (hub < 0 && nb == s) hub = static_cast<int>(parts.size());
        parts.push_back(std::move(p));
    }
    if (hub < 0) throw internal_error("decompose: clique separator has no full component");

    for (auto& p : parts) {
        p.first_atom = d.atoms.size();
        decompose_part(g, p.vertices_g, d, pick_last);
        p.last_atom = d.atoms.size();
    }

    // A clique always lies inside some atom of its part's decomposition.
    auto atom_containing = [&](const Part& p, const VertexSet& clique) {
        for (std::size_t a = p.first_atom; a < p.last_atom; ++a)
            if (vs_is_subset(clique, d.atoms[a])) return static_cast<int>(a);
        throw internal_error("decompose: separator not contained in any atom of its part");
    };
    const Part& h = parts[static_cast<std::size_t>(hub)];
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (static_cast<int>(i) == hub) continue;
        const Part& p = parts[i];
        d.tree_edges.emplace_back(atom_containing(h, p.boundary_g), atom_containing(p, p.boundary_g));
        d.edge_labels.push_back(
            Separator{p.boundary_g, almost_clique_apexes(g, p.boundary_g),
                      SeparatorOrigin::ChordalExtraction});
    }
}

} // namespace detail

// Recursive split of g along clique minimal separators, canonically first
// separator chosen each time; atoms contain no clique separator.
inline Decomposition decompose(const Graph& g) {
    if (g.vertex_count() == 0) throw invalid_input("decompose: empty graph");
    if (!is_connected(g)) throw invalid_input("decompose: graph must be connected");
    Decomposition d;
    detail::decompose_part(g, g.vertices(), d);
    return d;
}

} // namespace acsd
