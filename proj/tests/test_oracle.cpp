#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "acsd/oracle.hpp"
#include "acsd/triangulation.hpp"
#include "test_util.hpp"

#include <random>
#include <set>

using namespace acsd;

TEST_CASE("brute_minimal_separators on named graphs") {
    auto c4 = oracle::brute_minimal_separators(cycle_graph(4));
    REQUIRE(c4.size() == 2);
    CHECK(c4[0].vertices == L({1, 3}));
    CHECK(c4[1].vertices == L({2, 4}));

    CHECK(oracle::brute_minimal_separators(complete_graph(4)).empty());

    auto c6 = oracle::brute_minimal_separators(cycle_graph(6));
    CHECK(c6.size() == 9);
    for (const auto& s : c6) {
        CHECK(s.vertices.size() == 2);
        CHECK(!cycle_graph(6).adjacent(s.vertices[0], s.vertices[1]));
    }
}

TEST_CASE("brute_minimal_separators agrees with the predicate") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = random_connected(rng, 8, 0.3);
        auto seps = oracle::brute_minimal_separators(g);
        // every enumerated subset agrees with is_minimal_separator
        std::set<VertexSet> found;
        for (const auto& s : seps) found.insert(s.vertices);
        for (std::uint32_t mask = 1; mask < (1u << 8) - 1; ++mask) {
            VertexSet s;
            for (int v = 0; v < 8; ++v)
                if (mask & (1u << v)) s.push_back(v);
            CHECK(is_minimal_separator(g, s) == (found.count(s) > 0));
        }
    }
}

TEST_CASE("oracle caps refuse") {
    auto big = cycle_graph(17);
    CHECK_THROWS_AS(oracle::brute_minimal_separators(big), cap_exceeded);
    CHECK_THROWS_AS(oracle::brute_treewidth(big), cap_exceeded);
    oracle::OracleLimits tight;
    tight.max_n_subsets = 3;
    CHECK_THROWS_AS(oracle::brute_minimal_separators(cycle_graph(4), tight), invalid_input);
}

TEST_CASE("brute_treewidth on named graphs") {
    CHECK(oracle::brute_treewidth(path_graph(3)) == 1);
    CHECK(oracle::brute_treewidth(cycle_graph(4)) == 2);
    CHECK(oracle::brute_treewidth(complete_graph(4)) == 3);
    CHECK(oracle::brute_treewidth(fill_clique(cycle_graph(4), L({2, 4}))) == 2);
    CHECK(oracle::brute_treewidth(cycle_graph(6)) == 2);
    CHECK(oracle::brute_treewidth(path_graph(1)) == 0);
    CHECK(oracle::brute_treewidth(butterfly_graph()) == 2);
}

TEST_CASE("treewidth of a tree is 1 and of a k-tree-ish clique is n-1") {
    std::mt19937 rng(22);
    auto tree = random_connected(rng, 12, 0.0);
    CHECK(oracle::brute_treewidth(tree) == 1);
    CHECK(oracle::brute_treewidth(complete_graph(9)) == 8);
}

TEST_CASE("check_safety") {
    CHECK(oracle::check_safety(cycle_graph(4), Separator{L({2, 4}), std::nullopt,
                                                         SeparatorOrigin::Enumeration}));
    CHECK(oracle::check_safety(cycle_graph(4), Separator{L({1, 3}), std::nullopt,
                                                         SeparatorOrigin::Enumeration}));
    // a clique separator: filling is a no-op, trivially safe
    CHECK(oracle::check_safety(butterfly_graph(),
                               Separator{L({3}), std::nullopt, SeparatorOrigin::Enumeration}));
}

TEST_CASE("has_clique_separator") {
    CHECK(oracle::has_clique_separator(butterfly_graph()));
    CHECK(oracle::has_clique_separator(path_graph(3)));
    CHECK(!oracle::has_clique_separator(cycle_graph(5)));
    CHECK(!oracle::has_clique_separator(complete_graph(4)));
}

TEST_CASE("triangulation bags bound treewidth from above") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = random_connected(rng, 10, 0.3);
        int tw = oracle::brute_treewidth(g);
        for (auto method : {TriangulationMethod::MMD, TriangulationMethod::MMAF}) {
            auto t = method == TriangulationMethod::MMD ? minimalize(g, EliminationStrategy::MD)
                                                        : minimalize(g, EliminationStrategy::MAF);
            std::size_t max_bag = 0;
            for (const auto& b : clique_tree(t.h).bags) max_bag = std::max(max_bag, b.size());
            CHECK(tw <= static_cast<int>(max_bag) - 1);
        }
        auto t = mcs_m(g);
        std::size_t max_bag = 0;
        for (const auto& b : clique_tree(t.h).bags) max_bag = std::max(max_bag, b.size());
        CHECK(tw <= static_cast<int>(max_bag) - 1);
    }
}

TEST_CASE("brute_almost_clique_minimal_separators filters correctly") {
    auto acs = oracle::brute_almost_clique_minimal_separators(cycle_graph(6));
    CHECK(acs.size() == 9);  // every non-adjacent pair is an almost-clique
    for (const auto& s : acs) {
        REQUIRE(s.apexes.has_value());
        CHECK(!s.apexes->empty());
        CHECK(is_minimal_separator(cycle_graph(6), s.vertices));
    }
    std::mt19937 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = random_connected(rng, 9, 0.35);
        auto all = oracle::brute_minimal_separators(g);
        auto ac = oracle::brute_almost_clique_minimal_separators(g);
        std::size_t expected = 0;
        for (const auto& s : all)
            if (!almost_clique_apexes(g, s.vertices).empty()) ++expected;
        CHECK(ac.size() == expected);
    }
}
