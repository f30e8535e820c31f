#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "acsd/acs.hpp"
#include "acsd/io.hpp"
#include "acsd/oracle.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace acsd;

namespace {

std::string pace_dir() {
    const char* env = std::getenv("ACSD_PACE_DIR");
    return env ? env : "data/pace2017";
}

Graph load_instance(const std::string& name) {
    fs::path p = fs::path(pace_dir()) / (name + ".gr");
    std::ifstream in(p);
    REQUIRE_MESSAGE(in, "missing PACE instance " << p.string()
                                                 << " (run scripts/fetch_pace2017.sh)");
    return parse_gr(in).graph;
}

// The tested PACE subset at desk scale: the 50 smallest instances by vertex
// count, plus the three instances with published counts.
std::vector<std::string> smallest_instances(std::size_t count) {
    std::vector<std::pair<int, std::string>> sized;
    for (const auto& entry : fs::directory_iterator(pace_dir())) {
        if (entry.path().extension() != ".gr") continue;
        std::ifstream in(entry.path());
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("p tw ", 0) == 0) {
                std::istringstream hs(line.substr(5));
                int n = 0;
                hs >> n;
                sized.emplace_back(n, entry.path().stem().string());
                break;
            }
        }
    }
    REQUIRE_MESSAGE(sized.size() >= count,
                    "need at least " << count << " PACE instances in " << pace_dir());
    std::sort(sized.begin(), sized.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(sized[i].second);
    return out;
}

std::set<VertexSet> vset(const std::vector<Separator>& seps) {
    std::set<VertexSet> out;
    for (const auto& s : seps) out.insert(s.vertices);
    return out;
}

void report(int criterion, bool ok, const std::string& detail) {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    CHECK(ok);
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    std::size_t k = xs.size();
    return k % 2 ? xs[k / 2] : (xs[k / 2 - 1] + xs[k / 2]) / 2.0;
}

} // namespace

TEST_CASE("criterion 1: all_acs matches the brute-force enumeration on 500 random graphs") {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> nd(6, 14);
    const double ps[3] = {0.2, 0.35, 0.5};
    int agree = 0, subset = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t) {
        auto g = random_connected(rng, nd(rng), ps[t % 3]);
        auto all = vset(all_acs(g).separators);
        if (all == vset(oracle::brute_almost_clique_minimal_separators(g))) ++agree;
        auto heur = vset(heuristic_list(g).separators);
        if (std::includes(all.begin(), all.end(), heur.begin(), heur.end())) ++subset;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = agree == trials && subset == trials && secs < 120.0;
    std::ostringstream d;
    d << "oracle agreement " << agree << "/" << trials << ", heuristic subset " << subset << "/"
      << trials << ", " << secs << "s";
    report(1, ok, d.str());
}

TEST_CASE("criterion 2: every listed separator is safe to fill on 200 random graphs") {
    std::mt19937 rng(102);
    std::uniform_int_distribution<int> nd(4, 12);
    int violations = 0, checked = 0;
    for (int t = 0; t < 200; ++t) {
        auto g = random_connected(rng, nd(rng), t % 2 ? 0.25 : 0.4);
        for (const auto& s : all_acs(g).separators) {
            ++checked;
            if (!oracle::check_safety(g, s)) ++violations;
        }
    }
    std::ostringstream d;
    d << checked << " separators checked, " << violations << " safety violations";
    report(2, violations == 0, d.str());
}

TEST_CASE("criterion 3: preprocessing preserves treewidth and removes clique separators") {
    std::mt19937 rng(103);
    std::uniform_int_distribution<int> nd(4, 12);
    int tw_violations = 0, clique_violations = 0;
    for (int t = 0; t < 200; ++t) {
        auto g = random_connected(rng, nd(rng), t % 2 ? 0.25 : 0.4);
        int tw = oracle::brute_treewidth(g);
        for (auto lister : {ListMethod::Heuristic, ListMethod::Standard}) {
            auto r = preprocess(g, lister);
            int max_atom_tw = 0;
            for (const auto& a : r.decomposition.atoms) {
                auto [sub, map] = induced_subgraph(r.filled, a);
                (void)map;
                max_atom_tw = std::max(max_atom_tw, oracle::brute_treewidth(sub));
                if (oracle::has_clique_separator(sub)) ++clique_violations;
            }
            if (max_atom_tw != tw) ++tw_violations;
        }
    }
    std::ostringstream d;
    d << tw_violations << " treewidth violations, " << clique_violations
      << " atoms with a clique separator";
    report(3, tw_violations == 0 && clique_violations == 0, d.str());
}

TEST_CASE("criterion 4: triangulations are minimal and their separators behave on 1000 graphs") {
    std::mt19937 rng(104);
    std::uniform_int_distribution<int> nd(5, 30);
    int not_minimal = 0, not_in_g = 0, crossing = 0;
    for (int t = 0; t < 1000; ++t) {
        auto g = random_connected(rng, nd(rng), t % 3 == 0 ? 0.15 : t % 3 == 1 ? 0.3 : 0.5);
        Triangulation tris[3] = {minimalize(g, EliminationStrategy::MAF),
                                 minimalize(g, EliminationStrategy::MD), mcs_m(g)};
        for (const auto& tri : tris) {
            if (!verify_minimal(g, tri)) ++not_minimal;
            auto seps = minimal_separators_chordal(tri.h);
            for (const auto& s : seps)
                if (!is_minimal_separator(g, s.vertices)) ++not_in_g;
            for (std::size_t i = 0; i < seps.size(); ++i)
                for (std::size_t j = i + 1; j < seps.size(); ++j)
                    if (crosses(g, seps[i].vertices, seps[j].vertices)) ++crossing;
        }
    }
    std::ostringstream d;
    d << not_minimal << " non-minimal triangulations, " << not_in_g
      << " separators not minimal in the base graph, " << crossing << " crossing pairs";
    report(4, not_minimal == 0 && not_in_g == 0 && crossing == 0, d.str());
}

TEST_CASE("criterion 5: published counts on ex069, ex150, ex109") {
    struct Expect {
        const char* name;
        int all;
        int max;
    };
    const Expect table[3] = {{"ex069", 148, 100}, {"ex150", 161, 102}, {"ex109", 1588, 716}};
    bool ok = true;
    std::ostringstream d;
    for (const auto& e : table) {
        Graph g = load_instance(e.name);
        auto all = all_acs(g);
        auto mx = greedy_max(g, {}, all.separators);
        int na = static_cast<int>(all.separators.size());
        int nm = static_cast<int>(mx.separators.size());
        bool all_ok = std::abs(na - e.all) <= 2;
        bool max_ok = std::abs(nm - e.max) <= (e.max + 9) / 10;
        if (!(all_ok && max_ok)) ok = false;
        d << e.name << " |A_all|=" << na << " (want " << e.all << "±2) |A_max|=" << nm << " (want "
          << e.max << "±10%)  ";
    }
    report(5, ok, d.str());
}

TEST_CASE("criterion 6: near-maximality of the heuristic lists on the 50 smallest instances") {
    auto names = smallest_instances(50);
    int mmaf_good = 0, mcsm_good = 0;
    for (const auto& name : names) {
        Graph g = load_instance(name);
        auto universe = all_acs(g).separators;
        auto ratio = [&](TriangulationMethod m) {
            auto listed = heuristic_list(g, m).separators;
            auto expanded = greedy_max(g, listed, universe).separators;
            if (listed.empty()) return expanded.empty() ? 1.0 : 1e9;
            return static_cast<double>(expanded.size()) / static_cast<double>(listed.size());
        };
        if (ratio(TriangulationMethod::MMAF) <= 1.1) ++mmaf_good;
        if (ratio(TriangulationMethod::MCSM) <= 1.1) ++mcsm_good;
    }
    double frac_mmaf = mmaf_good / 50.0, frac_mcsm = mcsm_good / 50.0;
    bool ok = frac_mmaf >= 0.85 && frac_mmaf > frac_mcsm;
    std::ostringstream d;
    d << "fraction within 1.1: mmaf " << frac_mmaf << ", mcs-m " << frac_mcsm;
    report(6, ok, d.str());
}

TEST_CASE("criterion 7: heuristic listing is much faster than standard on large instances") {
    bool ok = true;
    std::vector<double> ratios;
    std::ostringstream d;
    for (const char* name : {"ex150", "ex109"}) {
        Graph g = load_instance(name);
        double th = heuristic_list(g).elapsed_ms;
        double ts = standard_list(g).elapsed_ms;
        double rho1 = th / ts;
        ratios.push_back(rho1);
        if (rho1 > 0.5) ok = false;
        d << name << " t_h=" << th << "ms t_s=" << ts << "ms rho1=" << rho1 << "  ";
    }
    double med = median(ratios);
    if (med > 0.05) ok = false;
    d << "median rho1=" << med;
    report(7, ok, d.str());
}

TEST_CASE("criterion 8: decomposition quality parity between the two listers") {
    auto names = smallest_instances(50);
    for (const char* extra : {"ex069", "ex150", "ex109"})
        if (std::find(names.begin(), names.end(), extra) == names.end()) names.push_back(extra);
    int equal = 0, over = 0;
    double worst = 0;
    for (const auto& name : names) {
        Graph g = load_instance(name);
        int ma_h = preprocess(g, ListMethod::Heuristic).stats.max_atom;
        int ma_s = preprocess(g, ListMethod::Standard).stats.max_atom;
        double ratio = static_cast<double>(ma_h) / static_cast<double>(ma_s);
        worst = std::max(worst, ratio);
        if (ma_h == ma_s) ++equal;
        if (ratio > 1.5) ++over;
    }
    double frac_equal = static_cast<double>(equal) / static_cast<double>(names.size());
    bool ok = over == 0 && frac_equal >= 0.5;
    std::ostringstream d;
    d << "equal MA on " << equal << "/" << names.size() << ", worst ratio " << worst;
    report(8, ok, d.str());
}
