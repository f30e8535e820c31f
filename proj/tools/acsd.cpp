#include "acsd/acs.hpp"
#include "acsd/bench.hpp"
#include "acsd/io.hpp"
#include "acsd/oracle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace acsd;

namespace {

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Graph load_gr(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open input file: " + path);
    ParseResult r = parse_gr(in);
    if (r.duplicate_edges > 0)
        std::cerr << path << ": warning: " << r.duplicate_edges << " duplicate edge(s) ignored\n";
    if (r.edge_count_mismatch)
        std::cerr << path << ": warning: header declares " << r.declared_edges << " edges, parsed "
                  << r.graph.edge_count() << "\n";
    return std::move(r.graph);
}

TriangulationMethod parse_method(const std::string& s) {
    for (auto m : {TriangulationMethod::MD, TriangulationMethod::MF, TriangulationMethod::MAF,
                   TriangulationMethod::MMD, TriangulationMethod::MMF, TriangulationMethod::MMAF,
                   TriangulationMethod::MCSM})
        if (s == name(m)) return m;
    throw usage_error("unknown triangulation method: " + s);
}

Triangulation run_triangulation(const Graph& g, TriangulationMethod m) {
    switch (m) {
        case TriangulationMethod::MMD: return minimalize(g, EliminationStrategy::MD);
        case TriangulationMethod::MMF: return minimalize(g, EliminationStrategy::MF);
        case TriangulationMethod::MMAF: return minimalize(g, EliminationStrategy::MAF);
        case TriangulationMethod::MCSM: return mcs_m(g);
        default: {
            auto strat = m == TriangulationMethod::MD   ? EliminationStrategy::MD
                         : m == TriangulationMethod::MF ? EliminationStrategy::MF
                                                        : EliminationStrategy::MAF;
            EliminationRun run = eliminate(g, strat);
            return Triangulation{g, run.h, m, acsd::detail::edge_difference(run.h, g), false};
        }
    }
}

json separator_json(const Graph& g, const Separator& s) {
    json j;
    j["vertices"] = json::array();
    for (Vertex v : s.vertices) j["vertices"].push_back(g.label(v));
    if (s.apexes) {
        j["apexes"] = json::array();
        for (Vertex v : *s.apexes) j["apexes"].push_back(g.label(v));
    }
    return j;
}

double ceil_ms(double ms) { return std::ceil(ms); }

// Run a connected-graph lister per component and merge, so the CLI accepts
// disconnected inputs too.
template <typename F>
AcsResult per_component(const Graph& g, F&& lister) {
    if (is_connected(g)) return lister(g);
    AcsResult merged;
    bool first = true;
    for (const auto& c : components(g, {})) {
        auto [sub, to_g] = induced_subgraph(g, c);
        AcsResult r = lister(sub);
        if (first) {
            merged.method = r.method;
            merged.triangulation_method = r.triangulation_method;
            first = false;
        }
        merged.elapsed_ms += r.elapsed_ms;
        for (auto& s : r.separators) {
            VertexSet sg;
            for (Vertex v : s.vertices) sg.push_back(to_g[static_cast<std::size_t>(v)]);
            std::optional<VertexSet> ap;
            if (s.apexes) {
                ap.emplace();
                for (Vertex v : *s.apexes) ap->push_back(to_g[static_cast<std::size_t>(v)]);
            }
            merged.separators.push_back(Separator{std::move(sg), std::move(ap), s.origin});
        }
    }
    merged.separators = canonical_order(std::move(merged.separators));
    return merged;
}

int cmd_triangulate(const std::string& input, const std::string& method, const std::string& td_out,
                    bool verify) {
    Graph g = load_gr(input);
    TriangulationMethod m = parse_method(method);
    acsd::detail::Stopwatch clock;
    Triangulation t = run_triangulation(g, m);
    double elapsed = clock.ms();
    std::size_t max_bag = 0;
    CliqueTree ct = clique_tree(t.h);
    for (const auto& b : ct.bags) max_bag = std::max(max_bag, b.size());

    json j;
    j["instance"] = fs::path(input).stem().string();
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    j["method"] = name(t.method);
    j["fill_edges"] = t.fill_edges.size();
    j["max_bag"] = max_bag;
    j["width"] = max_bag == 0 ? -1 : static_cast<long long>(max_bag) - 1;
    j["minimal_claimed"] = t.minimal_claimed;
    j["verified_minimal"] = verify ? json(verify_minimal(g, t)) : json(nullptr);
    j["elapsed_ms"] = ceil_ms(elapsed);
    std::cout << j.dump(2) << "\n";

    if (!td_out.empty()) {
        std::ofstream out(td_out);
        if (!out) throw usage_error("cannot open output file: " + td_out);
        write_td(out, t);
    }
    return 0;
}

int cmd_list_acs(const std::string& input, const std::string& method, const std::string& tri,
                 bool expand, int threads) {
    Graph g = load_gr(input);
    AcsResult r;
    if (method == "heuristic")
        r = per_component(g, [&](const Graph& c) { return heuristic_list(c, parse_method(tri)); });
    else if (method == "standard")
        r = per_component(g, [&](const Graph& c) { return standard_list(c, threads); });
    else if (method == "all")
        r = per_component(g, [&](const Graph& c) { return all_acs(c, threads); });
    else
        throw usage_error("unknown listing method: " + method);

    json j;
    j["instance"] = fs::path(input).stem().string();
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    j["method"] = method;
    if (method == "heuristic") j["triangulation"] = tri;
    j["count"] = r.separators.size();
    j["elapsed_ms"] = ceil_ms(r.elapsed_ms);
    j["separators"] = json::array();
    for (const auto& s : r.separators) j["separators"].push_back(separator_json(g, s));

    if (expand) {
        AcsResult universe =
            method == "all" ? r
                            : per_component(g, [&](const Graph& c) { return all_acs(c, threads); });
        std::vector<Separator> seed = method == "all" ? std::vector<Separator>{} : r.separators;
        AcsResult expanded = greedy_max(g, seed, universe.separators);
        j["num_all"] = universe.separators.size();
        j["num_max"] = expanded.separators.size();
        j["expanded_separators"] = json::array();
        for (const auto& s : expanded.separators)
            j["expanded_separators"].push_back(separator_json(g, s));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

json bench_json(const BenchRecord& r) {
    json j;
    j["instance"] = r.instance;
    j["n"] = r.n;
    j["m"] = r.m;
    j["lister"] = r.lister;
    j["triangulation"] = r.triangulation;
    j["t_list_ms"] = ceil_ms(r.t_list_ms);
    j["num_acs"] = r.num_acs;
    if (r.num_max) j["num_max"] = *r.num_max;
    if (r.num_all) j["num_all"] = *r.num_all;
    j["rounds"] = r.rounds;
    j["num_atoms"] = r.num_atoms;
    j["max_atom"] = r.max_atom;
    return j;
}

int cmd_decompose(const std::string& input, const std::string& lister, const std::string& tri,
                  const std::string& out_dir, int threads) {
    Graph g = load_gr(input);
    ListMethod lm;
    if (lister == "heuristic")
        lm = ListMethod::Heuristic;
    else if (lister == "standard")
        lm = ListMethod::Standard;
    else
        throw usage_error("unknown lister: " + lister);
    PreprocessResult r = preprocess(g, lm, parse_method(tri), threads);
    r.stats.instance = fs::path(input).stem().string();

    fs::create_directories(out_dir);
    json manifest;
    manifest["instance"] = r.stats.instance;
    manifest["atoms"] = json::array();
    for (std::size_t k = 0; k < r.decomposition.atoms.size(); ++k) {
        std::string fname = "atom_" + std::to_string(k) + ".gr";
        auto [sub, map] = induced_subgraph(r.filled, r.decomposition.atoms[k]);
        std::ofstream out(fs::path(out_dir) / fname);
        if (!out) throw usage_error("cannot write " + fname + " in " + out_dir);
        write_gr(out, sub);
        json a;
        a["file"] = fname;
        a["vertices"] = json::array();
        for (Vertex v : r.decomposition.atoms[k]) a["vertices"].push_back(r.filled.label(v));
        manifest["atoms"].push_back(a);
    }
    manifest["tree_edges"] = json::array();
    for (std::size_t e = 0; e < r.decomposition.tree_edges.size(); ++e) {
        json te;
        te["between"] = {r.decomposition.tree_edges[e].first, r.decomposition.tree_edges[e].second};
        te["separator"] = separator_json(r.filled, r.decomposition.edge_labels[e]);
        manifest["tree_edges"].push_back(te);
    }
    std::ofstream mf(fs::path(out_dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";
    std::ofstream bf(fs::path(out_dir) / "bench.json");
    bf << bench_json(r.stats).dump(2) << "\n";
    std::cout << bench_json(r.stats).dump(2) << "\n";
    return 0;
}

std::string csv_header() {
    return "instance,n,m,lister,triangulation,t_list_ms,num_acs,rounds,num_atoms,max_atom";
}

std::string csv_row(const BenchRecord& r) {
    std::string out = r.instance + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," +
                      r.lister + "," + r.triangulation + "," +
                      std::to_string(static_cast<long long>(ceil_ms(r.t_list_ms))) + "," +
                      std::to_string(r.num_acs) + "," + std::to_string(r.rounds) + "," +
                      std::to_string(r.num_atoms) + "," + std::to_string(r.max_atom);
    return out;
}

int cmd_bench(const std::string& dir, const std::string& listers_csv, const std::string& tri,
              const std::string& csv_out, int threads) {
    std::vector<std::string> listers;
    {
        std::stringstream ls(listers_csv);
        std::string tok;
        while (std::getline(ls, tok, ',')) {
            if (tok != "heuristic" && tok != "standard")
                throw usage_error("unknown lister: " + tok);
            listers.push_back(tok);
        }
    }
    if (listers.empty()) throw usage_error("no listers given");
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".gr") inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) throw usage_error("no .gr files in " + dir);

    std::ofstream csv(csv_out);
    if (!csv) throw usage_error("cannot open output file: " + csv_out);
    csv << csv_header() << "\n";
    std::map<std::string, std::map<std::string, BenchRecord>> by_instance;
    for (const auto& path : inputs) {
        Graph g = load_gr(path.string());
        for (const auto& lister : listers) {
            ListMethod lm = lister == "heuristic" ? ListMethod::Heuristic : ListMethod::Standard;
            PreprocessResult r = preprocess(g, lm, parse_method(tri), threads);
            r.stats.instance = path.stem().string();
            csv << csv_row(r.stats) << "\n";
            csv.flush();
            std::cerr << csv_row(r.stats) << "\n";
            by_instance[r.stats.instance][lister] = r.stats;
        }
    }

    if (std::find(listers.begin(), listers.end(), std::string("heuristic")) != listers.end() &&
        std::find(listers.begin(), listers.end(), std::string("standard")) != listers.end()) {
        std::string merged_path = csv_out + ".merged.csv";
        std::ofstream merged(merged_path);
        merged << "instance,n,m,t_heuristic_ms,t_standard_ms,rho1,ma_heuristic,ma_standard,rho2\n";
        for (const auto& [instance, recs] : by_instance) {
            const BenchRecord& h = recs.at("heuristic");
            const BenchRecord& s = recs.at("standard");
            double th = ceil_ms(h.t_list_ms), ts = ceil_ms(s.t_list_ms);
            double rho1 = ts > 0 ? th / ts : 1.0;
            double rho2 = s.max_atom > 0 ? static_cast<double>(h.max_atom) / s.max_atom : 1.0;
            merged << instance << "," << h.n << "," << h.m << "," << th << "," << ts << "," << rho1
                   << "," << h.max_atom << "," << s.max_atom << "," << rho2 << "\n";
        }
        std::cerr << "merged ratios written to " << merged_path << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& input) {
    Graph g = load_gr(input);
    bool all_ok = true;
    auto report = [&](const std::string& what, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
        if (!ok) all_ok = false;
    };
    if (!is_connected(g)) throw usage_error("verify expects a connected graph");

    auto brute = oracle::brute_minimal_separators(g);
    bool agree = true;
    for (const auto& s : brute)
        if (!is_minimal_separator(g, s.vertices)) agree = false;
    report("brute-force minimal separators satisfy the minimality predicate", agree);

    auto brute_acs = oracle::brute_almost_clique_minimal_separators(g);
    auto listed = all_acs(g);
    std::set<VertexSet> a, b;
    for (const auto& s : brute_acs) a.insert(s.vertices);
    for (const auto& s : listed.separators) b.insert(s.vertices);
    report("all_acs equals the brute-force almost-clique enumeration", a == b);

    bool heur_subset = true;
    for (const auto& s : heuristic_list(g).separators)
        if (!a.count(s.vertices)) heur_subset = false;
    report("heuristic_list is a subset of the enumeration", heur_subset);

    bool safe = true;
    for (const auto& s : listed.separators)
        if (!oracle::check_safety(g, s)) safe = false;
    report("every almost-clique minimal separator is safe to fill", safe);

    bool minimal = true;
    for (auto strat : {EliminationStrategy::MD, EliminationStrategy::MF, EliminationStrategy::MAF})
        if (!verify_minimal(g, minimalize(g, strat))) minimal = false;
    if (!verify_minimal(g, mcs_m(g))) minimal = false;
    report("minimalize (md/mf/maf) and mcs-m produce minimal triangulations", minimal);

    int tw = oracle::brute_treewidth(g);
    int max_atom_tw = 0;
    bool atoms_clean = true;
    auto d = decompose(g);
    for (const auto& atom : d.atoms) {
        auto [sub, map] = induced_subgraph(g, atom);
        max_atom_tw = std::max(max_atom_tw, oracle::brute_treewidth(sub));
        if (oracle::has_clique_separator(sub)) atoms_clean = false;
    }
    report("treewidth equals the maximum over decomposition atoms", tw == max_atom_tw);
    report("no atom contains a clique separator", atoms_clean);

    bool pipeline = true;
    for (auto lm : {ListMethod::Heuristic, ListMethod::Standard}) {
        auto pre = preprocess(g, lm);
        if (oracle::brute_treewidth(pre.filled) != tw) pipeline = false;
    }
    report("preprocessing preserves treewidth for both listers", pipeline);

    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost-clique minimal separator listing, minimal triangulations, and "
                 "safe-separator preprocessing for treewidth"};
    app.require_subcommand(1);
    int exit_code = 0;

    std::string input, method = "mmaf", td_out;
    bool verify_flag = false;
    auto* tri_cmd = app.add_subcommand("triangulate", "compute a (minimal) triangulation");
    tri_cmd->add_option("input", input, "input .gr file")->required();
    tri_cmd->add_option("--method", method, "md|mf|maf|mmd|mmf|mmaf|mcsm (default mmaf)");
    tri_cmd->add_option("--td", td_out, "write the clique tree as a .td file");
    tri_cmd->add_flag("--verify", verify_flag, "check minimality by single-edge removal (slow)");
    tri_cmd->callback([&] { exit_code = cmd_triangulate(input, method, td_out, verify_flag); });

    std::string list_method = "heuristic", list_tri = "mmaf";
    bool expand = false;
    int threads = 0;
    auto* list_cmd = app.add_subcommand("list-acs", "list almost-clique minimal separators");
    list_cmd->add_option("input", input, "input .gr file")->required();
    list_cmd->add_option("--method", list_method, "heuristic|standard|all (default heuristic)");
    list_cmd->add_option("--triangulation", list_tri, "triangulation for the heuristic lister");
    list_cmd->add_flag("--expand", expand, "also report the greedy expansion against all_acs");
    list_cmd->add_option("--threads", threads, "worker threads for standard/all (0 = auto)");
    list_cmd->callback(
        [&] { exit_code = cmd_list_acs(input, list_method, list_tri, expand, threads); });

    std::string lister = "heuristic", out_dir = ".";
    auto* dec_cmd = app.add_subcommand("decompose", "preprocess and split into atoms");
    dec_cmd->add_option("input", input, "input .gr file")->required();
    dec_cmd->add_option("--lister", lister, "heuristic|standard (default heuristic)");
    dec_cmd->add_option("--triangulation", list_tri, "triangulation for the heuristic lister");
    dec_cmd->add_option("--out-dir", out_dir, "directory for atom .gr files and manifest")
        ->required();
    dec_cmd->add_option("--threads", threads, "worker threads for the standard lister (0 = auto)");
    dec_cmd->callback([&] { exit_code = cmd_decompose(input, lister, list_tri, out_dir, threads); });

    std::string bench_dir, listers = "heuristic,standard", csv_out = "bench.csv";
    auto* bench_cmd = app.add_subcommand("bench", "run the preprocessing benchmark over a directory");
    bench_cmd->add_option("dir", bench_dir, "directory of .gr instances")->required();
    bench_cmd->add_option("--listers", listers, "comma list of heuristic,standard");
    bench_cmd->add_option("--triangulation", list_tri, "triangulation for the heuristic lister");
    bench_cmd->add_option("--csv", csv_out, "output CSV path")->required();
    bench_cmd->add_option("--threads", threads, "worker threads for the standard lister (0 = auto)");
    bench_cmd->callback(
        [&] { exit_code = cmd_bench(bench_dir, listers, list_tri, csv_out, threads); });

    auto* verify_cmd = app.add_subcommand("verify", "run the brute-force oracle suite (small graphs)");
    verify_cmd->add_option("input", input, "input .gr file")->required();
    verify_cmd->callback([&] { exit_code = cmd_verify(input); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const cap_exceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 4;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
