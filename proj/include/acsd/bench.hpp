#pragma once

#include <optional>
#include <string>

namespace acsd {

// One benchmark row: listing + decomposition statistics for one instance/lister.
struct BenchRecord {
    std::string instance;
    int n = 0;
    long long m = 0;
    std::string lister;          // "heuristic" | "standard"
    std::string triangulation;   // method tag, empty for standard
    double t_list_ms = 0;        // wall time spent listing, milliseconds
    int num_acs = 0;             // |A|
    std::optional<int> num_max;  // |A_max| after greedy expansion
    std::optional<int> num_all;  // |A_all|
    int rounds = 0;
    int num_atoms = 0;
    int max_atom = 0;            // MA: largest atom size
    std::optional<double> ratio_rho1;  // t_heuristic / t_standard
    std::optional<double> ratio_rho2;  // MA_heuristic / MA_standard
};

} // namespace acsd
