#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "krboot/engine.hpp"
#include "krboot/graph.hpp"

namespace krboot {

// Exhaustive scans over all labeled graphs on n vertices. Cost grows as
// 2^C(n,2): the default budget stops at n = 7, n = 8 is allowed by raising
// the budget explicitly, and n >= 9 is always refused.
struct SearchOptions {
    int budget = 7;        // largest n the caller is willing to enumerate
    int shards = 1;        // split the enumeration into this many slices
    int shard_index = 0;   // which slice this invocation scans
    int workers = 1;       // worker threads; 0 picks the hardware count
    bool dedup = false;    // scan one representative per isomorphism class
    int witness_cap = 16;  // extremal graphs kept alongside the value
};

struct SearchResult {
    std::string objective;
    int n = 0;
    int r = 0;
    int tau_target = -1;  // set only by the fixed-saturation-time scan
    bool found = false;   // false when no graph in the slice qualifies
    long long value = 0;
    std::vector<Graph> witnesses;
    std::uint64_t graphs_scanned = 0;
    int shards = 1;
    int shard_index = 0;
    double seconds = 0.0;  // wall time; everything else is deterministic
};

// Largest saturation time over all graphs on n labeled vertices.
SearchResult tau_max(int n, int r, const SearchOptions& options = {});

// Fewest edges of a percolating graph on n vertices.
SearchResult min_percolating_edges(int n, int r,
                                   const SearchOptions& options = {});

// Fewest edges among graphs on n vertices with saturation time exactly t.
// Isolated vertices never join the process, so the minimum over graphs with
// at most n vertices equals the minimum of the scan at exactly n.
SearchResult min_edges_given_tau(int n, int r, int t,
                                 const SearchOptions& options = {});

std::string search_result_to_json(const SearchResult& result);

// Closure specialized to bitmask graphs with n <= 11, cross-checked against
// the general engine in the tests. Edge bits follow pair_index order.
struct SmallClosure {
    int tau = 0;
    bool percolates = false;
    std::uint64_t closure_mask = 0;
};
SmallClosure small_close(int n, std::uint64_t edge_mask, int r);

Graph graph_from_mask(int n, std::uint64_t edge_mask);
std::uint64_t mask_from_graph(const Graph& g);

}  // namespace krboot
