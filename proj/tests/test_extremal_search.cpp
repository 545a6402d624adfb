#include "krboot/extremal_search.hpp"

#include <random>

#include "doctest.h"
#include "json.hpp"
#include "krboot/engine.hpp"
#include "krboot/errors.hpp"
#include "krboot/graph.hpp"

using namespace krboot;

TEST_CASE("mask encoding round trips") {
    std::mt19937_64 rng(424242);
    for (int n : {2, 5, 9, 11}) {
        std::uint64_t all = (n * (n - 1) / 2 == 64)
                                ? ~0ULL
                                : (1ULL << pair_count(n)) - 1;
        for (int i = 0; i < 30; ++i) {
            std::uint64_t mask = rng() & all;
            Graph g = graph_from_mask(n, mask);
            CHECK(mask_from_graph(g) == mask);
            CHECK(g.edge_count() == __builtin_popcountll(mask));
        }
    }
}

TEST_CASE("bitmask closure agrees with the engine") {
    SUBCASE("every graph on up to five vertices") {
        for (int n = 2; n <= 5; ++n) {
            for (int r : {3, 4, 5}) {
                std::uint64_t masks = 1ULL << pair_count(n);
                for (std::uint64_t mask = 0; mask < masks; ++mask) {
                    SmallClosure fast = small_close(n, mask, r);
                    InfectionTrace trace =
                        close(graph_from_mask(n, mask), ProcessParams{r});
                    CAPTURE(n);
                    CAPTURE(r);
                    CAPTURE(mask);
                    REQUIRE(fast.tau == trace.tau);
                    REQUIRE(fast.percolates == trace.percolates);
                    REQUIRE(graph_from_mask(n, fast.closure_mask) ==
                            trace.closure);
                }
            }
        }
    }
    SUBCASE("sampled larger graphs") {
        std::mt19937_64 rng(99173);
        for (int trial = 0; trial < 200; ++trial) {
            int n = 6 + static_cast<int>(rng() % 6);  // 6..11
            std::uint64_t mask = rng() & ((1ULL << pair_count(n)) - 1);
            int r = 4 + static_cast<int>(rng() % 2);
            SmallClosure fast = small_close(n, mask, r);
            InfectionTrace trace =
                close(graph_from_mask(n, mask), ProcessParams{r});
            CAPTURE(trial);
            REQUIRE(fast.tau == trace.tau);
            REQUIRE(fast.percolates == trace.percolates);
            REQUIRE(mask_from_graph(trace.closure) == fast.closure_mask);
        }
    }
    SUBCASE("guards its vertex limit") {
        CHECK_THROWS_AS(small_close(12, 0, 4), InputError);
    }
}

TEST_CASE("largest saturation time over all small graphs") {
    // r = 3 realizes ceil(log2(n-1)); r = 4 realizes n - 3.
    int expected_r3[] = {1, 2, 2, 3};
    for (int n = 3; n <= 6; ++n) {
        SearchResult res = tau_max(n, 3);
        CHECK(res.found);
        CHECK(res.value == expected_r3[n - 3]);
        CHECK(res.graphs_scanned == 1ULL << pair_count(n));
        CHECK(res.witnesses.size() <= 16);
        for (const Graph& w : res.witnesses) {
            CHECK(saturation_time(w, ProcessParams{3}) == res.value);
        }
    }
    for (int n = 4; n <= 6; ++n) {
        SearchResult res = tau_max(n, 4);
        CHECK(res.value == n - 3);
        for (const Graph& w : res.witnesses) {
            CHECK(saturation_time(w, ProcessParams{4}) == res.value);
        }
    }
}

TEST_CASE("fewest percolating edges matches the closed form") {
    // Percolation needs C(n,2) - C(n-r+2,2) edges; verified here for one
    // spot value, with the full grid covered by the acceptance run.
    SearchResult res = min_percolating_edges(5, 4);
    CHECK(res.found);
    CHECK(res.value == pair_count(5) - pair_count(3));
    for (const Graph& w : res.witnesses) {
        CHECK(w.edge_count() == res.value);
        CHECK(close(w, ProcessParams{4}).percolates);
    }
    CHECK_THROWS_AS(min_percolating_edges(3, 4), InputError);
}

TEST_CASE("fewest edges at a fixed saturation time") {
    SearchResult t1 = min_edges_given_tau(6, 4, 1);
    CHECK(t1.found);
    CHECK(t1.value == 5);
    CHECK(t1.tau_target == 1);
    SearchResult t2 = min_edges_given_tau(6, 4, 2);
    CHECK(t2.found);
    CHECK(t2.value == 7);
    for (const Graph& w : t2.witnesses) {
        CHECK(w.edge_count() == 7);
        CHECK(saturation_time(w, ProcessParams{4}) == 2);
    }
    // No graph on 4 vertices needs 5 rounds at r = 4.
    SearchResult none = min_edges_given_tau(4, 4, 5);
    CHECK_FALSE(none.found);
}

TEST_CASE("sharded scans cover the space exactly once") {
    SearchResult whole = tau_max(6, 4);
    SearchOptions opt;
    opt.shards = 3;
    std::uint64_t scanned = 0;
    long long best = -1;
    for (int shard = 0; shard < 3; ++shard) {
        opt.shard_index = shard;
        SearchResult part = tau_max(6, 4, opt);
        CHECK(part.shards == 3);
        CHECK(part.shard_index == shard);
        scanned += part.graphs_scanned;
        if (part.found) best = std::max(best, part.value);
    }
    CHECK(scanned == whole.graphs_scanned);
    CHECK(best == whole.value);
}

TEST_CASE("worker count does not change the result") {
    SearchOptions serial;
    serial.workers = 1;
    SearchOptions parallel;
    parallel.workers = 3;
    SearchResult a = min_edges_given_tau(6, 4, 2, serial);
    SearchResult b = min_edges_given_tau(6, 4, 2, parallel);
    CHECK(a.value == b.value);
    CHECK(a.found == b.found);
    CHECK(a.graphs_scanned == b.graphs_scanned);
    REQUIRE(a.witnesses.size() == b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
        CHECK(a.witnesses[i] == b.witnesses[i]);
    }
}

TEST_CASE("deduplicated scans visit one graph per isomorphism class") {
    SearchOptions dedup;
    dedup.dedup = true;
    SearchResult a = tau_max(5, 4, dedup);
    CHECK(a.graphs_scanned == 34);  // unlabeled graphs on 5 vertices
    CHECK(a.value == tau_max(5, 4).value);
    SearchResult b = tau_max(6, 4, dedup);
    CHECK(b.graphs_scanned == 156);  // unlabeled graphs on 6 vertices
    CHECK(b.value == tau_max(6, 4).value);
    CHECK_THROWS_AS(tau_max(7, 4, dedup), BudgetError);
}

TEST_CASE("scan budget") {
    CHECK_THROWS_AS(tau_max(8, 4), BudgetError);
    SearchOptions raised;
    raised.budget = 9;
    CHECK_THROWS_AS(tau_max(9, 4, raised), BudgetError);
    CHECK_THROWS_AS(tau_max(2, 4), InputError);
}

TEST_CASE("search result JSON") {
    SearchResult res = tau_max(5, 4);
    nlohmann::json doc = nlohmann::json::parse(search_result_to_json(res));
    CHECK(doc["objective"] == "tau_max");
    CHECK(doc["n"] == 5);
    CHECK(doc["r"] == 4);
    CHECK(doc["value"] == 2);
    CHECK(doc["found"] == true);
    CHECK(doc["graphs_scanned"] == 1024);
    CHECK(doc["witnesses"].is_array());
    CHECK(!doc["witnesses"].empty());
}
