#include "krboot/engine.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "krboot/errors.hpp"
#include "krboot/families.hpp"
#include "krboot/graph.hpp"

using namespace krboot;

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (coin(rng)) edges.push_back({u, v});
        }
    }
    return build_graph(n, edges);
}

// The defining test of a completable edge, written against nothing but the
// adjacency predicate: some r-2 common neighbors of u and v are pairwise
// adjacent.
bool brute_completable(const Graph& g, int u, int v, int r) {
    std::vector<int> common;
    for (int w = 0; w < g.n(); ++w) {
        if (w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)) {
            common.push_back(w);
        }
    }
    const int k = r - 2;
    if (static_cast<int>(common.size()) < k) return false;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int from) -> bool {
        if (static_cast<int>(pick.size()) == k) {
            for (std::size_t i = 0; i < pick.size(); ++i) {
                for (std::size_t j = i + 1; j < pick.size(); ++j) {
                    if (!g.has_edge(pick[i], pick[j])) return false;
                }
            }
            return true;
        }
        for (std::size_t i = from; i < common.size(); ++i) {
            pick.push_back(common[i]);
            if (self(self, static_cast<int>(i) + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(rec, 0);
}

bool same_trace(const InfectionTrace& a, const InfectionTrace& b) {
    return a.n == b.n && a.r == b.r && a.tau == b.tau &&
           a.percolates == b.percolates && a.events == b.events &&
           a.closure == b.closure && a.initial == b.initial;
}

Graph graph_from_bits(int n, unsigned mask) {
    std::vector<Edge> edges;
    int bit = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v, ++bit) {
            if (mask & (1u << bit)) edges.push_back({u, v});
        }
    }
    return build_graph(n, edges);
}

}  // namespace

TEST_CASE("check_params enforces r >= 3") {
    CHECK_THROWS_AS(check_params(ProcessParams{2}), InputError);
    CHECK_NOTHROW(check_params(ProcessParams{3}));
}

TEST_CASE("completable_edges matches the brute-force definition") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        int r = 3 + static_cast<int>(rng() % 3);
        Graph g = random_graph(n, 0.5, rng);
        std::vector<Edge> expected;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (!g.has_edge(u, v) && brute_completable(g, u, v, r)) {
                    expected.push_back({u, v});
                }
            }
        }
        CHECK(completable_edges(g, ProcessParams{r}) == expected);
    }
}

TEST_CASE("frontier closure equals the naive rescan on every small graph") {
    for (int n = 2; n <= 5; ++n) {
        for (unsigned mask = 0; mask < (1u << pair_count(n)); ++mask) {
            Graph g = graph_from_bits(n, mask);
            for (int r : {3, 4, 5}) {
                InfectionTrace fast = close(g, ProcessParams{r});
                InfectionTrace slow = close_naive(g, ProcessParams{r});
                REQUIRE(same_trace(fast, slow));
            }
        }
    }
}

TEST_CASE("frontier closure equals the naive rescan on seeded random graphs") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 3 + static_cast<int>(rng() % 10);
        int r = 4 + static_cast<int>(rng() % 2);
        Graph g = random_graph(n, 0.2 + 0.06 * (trial % 10), rng);
        REQUIRE(same_trace(close(g, ProcessParams{r}),
                           close_naive(g, ProcessParams{r})));
    }
}

TEST_CASE("the closure is a fixed point and closing is idempotent") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + static_cast<int>(rng() % 9);
        int r = 3 + static_cast<int>(rng() % 3);
        Graph g = random_graph(n, 0.4, rng);
        InfectionTrace trace = close(g, ProcessParams{r});
        CHECK(step(trace.closure, ProcessParams{r}) == trace.closure);
        InfectionTrace again = close(trace.closure, ProcessParams{r});
        CHECK(again.tau == 0);
        CHECK(again.events.empty());
        CHECK(again.closure == trace.closure);
    }
}

TEST_CASE("closure is monotone in the initial graph") {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 6);
        Graph g = random_graph(n, 0.35, rng);
        std::vector<Edge> plus = g.edges();
        // add one absent edge, if any
        Graph c = complement(g);
        if (c.edge_count() == 0) continue;
        plus.push_back(c.edges()[rng() % c.edges().size()]);
        Graph bigger = build_graph(n, plus);
        for (int r : {3, 4}) {
            Graph small_closure = close(g, ProcessParams{r}).closure;
            Graph big_closure = close(bigger, ProcessParams{r}).closure;
            for (const Edge& e : small_closure.edges()) {
                CHECK(big_closure.has_edge(e.first, e.second));
            }
        }
    }
}

TEST_CASE("closure commutes with relabeling") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(rng() % 7);
        int r = 3 + static_cast<int>(rng() % 3);
        Graph g = random_graph(n, 0.45, rng);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        InfectionTrace a = close(g, ProcessParams{r});
        InfectionTrace b = close(relabel(g, perm), ProcessParams{r});
        CHECK(a.tau == b.tau);
        CHECK(a.percolates == b.percolates);
        CHECK(relabel(a.closure, perm) == b.closure);
    }
}

TEST_CASE("known endpoints: complete, near-complete, and empty graphs") {
    for (int r : {3, 4, 5, 6}) {
        Graph full = complement(Graph(r));
        InfectionTrace done = close(full, ProcessParams{r});
        CHECK(done.tau == 0);
        CHECK(done.percolates);

        InfectionTrace one_step = close(build_kr_minus_e(r), ProcessParams{r});
        CHECK(one_step.tau == 1);
        CHECK(one_step.percolates);
        CHECK(one_step.events.size() == 1);
        CHECK(one_step.events[0] == InfectionEvent{r - 2, r - 1, 1});
    }
    InfectionTrace nothing = close(Graph(6), ProcessParams{4});
    CHECK(nothing.tau == 0);
    CHECK_FALSE(nothing.percolates);
}

TEST_CASE("r=3 on paths: doubling reach per round") {
    // In triangle percolation a path closes up in log2(diameter) rounds.
    for (int len : {1, 2, 3, 4, 7, 8}) {
        Graph path = build_path(len);
        InfectionTrace trace = close(path, ProcessParams{3});
        CHECK(trace.percolates);
        int expect = 0;
        while ((1 << expect) < len) ++expect;
        CHECK(trace.tau == expect);
    }
}

TEST_CASE("time_of reads activation rounds off the trace") {
    Graph g = build_ht(4, 2).first;
    InfectionTrace trace = close(g, ProcessParams{4});
    for (const Edge& e : g.edges()) {
        CHECK(trace.time_of(e.first, e.second) == 0);
    }
    for (const InfectionEvent& ev : trace.events) {
        CHECK(trace.time_of(ev.u, ev.v) == ev.t);
    }
    Graph lonely = build_graph(3, {{0, 1}});
    InfectionTrace still = close(lonely, ProcessParams{4});
    CHECK(still.time_of(0, 2) == -1);
}

TEST_CASE("saturation_time and percolates agree with the trace") {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        int r = 3 + static_cast<int>(rng() % 3);
        Graph g = random_graph(n, 0.5, rng);
        InfectionTrace trace = close(g, ProcessParams{r});
        CHECK(saturation_time(g, ProcessParams{r}) == trace.tau);
        CHECK(percolates(g, ProcessParams{r}) == trace.percolates);
        CHECK(trace.percolates == trace.closure.is_complete());
        // events are sorted by round, then endpoints
        for (std::size_t i = 1; i < trace.events.size(); ++i) {
            const InfectionEvent& a = trace.events[i - 1];
            const InfectionEvent& b = trace.events[i];
            CHECK(std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v));
        }
    }
}

TEST_CASE("trace_to_json emits the pinned shape") {
    InfectionTrace trace = close(build_kr_minus_e(4), ProcessParams{4});
    CHECK(trace_to_json(trace) ==
          "{\"events\":[{\"t\":1,\"u\":2,\"v\":3}],"
          "\"initial\":[[0,1],[0,2],[0,3],[1,2],[1,3]],"
          "\"n\":4,\"percolates\":true,\"r\":4,\"tau\":1}");
}

TEST_CASE("closing twice from the same input is bit-for-bit repeatable") {
    std::mt19937_64 rng(37);
    Graph g = random_graph(12, 0.3, rng);
    InfectionTrace a = close(g, ProcessParams{4});
    InfectionTrace b = close(g, ProcessParams{4});
    CHECK(same_trace(a, b));
    CHECK(trace_to_json(a) == trace_to_json(b));
}
