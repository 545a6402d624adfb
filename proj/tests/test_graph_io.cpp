#include "krboot/graph_io.hpp"

#include <random>

#include "doctest.h"
#include "krboot/errors.hpp"
#include "krboot/graph.hpp"

using namespace krboot;

TEST_CASE("graph text round trip") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + static_cast<int>(rng() % 12);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (rng() % 3 == 0) edges.push_back({u, v});
            }
        }
        Graph g = build_graph(n, edges);
        CHECK(graph_from_text(graph_to_text(g)) == g);
    }
}

TEST_CASE("parser accepts comments, blank lines, and loose whitespace") {
    Graph g = graph_from_text(
        "# a triangle plus a pendant\n"
        "\n"
        "4 4\n"
        "0 1\n"
        "  1\t2\n"
        "# middle note\n"
        "0 2\n"
        "2 3\n"
        "\n");
    CHECK(g.n() == 4);
    CHECK(g.edge_count() == 4);
    CHECK(g.has_edge(2, 3));
}

TEST_CASE("parser accepts the edgeless graph") {
    Graph g = graph_from_text("1 0\n");
    CHECK(g.n() == 1);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(graph_from_text(""), InputError);
    CHECK_THROWS_AS(graph_from_text("# only a comment\n"), InputError);
    CHECK_THROWS_AS(graph_from_text("3\n"), InputError);
    CHECK_THROWS_AS(graph_from_text("x 1\n0 1\n"), InputError);
    CHECK_THROWS_AS(graph_from_text("-2 0\n"), InputError);
    CHECK_THROWS_AS(graph_from_text("3 1\n0 0\n"), InputError);       // loop
    CHECK_THROWS_AS(graph_from_text("3 1\n0 3\n"), InputError);       // range
    CHECK_THROWS_AS(graph_from_text("3 2\n0 1\n"), InputError);       // short
    CHECK_THROWS_AS(graph_from_text("3 1\n0 1\n1 2\n"), InputError);  // long
    CHECK_THROWS_AS(graph_from_text("3 1\n0 1 9\n"), InputError);     // extra
    CHECK_THROWS_AS(graph_from_text("3 2\n0 1\n1 0\n"), InputError);  // dup
}

TEST_CASE("read_graph_file reports missing paths") {
    CHECK_THROWS_AS(read_graph_file("/nonexistent/graph.txt"), InputError);
}
