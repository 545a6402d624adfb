#include "krboot/families.hpp"

#include <set>

#include "doctest.h"
#include "krboot/engine.hpp"
#include "krboot/errors.hpp"
#include "krboot/graph.hpp"

using namespace krboot;

namespace {

long long choose2(long long x) { return x * (x - 1) / 2; }

}  // namespace

TEST_CASE("build_kr_minus_e leaves exactly the designated pair absent") {
    for (int r : {3, 4, 6}) {
        Graph g = build_kr_minus_e(r);
        CHECK(g.n() == r);
        CHECK(g.edge_count() == pair_count(r) - 1);
        CHECK_FALSE(g.has_edge(r - 2, r - 1));
    }
    CHECK_THROWS_AS(build_kr_minus_e(2), InputError);
}

TEST_CASE("build_path") {
    Graph g = build_path(4);
    CHECK(g.n() == 5);
    CHECK(g.edge_count() == 4);
    CHECK(diameter(g) == 4);
    CHECK(build_path(0).n() == 1);
    CHECK_THROWS_AS(build_path(-1), InputError);
}

TEST_CASE("chain family sizes, saturation time, and verification") {
    for (int r : {4, 5, 6, 7}) {
        for (int t = 1; t <= 8; ++t) {
            auto [g, layout] = build_ht(r, t);
            CAPTURE(r);
            CAPTURE(t);
            CHECK(g.n() == r - 1 + t);
            CHECK(g.edge_count() == choose2(r - 1) + t * (r - 2));
            CHECK(verify_ht(g, layout).ok);

            InfectionTrace trace = close(g, ProcessParams{r});
            CHECK(trace.tau == t);
            CHECK(trace.percolates);
        }
    }
}

TEST_CASE("every late chain edge activates exactly at its own round") {
    // The defining timing property of H_t: an absent pair {u, v_s} with u
    // introduced at least two positions earlier activates at round s, never
    // sooner, never later.
    for (int r : {4, 5, 6}) {
        for (int t = 1; t <= 8; ++t) {
            auto [g, layout] = build_ht(r, t);
            InfectionTrace trace = close(g, ProcessParams{r});
            std::vector<int> intro(g.n(), 0);  // chain position, 0 for body
            for (int s = 1; s <= t; ++s) intro[layout.chain[s - 1]] = s;
            for (int s = 1; s <= t; ++s) {
                int vs = layout.chain[s - 1];
                for (int u = 0; u < g.n(); ++u) {
                    if (u == vs || g.has_edge(u, vs)) continue;
                    if (intro[u] > std::max(s - 2, 0)) continue;
                    CAPTURE(r);
                    CAPTURE(s);
                    CAPTURE(u);
                    CHECK(trace.time_of(u, vs) == s);
                }
            }
        }
    }
}

TEST_CASE("verify_ht flags tampered graphs and layouts") {
    auto [g, layout] = build_ht(5, 3);

    SUBCASE("missing chain edge") {
        std::vector<Edge> edges;
        int v1 = layout.chain[0];
        for (const Edge& e : g.edges()) {
            if (e != make_edge(v1, layout.chain[1])) edges.push_back(e);
        }
        VerificationReport rep = verify_ht(build_graph(g.n(), edges), layout);
        CHECK_FALSE(rep.ok);
        CHECK_FALSE(rep.violations.empty());
    }

    SUBCASE("extra edge closes a skipped pair") {
        std::vector<Edge> edges = g.edges();
        // attach v_1 to the one body vertex it must skip
        int v1 = layout.chain[0];
        for (int b : layout.body.members()) {
            if (!g.has_edge(b, v1)) edges.push_back({b, v1});
        }
        CHECK_FALSE(verify_ht(build_graph(g.n(), edges), layout).ok);
    }

    SUBCASE("chain order scrambled") {
        HtLayout wrong = layout;
        std::swap(wrong.chain[0], wrong.chain[2]);
        CHECK_FALSE(verify_ht(g, wrong).ok);
    }

    SUBCASE("body not a clique") {
        std::vector<Edge> edges;
        std::vector<int> body = layout.body.members();
        for (const Edge& e : g.edges()) {
            if (e != make_edge(body[0], body[1])) edges.push_back(e);
        }
        CHECK_FALSE(verify_ht(build_graph(g.n(), edges), layout).ok);
    }
}

TEST_CASE("chain layout JSON round trip") {
    auto [g, layout] = build_ht(6, 4);
    HtLayout back = ht_layout_from_json(ht_layout_to_json(layout));
    CHECK(back.r == layout.r);
    CHECK(back.t == layout.t);
    CHECK(back.v0 == layout.v0);
    CHECK(back.chain == layout.chain);
    CHECK(back.body == layout.body);
    CHECK(verify_ht(g, back).ok);

    CHECK_THROWS_AS(ht_layout_from_json("not json"), InputError);
    CHECK_THROWS_AS(ht_layout_from_json("{\"r\":5}"), InputError);
}

TEST_CASE("layered family guards its parameter domain") {
    CHECK_THROWS_AS(build_lh(4, 2), InputError);  // needs r >= 5
    CHECK_THROWS_AS(build_lh(5, 1), InputError);  // h >= 2
    CHECK_THROWS_AS(build_lh(7, 4), InputError);  // h must be prime
    CHECK_THROWS_AS(build_lh(5, 5), InputError);  // h <= r-2 (else the
                                                  // borrowed tails collide)
}

TEST_CASE("layered family sizes and saturation times") {
    struct Expect {
        int r, h, tau;
    };
    // Saturation runs h^2(h+3)/2 rounds; the edge count comes out one above
    // the closed form e = h^2(r^2 - 3r/2 - 3) + h^3(r/2 - 1) because the
    // first source keeps its full body clique.
    for (Expect ex : {Expect{5, 2, 10}, Expect{5, 3, 27}, Expect{6, 2, 10},
                      Expect{7, 2, 10}}) {
        auto [g, layout] = build_lh(ex.r, ex.h);
        CAPTURE(ex.r);
        CAPTURE(ex.h);
        long long h2 = static_cast<long long>(ex.h) * ex.h;
        CHECK(g.n() == 2 * ex.r * h2 - 4 * h2 + 2);
        long long stated = (h2 * (2LL * ex.r * ex.r - 3 * ex.r - 6) +
                            h2 * ex.h * (ex.r - 2)) /
                           2;
        CHECK(g.edge_count() == stated + 1);
        CHECK(verify_lh(g, layout).ok);
        CHECK(saturation_time(g, ProcessParams{ex.r}) == ex.tau);
    }
}

TEST_CASE("verify_lh catches a removed relay edge") {
    auto [g, layout] = build_lh(5, 2);
    std::vector<Edge> edges = g.edges();
    edges.pop_back();
    VerificationReport rep = verify_lh(build_graph(g.n(), edges), layout);
    CHECK_FALSE(rep.ok);
}

TEST_CASE("layered layout JSON round trip") {
    auto [g, layout] = build_lh(5, 2);
    LhLayout back = lh_layout_from_json(lh_layout_to_json(layout));
    CHECK(back.r == layout.r);
    CHECK(back.h == layout.h);
    CHECK(back.sources.size() == layout.sources.size());
    CHECK(verify_lh(g, back).ok);
    CHECK_THROWS_AS(lh_layout_from_json("{}"), InputError);
}

TEST_CASE("the source-intersection graph is sparse and short-cycle-free") {
    for (auto [r, h] : {std::pair{5, 2}, {5, 3}, {6, 2}, {7, 2}}) {
        auto [g, layout] = build_lh(r, h);
        Graph red = reduced_graph(layout);
        CAPTURE(r);
        CAPTURE(h);
        CHECK(red.n() == h * h);
        CHECK(red.edge_count() == h * h * (h - 1) / 2);

        // no triangle: no edge within any neighborhood
        for (int v = 0; v < red.n(); ++v) {
            std::vector<int> nb = red.neighbors(v).members();
            for (std::size_t i = 0; i < nb.size(); ++i) {
                for (std::size_t j = i + 1; j < nb.size(); ++j) {
                    CHECK_FALSE(red.has_edge(nb[i], nb[j]));
                }
            }
        }
        // no 4-cycle: distinct vertices never share two neighbors
        for (int u = 0; u < red.n(); ++u) {
            for (int v = u + 1; v < red.n(); ++v) {
                CHECK(common_neighbors(red, u, v).size() <= 1);
            }
        }
    }
}
