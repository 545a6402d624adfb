#include "krboot/source_analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"
#include "krboot/errors.hpp"

namespace krboot {

namespace {

struct Dsu {
    std::vector<int> parent;

    explicit Dsu(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Keeps the smaller id as the root so group roots are reproducible.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

long long edges_within(const Graph& g, const VertexSet& s) {
    long long count = 0;
    std::vector<int> mem = s.members();
    for (std::size_t i = 0; i < mem.size(); ++i) {
        for (std::size_t j = i + 1; j < mem.size(); ++j) {
            if (g.has_edge(mem[i], mem[j])) ++count;
        }
    }
    return count;
}

long long choose2(long long x) { return x * (x - 1) / 2; }

}  // namespace

std::vector<VertexSet> find_zero_sources(const Graph& g,
                                         const ProcessParams& params,
                                         std::size_t max_cliques) {
    check_params(params);
    std::vector<VertexSet> cliques = maximal_cliques(g);
    if (cliques.size() > max_cliques) {
        throw BudgetError("source enumeration found " +
                          std::to_string(cliques.size()) +
                          " maximal cliques, over the budget of " +
                          std::to_string(max_cliques));
    }
    const int k = static_cast<int>(cliques.size());
    const int need = params.r - 2;
    std::vector<Edge> meta_edges;
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (cliques[i].intersection_size(cliques[j]) >= need) {
                meta_edges.push_back({i, j});
            }
        }
    }
    Graph meta = build_graph(k, meta_edges);
    std::vector<VertexSet> families = maximal_cliques(meta);
    if (families.size() > max_cliques) {
        throw BudgetError("source enumeration found " +
                          std::to_string(families.size()) +
                          " compatible clique families, over the budget of " +
                          std::to_string(max_cliques));
    }
    std::vector<VertexSet> out;
    for (const VertexSet& fam : families) {
        VertexSet span = VertexSet::of(g.n(), {});
        for (int idx : fam.members()) {
            span = set_union(span, cliques[idx]);
        }
        if (static_cast<int>(span.size()) >= params.r) {
            out.push_back(span);
        }
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SourceAnalysis track(const Graph& g, const ProcessParams& params,
                     std::size_t max_cliques) {
    check_params(params);
    SourceAnalysis sa;
    sa.trace = close(g, params);
    const int tau = sa.trace.tau;
    const int r = params.r;
    const int need = r - 2;

    std::vector<std::vector<InfectionEvent>> by_round(tau + 1);
    for (const InfectionEvent& ev : sa.trace.events) {
        by_round[ev.t].push_back(ev);
    }
    std::vector<Graph> rounds;
    rounds.reserve(tau + 1);
    rounds.push_back(g);
    {
        std::vector<Edge> acc = g.edges();
        for (int t = 1; t <= tau; ++t) {
            for (const InfectionEvent& ev : by_round[t]) {
                acc.push_back(make_edge(ev.u, ev.v));
            }
            rounds.push_back(build_graph(g.n(), acc));
        }
    }

    // Source sets already encountered at earlier times; a set only counts as
    // a t-source the first time it appears.
    std::set<std::vector<int>> seen;
    std::vector<std::vector<char>> raw_active;  // [record][round]
    Dsu groups(0);

    auto detect_births = [&](int t) {
        std::vector<VertexSet> raw = find_zero_sources(rounds[t], params, max_cliques);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const VertexSet& s = raw[i];
            if (seen.count(s.members())) continue;
            // A re-detected complex that lies inside a live expansion is
            // absorbed structure; one that contains a live expansion is that
            // expansion's continuation (the source of the process started at
            // time t). Neither starts a new record.
            bool covered = false;
            for (const SourceRecord& rec : sa.records) {
                if (rec.birth_time == t) continue;
                auto it = rec.expansion.find(t);
                if (it == rec.expansion.end()) continue;
                if (s.is_subset_of(it->second) || it->second.is_subset_of(s)) {
                    covered = true;
                    break;
                }
            }
            bool inside_peer = false;
            for (std::size_t j = 0; j < raw.size() && !inside_peer; ++j) {
                if (j != i && s.is_subset_of(raw[j]) && !(s == raw[j])) {
                    inside_peer = true;
                }
            }
            if (inside_peer) sa.overlapping_sources = true;
            if (covered || inside_peer) continue;
            SourceRecord rec;
            rec.id = static_cast<int>(sa.records.size());
            rec.birth_time = t;
            rec.vertex_count = static_cast<int>(s.size());
            rec.edge_count = static_cast<int>(edges_within(rounds[t], s));
            rec.expansion[t] = s;
            sa.records.push_back(std::move(rec));
            raw_active.emplace_back(tau + 1, 0);
            groups.parent.push_back(static_cast<int>(groups.parent.size()));
        }
        for (const VertexSet& s : raw) {
            seen.insert(s.members());
        }
    };

    auto detect_mergers = [&](int t) {
        const int count = static_cast<int>(sa.records.size());
        for (int i = 0; i < count; ++i) {
            if (sa.records[i].birth_time > t) continue;
            for (int j = i + 1; j < count; ++j) {
                if (sa.records[j].birth_time > t) continue;
                if (groups.find(i) == groups.find(j)) continue;
                const VertexSet& a = sa.records[i].expansion.at(t);
                const VertexSet& b = sa.records[j].expansion.at(t);
                int inter = a.intersection_size(b);
                if (inter < need) continue;
                sa.mergers.push_back({t, i, j, inter});
                groups.unite(i, j);
            }
        }
    };

    detect_births(0);
    detect_mergers(0);

    for (int t = 1; t <= tau; ++t) {
        const Graph& prev = rounds[t - 1];
        const int alive = static_cast<int>(sa.records.size());
        for (int idx = 0; idx < alive; ++idx) {
            SourceRecord& rec = sa.records[idx];
            if (rec.birth_time > t - 1) continue;
            const VertexSet& before = rec.expansion.at(t - 1);
            VertexSet after = before;
            bool act = false;
            for (const InfectionEvent& ev : by_round[t]) {
                VertexSet cand =
                    set_intersection(common_neighbors(prev, ev.u, ev.v), before);
                if (static_cast<int>(cand.size()) >= need &&
                    contains_clique(prev, cand, need)) {
                    act = true;
                    after.add(ev.u);
                    after.add(ev.v);
                }
            }
            rec.expansion[t] = after;
            raw_active[idx][t] = act ? 1 : 0;
        }
        detect_births(t);
        detect_mergers(t);
    }

    // Replay the mergers chronologically. From the round a record's group
    // merges onward, activity is shared within the group, and the idle run
    // leading into a merger counts as depleted rather than inactive.
    const int count = static_cast<int>(sa.records.size());
    std::vector<std::vector<char>> adj_active(count,
                                              std::vector<char>(tau + 1, 0));
    std::vector<std::vector<char>> depleted(count,
                                            std::vector<char>(tau + 1, 0));
    Dsu replay(count);
    std::size_t mi = 0;
    while (mi < sa.mergers.size() && sa.mergers[mi].time == 0) {
        replay.unite(sa.mergers[mi].first, sa.mergers[mi].second);
        ++mi;
    }
    for (int t = 1; t <= tau; ++t) {
        std::size_t round_begin = mi;
        while (mi < sa.mergers.size() && sa.mergers[mi].time == t) {
            replay.unite(sa.mergers[mi].first, sa.mergers[mi].second);
            ++mi;
        }
        std::vector<char> group_act(count, 0);
        for (int i = 0; i < count; ++i) {
            if (raw_active[i][t]) group_act[replay.find(i)] = 1;
        }
        for (int i = 0; i < count; ++i) {
            adj_active[i][t] = group_act[replay.find(i)];
        }
        // Everyone in a group that gained members this round merged at t.
        std::vector<char> merged_root(count, 0);
        for (std::size_t e = round_begin; e < mi; ++e) {
            merged_root[replay.find(sa.mergers[e].first)] = 1;
        }
        for (int i = 0; i < count; ++i) {
            if (!merged_root[replay.find(i)]) continue;
            if (sa.records[i].birth_time > t) continue;
            // The idle run draining into this merger is depleted time. It may
            // reach below the record's birth: a source born straight into a
            // merger spends its whole pre-birth stretch depleted, not
            // inactive.
            int s = adj_active[i][t] ? t - 1 : t;
            while (s >= 1 && !adj_active[i][s]) {
                depleted[i][s] = 1;
                --s;
            }
        }
    }

    for (int i = 0; i < count; ++i) {
        SourceRecord& rec = sa.records[i];
        int last_active = 0;
        for (int t = 1; t <= tau; ++t) {
            if (adj_active[i][t]) {
                rec.active_steps.push_back(t);
                last_active = t;
            }
        }
        // Inactive time: the pre-birth rounds plus idle gaps between active
        // rounds, except where the idle run drains into a merger (depleted)
        // or the group was already active on the record's behalf.
        for (int t = 1; t <= tau; ++t) {
            if (adj_active[i][t] || depleted[i][t]) continue;
            if (t <= rec.birth_time || t < last_active) {
                rec.inactive_steps.push_back(t);
            }
        }
        int run_start = -1;
        for (int t = 1; t <= tau + 1; ++t) {
            bool in = t <= tau && depleted[i][t];
            if (in && run_start < 0) run_start = t;
            if (!in && run_start >= 0) {
                rec.depleted_intervals.push_back({run_start, t - 1});
                run_start = -1;
            }
        }
    }

    std::vector<std::vector<int>> members(count);
    for (int i = 0; i < count; ++i) {
        members[replay.find(i)].push_back(i);
    }
    std::vector<int> tree_of_root(count, -1);
    for (int root = 0; root < count; ++root) {
        if (members[root].empty()) continue;
        MergerTree tree;
        tree.members = members[root];
        int last = 0;
        for (int rec : tree.members) {
            if (!sa.records[rec].active_steps.empty()) {
                last = std::max(last, sa.records[rec].active_steps.back());
            }
        }
        tree.comprehensive = (last == tau);
        tree_of_root[root] = static_cast<int>(sa.trees.size());
        sa.trees.push_back(std::move(tree));
    }
    for (const MergerEvent& ev : sa.mergers) {
        sa.trees[tree_of_root[replay.find(ev.first)]].event_times.push_back(
            ev.time);
    }
    for (MergerTree& tree : sa.trees) {
        std::sort(tree.event_times.begin(), tree.event_times.end());
    }
    // Protracted: comprehensive and with componentwise-latest merger times
    // among comprehensive trees of the same size.
    for (MergerTree& tree : sa.trees) {
        if (!tree.comprehensive) continue;
        bool latest = true;
        for (const MergerTree& other : sa.trees) {
            if (&other == &tree || !other.comprehensive ||
                other.members.size() != tree.members.size()) {
                continue;
            }
            for (std::size_t i = 0; i < tree.event_times.size(); ++i) {
                if (tree.event_times[i] < other.event_times[i]) {
                    latest = false;
                    break;
                }
            }
            if (!latest) break;
        }
        tree.protracted = latest;
    }
    return sa;
}

AuditReport audit_bounds(const Graph& g, const ProcessParams& params,
                         std::size_t max_cliques) {
    AuditReport rep;
    rep.analysis = track(g, params, max_cliques);
    rep.n = g.n();
    rep.r = params.r;
    rep.tau = rep.analysis.trace.tau;
    rep.edge_total = g.edge_count();

    const auto& recs = rep.analysis.records;
    const int source_count = static_cast<int>(recs.size());
    const long long v = rep.n;
    const long long e = rep.edge_total;
    const long long tau = rep.tau;
    const long long r = rep.r;

    bool no_inactive = true;
    long long min_span = 0;
    long long min_edges = 0;
    for (int i = 0; i < source_count; ++i) {
        if (!recs[i].inactive_steps.empty()) no_inactive = false;
        if (i == 0 || recs[i].vertex_count < min_span) {
            min_span = recs[i].vertex_count;
        }
        if (i == 0 || recs[i].edge_count < min_edges) {
            min_edges = recs[i].edge_count;
        }
    }

    // Sources are separated when every merger joins two expansions that both
    // predate the merger round; minimality of the merger time then puts
    // their intersection below r-2 one round earlier. The multi-source
    // bounds are stated without this condition, but their growth arguments
    // quietly rely on it: a source born straight into a merger (two 0-sources
    // sharing r-2 vertices, or a later complex surfacing on top of an
    // established expansion) has no prior round to grow from. The -separated
    // rows below carry the repaired claims.
    bool separated = true;
    for (const MergerEvent& ev : rep.analysis.mergers) {
        if (ev.time <= recs[ev.first].birth_time ||
            ev.time <= recs[ev.second].birth_time) {
            separated = false;
        }
    }

    // A merger is two-party when no pre-existing group takes part in more
    // than one merger event of the same round.
    bool two_party = true;
    {
        Dsu replay(source_count);
        std::size_t mi = 0;
        while (mi < rep.analysis.mergers.size()) {
            int t = rep.analysis.mergers[mi].time;
            std::size_t end = mi;
            while (end < rep.analysis.mergers.size() &&
                   rep.analysis.mergers[end].time == t) {
                ++end;
            }
            std::vector<int> touched;
            for (std::size_t k = mi; k < end; ++k) {
                touched.push_back(replay.find(rep.analysis.mergers[k].first));
                touched.push_back(replay.find(rep.analysis.mergers[k].second));
            }
            std::sort(touched.begin(), touched.end());
            for (std::size_t k = 1; k < touched.size(); ++k) {
                if (touched[k] == touched[k - 1]) two_party = false;
            }
            for (std::size_t k = mi; k < end; ++k) {
                replay.unite(rep.analysis.mergers[k].first,
                             rep.analysis.mergers[k].second);
            }
            mi = end;
        }
    }

    std::size_t largest_comprehensive = 0;
    std::size_t largest_protracted = 0;
    for (const MergerTree& tree : rep.analysis.trees) {
        if (!tree.comprehensive) continue;
        largest_comprehensive =
            std::max(largest_comprehensive, tree.members.size());
        if (tree.protracted) {
            largest_protracted = std::max(largest_protracted, tree.members.size());
        }
    }
    auto tree_span = [&](const MergerTree& tree) {
        long long sum = 0;
        for (int rec : tree.members) sum += recs[rec].vertex_count;
        return sum;
    };
    auto tree_edges = [&](const MergerTree& tree) {
        long long sum = 0;
        for (int rec : tree.members) sum += recs[rec].edge_count;
        return sum;
    };

    const bool machinery = r >= 4;
    auto push = [&](std::string name, bool applicable, long long lhs,
                    long long rhs, bool upper, std::string note) {
        BoundCheck check;
        check.name = std::move(name);
        check.applicable = applicable;
        check.lhs = lhs;
        check.rhs = rhs;
        check.holds = applicable && (upper ? lhs <= rhs : lhs >= rhs);
        check.note = std::move(note);
        rep.bounds.push_back(std::move(check));
    };

    push("no-source-stagnation", source_count == 0, tau, 0, true,
         "a graph with no source adds no edges at all");

    push("single-source-span", machinery && source_count == 1, tau,
         source_count == 1 ? v - recs[0].vertex_count + 1 : 0, true,
         "one source: saturation within v - v(S) + 1 rounds");

    {
        bool applicable = machinery && source_count == 1;
        long long missing = 0;
        if (applicable) {
            std::vector<int> mem = recs[0].expansion.at(rep.tau).members();
            for (std::size_t i = 0; i < mem.size(); ++i) {
                for (std::size_t j = i + 1; j < mem.size(); ++j) {
                    if (!rep.analysis.trace.closure.has_edge(mem[i], mem[j])) {
                        ++missing;
                    }
                }
            }
        }
        push("single-source-clique", applicable, missing, 0, true,
             "one source: the final expansion induces a clique");
    }

    push("multi-source-span",
         machinery && source_count >= 2 && no_inactive, tau,
         source_count >= 1 ? v - min_span : 0, true,
         "several sources, none ever inactive: some source has "
         "saturation span v - v(S)");

    push("multi-source-span-separated",
         machinery && source_count >= 2 && no_inactive && separated, tau,
         source_count >= 1 ? v - min_span : 0, true,
         "as multi-source-span, restricted to sources that do not collide "
         "at time 0");

    push("vertex-bound-r4", r == 4 && v >= 3, tau, v - 3, true,
         "every K4 process stops within v - 3 rounds");

    {
        bool applicable = machinery && source_count >= 2 && no_inactive &&
                          two_party && largest_protracted > 0;
        long long best = 0;
        bool all_hold = true;
        bool first = true;
        for (const MergerTree& tree : rep.analysis.trees) {
            if (!tree.protracted || tree.members.size() != largest_protracted) {
                continue;
            }
            long long rhs =
                v - tree_span(tree) +
                (static_cast<long long>(tree.members.size()) - 1) * r;
            if (first || rhs < best) best = rhs;
            first = false;
            if (tau > rhs) all_hold = false;
        }
        BoundCheck check;
        check.name = "merger-tree-span";
        check.applicable = applicable;
        check.lhs = tau;
        check.rhs = best;
        check.holds = applicable && all_hold;
        check.note =
            "two-party mergers only: each largest protracted comprehensive "
            "tree bounds the saturation time";
        rep.bounds.push_back(std::move(check));

        BoundCheck refined = check;
        refined.name = "merger-tree-span-separated";
        refined.applicable = applicable && separated;
        refined.holds = refined.applicable && all_hold;
        refined.note =
            "as merger-tree-span, restricted to sources that do not collide "
            "at time 0";
        rep.bounds.push_back(std::move(refined));
    }

    push("single-source-edges",
         machinery && source_count == 1 && tau >= 1, e,
         source_count == 1 ? recs[0].edge_count + (tau - 1) * (r - 2) : 0,
         false, "one source: the edge count is at least e(S) + (tau-1)(r-2)");

    push("multi-source-edges",
         machinery && source_count >= 2 && no_inactive && tau >= 1, e,
         source_count >= 1 ? (tau - 1) * (r - 2) + min_edges : 0, false,
         "several sources, none ever inactive: some source gives "
         "e >= (tau-1)(r-2) + e(S)");

    {
        bool applicable = machinery && source_count >= 2 && no_inactive &&
                          two_party && tau >= 1 && largest_comprehensive > 0;
        long long best = 0;
        bool all_hold = true;
        bool first = true;
        for (const MergerTree& tree : rep.analysis.trees) {
            if (!tree.comprehensive ||
                tree.members.size() != largest_comprehensive) {
                continue;
            }
            long long rhs =
                (tau - 1) * (r - 2) + tree_edges(tree) -
                (static_cast<long long>(tree.members.size()) - 1) *
                    choose2(r - 1);
            if (first || rhs > best) best = rhs;
            first = false;
            if (e < rhs) all_hold = false;
        }
        BoundCheck check;
        check.name = "merger-tree-edges";
        check.applicable = applicable;
        check.lhs = e;
        check.rhs = best;
        check.holds = applicable && all_hold;
        check.note =
            "two-party mergers only: each largest comprehensive tree bounds "
            "the edge count from below";
        rep.bounds.push_back(std::move(check));

        BoundCheck refined = check;
        refined.name = "merger-tree-edges-separated";
        refined.applicable = applicable && separated;
        refined.holds = refined.applicable && all_hold;
        refined.note =
            "as merger-tree-edges, restricted to sources that do not collide "
            "at time 0";
        rep.bounds.push_back(std::move(refined));
    }

    push("edge-floor-r4-stated", r == 4 && tau >= 1, e, 2 * tau + 6, false,
         "reported for comparison, not asserted: the stated K4 edge floor");
    push("edge-floor-r4-chain", r == 4 && tau >= 1, e, 2 * tau + 3, false,
         "reported for comparison, not asserted: the floor matched by the "
         "chain family, whose graphs have e = 2 tau + 3");

    auto consider = [&](const char* name, bool upper) {
        for (const BoundCheck& check : rep.bounds) {
            if (check.name != name || !check.applicable || !check.holds) {
                continue;
            }
            if (upper) {
                if (!rep.tightest_tau_bound) {
                    rep.tightest_tau_bound = check.name;
                } else {
                    for (const BoundCheck& held : rep.bounds) {
                        if (held.name == *rep.tightest_tau_bound &&
                            check.rhs < held.rhs) {
                            rep.tightest_tau_bound = check.name;
                        }
                    }
                }
            } else {
                if (!rep.tightest_edge_bound) {
                    rep.tightest_edge_bound = check.name;
                } else {
                    for (const BoundCheck& held : rep.bounds) {
                        if (held.name == *rep.tightest_edge_bound &&
                            check.rhs > held.rhs) {
                            rep.tightest_edge_bound = check.name;
                        }
                    }
                }
            }
        }
    };
    consider("no-source-stagnation", true);
    consider("single-source-span", true);
    consider("multi-source-span", true);
    consider("vertex-bound-r4", true);
    consider("merger-tree-span", true);
    consider("single-source-edges", false);
    consider("multi-source-edges", false);
    consider("merger-tree-edges", false);
    return rep;
}

namespace {

nlohmann::json analysis_doc(const SourceAnalysis& sa) {
    nlohmann::json j;
    j["n"] = sa.trace.n;
    j["r"] = sa.trace.r;
    j["tau"] = sa.trace.tau;
    j["overlapping_sources"] = sa.overlapping_sources;
    j["records"] = nlohmann::json::array();
    for (const SourceRecord& rec : sa.records) {
        nlohmann::json rj;
        rj["id"] = rec.id;
        rj["birth"] = rec.birth_time;
        rj["members"] = rec.expansion.at(rec.birth_time).members();
        rj["vertex_count"] = rec.vertex_count;
        rj["edge_count"] = rec.edge_count;
        nlohmann::json sizes = nlohmann::json::object();
        for (const auto& [t, s] : rec.expansion) {
            sizes[std::to_string(t)] = s.size();
        }
        rj["expansion_sizes"] = std::move(sizes);
        rj["active"] = rec.active_steps;
        rj["inactive"] = rec.inactive_steps;
        nlohmann::json dep = nlohmann::json::array();
        for (const auto& [a, b] : rec.depleted_intervals) {
            dep.push_back(nlohmann::json::array({a, b}));
        }
        rj["depleted"] = std::move(dep);
        j["records"].push_back(std::move(rj));
    }
    j["mergers"] = nlohmann::json::array();
    for (const MergerEvent& ev : sa.mergers) {
        j["mergers"].push_back({{"time", ev.time},
                                {"first", ev.first},
                                {"second", ev.second},
                                {"intersection", ev.intersection_size}});
    }
    j["trees"] = nlohmann::json::array();
    for (const MergerTree& tree : sa.trees) {
        j["trees"].push_back({{"members", tree.members},
                              {"event_times", tree.event_times},
                              {"comprehensive", tree.comprehensive},
                              {"protracted", tree.protracted}});
    }
    return j;
}

}  // namespace

std::string analysis_to_json(const SourceAnalysis& sa) {
    return analysis_doc(sa).dump(2) + "\n";
}

std::string audit_to_json(const AuditReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["r"] = report.r;
    j["tau"] = report.tau;
    j["edge_total"] = report.edge_total;
    j["sources"] = analysis_doc(report.analysis);
    j["bounds"] = nlohmann::json::array();
    for (const BoundCheck& check : report.bounds) {
        j["bounds"].push_back({{"name", check.name},
                               {"applicable", check.applicable},
                               {"holds", check.holds},
                               {"lhs", check.lhs},
                               {"rhs", check.rhs},
                               {"note", check.note}});
    }
    if (report.tightest_tau_bound) {
        j["tightest_tau_bound"] = *report.tightest_tau_bound;
    } else {
        j["tightest_tau_bound"] = nullptr;
    }
    if (report.tightest_edge_bound) {
        j["tightest_edge_bound"] = *report.tightest_edge_bound;
    } else {
        j["tightest_edge_bound"] = nullptr;
    }
    return j.dump(2) + "\n";
}

}  // namespace krboot
