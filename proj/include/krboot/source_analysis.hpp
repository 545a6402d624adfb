#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krboot/engine.hpp"
#include "krboot/graph.hpp"

namespace krboot {

// A source is a maximal union of inclusion-maximal cliques that pairwise
// share at least r-2 vertices and together span at least r vertices. Such a
// union is where infection activity can originate; everything in this header
// reconstructs how those seeds expand, merge, and account for the rounds of
// the process.
//
// Enumeration goes through the meta-graph whose vertices are the maximal
// cliques of g and whose edges join cliques overlapping in >= r-2 vertices.
// Both clique enumerations are exponential in the worst case, so they are
// guarded by a budget; exceeding it raises BudgetError.
std::vector<VertexSet> find_zero_sources(const Graph& g,
                                         const ProcessParams& params,
                                         std::size_t max_cliques = 200000);

struct SourceRecord {
    int id = 0;
    int birth_time = 0;           // process time at which this seed is a source
    int vertex_count = 0;         // |S| at birth
    int edge_count = 0;           // edges induced by S at birth
    // Expansion vertex set per time, from birth_time to the saturation time.
    std::map<int, VertexSet> expansion;
    std::vector<int> active_steps;
    std::vector<int> inactive_steps;
    // Maximal runs of non-active steps that end at a merger this record
    // participates in; such runs count as depleted rather than inactive.
    std::vector<std::pair<int, int>> depleted_intervals;
};

struct MergerEvent {
    int time = 0;
    int first = 0;    // record ids, first < second
    int second = 0;
    int intersection_size = 0;
};

struct MergerTree {
    std::vector<int> members;      // record ids, sorted
    std::vector<int> event_times;  // one entry per merger event, ascending
    bool comprehensive = false;    // active through the saturation time
    bool protracted = false;       // latest event times among comprehensive
                                   // trees of the same size
};

struct SourceAnalysis {
    InfectionTrace trace;
    std::vector<SourceRecord> records;
    std::vector<MergerEvent> mergers;
    std::vector<MergerTree> trees;
    // True when some source's vertex set is contained in another's; the
    // contained set is dropped, and this flag records that the run hit the
    // ambiguous case.
    bool overlapping_sources = false;
};

// Runs the process and attributes every infected edge to the sources whose
// expansions witness it, detecting later-born sources and mergers round by
// round.
SourceAnalysis track(const Graph& g, const ProcessParams& params,
                     std::size_t max_cliques = 200000);

struct BoundCheck {
    std::string name;
    bool applicable = false;
    bool holds = false;      // meaningful only when applicable
    long long lhs = 0;
    long long rhs = 0;
    std::string note;
};

struct AuditReport {
    int n = 0;
    int r = 0;
    int tau = 0;
    long long edge_total = 0;
    SourceAnalysis analysis;
    std::vector<BoundCheck> bounds;
    // Names of the strongest applicable bound of each kind, if any: the
    // smallest upper bound on tau and the largest lower bound on the edge
    // count.
    std::optional<std::string> tightest_tau_bound;
    std::optional<std::string> tightest_edge_bound;
};

// Evaluates the saturation-time and edge-count bounds against the tracked
// process. Each check records whether its preconditions are met and, when
// they are, whether the inequality holds.
AuditReport audit_bounds(const Graph& g, const ProcessParams& params,
                         std::size_t max_cliques = 200000);

std::string analysis_to_json(const SourceAnalysis& sa);
std::string audit_to_json(const AuditReport& report);

}  // namespace krboot
