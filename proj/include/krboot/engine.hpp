#pragma once

#include <string>
#include <vector>

#include "krboot/graph.hpp"

namespace krboot {

// Parameters of the K_r-bootstrap process.
struct ProcessParams {
  int r;
};

// Validates r >= 3, throws InputError otherwise.
void check_params(const ProcessParams& params);

// One infection: edge (u,v) activated at round t >= 1.
struct InfectionEvent {
  int u;
  int v;
  int t;

  friend bool operator==(const InfectionEvent&, const InfectionEvent&) = default;
};

// Full history of one run: initial graph, every infection with its round,
// the closure reached, and the saturation time.
struct InfectionTrace {
  int n = 0;
  int r = 0;
  Graph initial{0};
  Graph closure{0};
  std::vector<InfectionEvent> events;  // sorted by (t, u, v)
  int tau = 0;
  bool percolates = false;

  // Activation time of an edge: 0 if initially present, t >= 1 if infected
  // at round t, -1 if never activated.
  int time_of(int u, int v) const;
};

// Non-edges uv whose common neighborhood currently holds a K_{r-2}, i.e.
// exactly the edges the next round would add. Sorted lexicographically.
std::vector<Edge> completable_edges(const Graph& g, const ProcessParams& params);

// One synchronous round: g plus all completable edges at once.
Graph step(const Graph& g, const ProcessParams& params);

// Runs the process to its fixed point, recording every activation round.
// Re-tests only the pairs whose common neighborhood could have changed
// since the previous round.
InfectionTrace close(const Graph& g, const ProcessParams& params);

// Reference implementation: rescans every absent pair each round through
// the public graph_core primitives. Slow but independent of the frontier
// bookkeeping; used to anchor `close`.
InfectionTrace close_naive(const Graph& g, const ProcessParams& params);

// Number of rounds until the fixed point.
int saturation_time(const Graph& g, const ProcessParams& params);

// True iff the closure is complete.
bool percolates(const Graph& g, const ProcessParams& params);

// JSON form of a trace: {"events":[{"t","u","v"},...], "initial":[[u,v],...],
// "n", "percolates", "r", "tau"}; events sorted by (t,u,v), keys sorted.
std::string trace_to_json(const InfectionTrace& trace);

}  // namespace krboot
