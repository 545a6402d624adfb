#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krboot/graph.hpp"

namespace krboot {

// Vertex roles of one H_t member: a body clique on r-1 vertices and a chain
// v_1..v_t where each v_s attaches to exactly r-2 earlier vertices.
struct HtLayout {
  int r = 0;
  int t = 0;
  VertexSet body{0};
  int v0 = -1;              // body vertex anchoring the chain (plays v_0)
  std::vector<int> chain;   // v_1..v_t
};

// One structural violation found by a verifier; `where` names the condition
// ("body-clique", "condition-ii", "intersection", ...), `detail` the witness.
struct Violation {
  std::string where;
  std::string detail;
};

struct VerificationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void fail(std::string where, std::string detail);
};

// K_r minus one edge; the missing edge is (r-2, r-1).
Graph build_kr_minus_e(int r);

// Path 0-1-...-m on m+1 vertices.
Graph build_path(int m);

// Canonical H_t member: body {0..r-2}, chain vertex v_s = r-2+s. Chain
// attachments alternate around a designated body vertex so that no v_s
// neighborhood is swallowed by the previous one.
std::pair<Graph, HtLayout> build_ht(int r, int t);

// Checks the recursive chain conditions, the body clique, and the size
// formulas for an arbitrary claimed H_t member.
VerificationReport verify_ht(const Graph& g, const HtLayout& layout);

// One source of an L_h member: induces H_i with one body edge removed
// (S_{1,1} keeps its full body and has no missing edge).
struct LhSource {
  int i = 0;  // layer, 1-based
  int j = 0;  // position in layer, 1-based
  VertexSet vertices{0};
  HtLayout ht;  // chain holds v_1..v_i; v_2..v_i live in higher layers
  std::optional<Edge> missing_body_edge;
};

// One bridge: K_r minus two vertex-disjoint edges; each missing edge is the
// absent pair it shares with a neighboring source (the dummy bridge's second
// missing edge lies between two of its fresh vertices).
struct LhBridge {
  int i = 0;
  int j = 0;
  VertexSet vertices{0};
  std::array<Edge, 2> missing_edges{Edge{0, 0}, Edge{0, 0}};
};

struct LhLayout {
  int r = 0;
  int h = 0;
  std::vector<LhSource> sources;  // row-major: (i-1)*h + (j-1)
  std::vector<LhBridge> bridges;  // same indexing
  // perms[i-1][l-1], for 1 <= l <= i <= h, maps a 0-based source position j
  // in layer i to the 0-based position of the layer-l source that holds the
  // v_{i-l+1} vertex of S_{i,j+1}; perms[i-1][i-1] is the identity.
  std::vector<std::vector<std::vector<int>>> perms;

  int perm(int i, int l, int j) const { return perms[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)][static_cast<size_t>(j)]; }
  const LhSource& source(int i, int j) const { return sources[static_cast<size_t>(i - 1) * h + (j - 1)]; }
  const LhBridge& bridge(int i, int j) const { return bridges[static_cast<size_t>(i - 1) * h + (j - 1)]; }
};

// Canonical L_h member for prime h with 2 <= h <= r-2 and r >= 5. Layer
// after layer, sources alternate with bridges; each source borrows one
// vertex per higher layer for its chain tail.
std::pair<Graph, LhLayout> build_lh(int r, int h);

// Checks per-source and per-bridge induced structure, every pairwise
// intersection size, stability of 2-vertex intersections, and the
// permutation compatibility condition.
VerificationReport verify_lh(const Graph& g, const LhLayout& layout);

// Graph on the h^2 sources, (i,j) -> vertex (i-1)h + (j-1); edge iff the two
// source vertex sets intersect.
Graph reduced_graph(const LhLayout& layout);

// Layout sidecars as JSON, and parsers for the verify round-trip.
std::string ht_layout_to_json(const HtLayout& layout);
HtLayout ht_layout_from_json(const std::string& text);
std::string lh_layout_to_json(const LhLayout& layout);
LhLayout lh_layout_from_json(const std::string& text);

}  // namespace krboot
