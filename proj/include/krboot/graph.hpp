#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

namespace krboot {

// An unordered vertex pair, canonically stored with first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Index of the pair (u,v), u < v, in the lexicographic listing of all
// pairs over [0,n): (0,1),(0,2),...,(0,n-1),(1,2),...
inline int pair_index(int n, int u, int v) {
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

// A subset of the vertex range [0, universe), stored as packed 64-bit words.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe);
  static VertexSet of(int universe, std::initializer_list<int> members);
  static VertexSet from_vertices(int universe, const std::vector<int>& members);

  int universe() const { return universe_; }
  int size() const;
  bool empty() const { return size() == 0; }
  bool contains(int v) const;
  void add(int v);
  void remove(int v);
  bool is_subset_of(const VertexSet& other) const;
  int intersection_size(const VertexSet& other) const;
  std::vector<int> members() const;

  int words() const { return static_cast<int>(w_.size()); }
  uint64_t word(int i) const { return w_[static_cast<size_t>(i)]; }
  uint64_t* data() { return w_.data(); }
  const uint64_t* data() const { return w_.data(); }

  bool operator==(const VertexSet&) const = default;

 private:
  int universe_ = 0;
  std::vector<uint64_t> w_;
};

VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_union(const VertexSet& a, const VertexSet& b);

// Orders sets by their sorted member lists, so {0,5} sorts before {1,2}.
bool lex_less(const VertexSet& a, const VertexSet& b);

// A finite simple undirected graph on vertex set [0, n).
// Values are immutable once built; every transformation returns a new graph.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Adopts prebuilt adjacency rows (n rows of `words` words each).
  // The rows must already be symmetric and loop-free.
  static Graph from_rows(int n, std::vector<uint64_t> rows);

  int n() const { return n_; }
  int edge_count() const { return m_; }
  int words() const { return words_; }
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  VertexSet neighbors(int v) const;
  const uint64_t* row(int v) const { return rows_.data() + static_cast<size_t>(v) * words_; }
  const std::vector<uint64_t>& rows() const { return rows_; }

  bool is_complete() const { return m_ == pair_count(n_); }
  std::vector<Edge> edges() const;  // sorted lexicographically

  bool operator==(const Graph&) const = default;

 private:
  friend Graph build_graph(int n, const std::vector<Edge>& edges);
  void add_edge_unchecked(int u, int v);

  int n_ = 0;
  int words_ = 0;
  int m_ = 0;
  std::vector<uint64_t> rows_;
};

// Validates 0 <= u,v < n and u != v; duplicate edges collapse.
Graph build_graph(int n, const std::vector<Edge>& edges);

Graph complement(const Graph& g);
VertexSet common_neighbors(const Graph& g, int u, int v);

// True when `candidates` spans a clique of size k in g. k <= 0 is trivially true.
bool contains_clique(const Graph& g, const VertexSet& candidates, int k);

// All inclusion-maximal cliques, each exactly once, sorted lexicographically
// by member list. Isolated vertices appear as singleton cliques.
std::vector<VertexSet> maximal_cliques(const Graph& g);

// Largest pairwise distance; nullopt when g is disconnected. n=1 gives 0.
std::optional<int> diameter(const Graph& g);

bool is_connected(const Graph& g);

// Vertex connectivity test: n >= k+1 and no cutset of fewer than k vertices.
// Every graph is 0-connected.
bool is_k_connected(const Graph& g, int k);

// perm must be a bijection on [0,n); vertex v maps to perm[v].
Graph relabel(const Graph& g, const std::vector<int>& perm);

}  // namespace krboot
