#include "krboot/graph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "krboot/errors.hpp"

namespace krboot {

namespace {

int words_for(int universe) { return universe == 0 ? 0 : (universe + 63) / 64; }

// Clears bits at positions >= universe in the top word.
void mask_tail(std::vector<uint64_t>& w, int universe) {
  if (universe % 64 != 0 && !w.empty()) {
    w.back() &= (uint64_t{1} << (universe % 64)) - 1;
  }
}

}  // namespace

VertexSet::VertexSet(int universe)
    : universe_(universe), w_(static_cast<size_t>(words_for(universe)), 0) {
  if (universe < 0) throw InputError("vertex set universe must be nonnegative");
}

VertexSet VertexSet::of(int universe, std::initializer_list<int> members) {
  VertexSet s(universe);
  for (int v : members) s.add(v);
  return s;
}

VertexSet VertexSet::from_vertices(int universe, const std::vector<int>& members) {
  VertexSet s(universe);
  for (int v : members) s.add(v);
  return s;
}

int VertexSet::size() const {
  int c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool VertexSet::contains(int v) const {
  if (v < 0 || v >= universe_) return false;
  return (w_[static_cast<size_t>(v) / 64] >> (v % 64)) & 1;
}

void VertexSet::add(int v) {
  if (v < 0 || v >= universe_) throw InputError("vertex " + std::to_string(v) + " outside universe");
  w_[static_cast<size_t>(v) / 64] |= uint64_t{1} << (v % 64);
}

void VertexSet::remove(int v) {
  if (v < 0 || v >= universe_) return;
  w_[static_cast<size_t>(v) / 64] &= ~(uint64_t{1} << (v % 64));
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (size_t i = 0; i < w_.size(); ++i) {
    uint64_t o = i < other.w_.size() ? other.w_[i] : 0;
    if (w_[i] & ~o) return false;
  }
  return true;
}

int VertexSet::intersection_size(const VertexSet& other) const {
  int c = 0;
  size_t k = std::min(w_.size(), other.w_.size());
  for (size_t i = 0; i < k; ++i) c += std::popcount(w_[i] & other.w_[i]);
  return c;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (size_t i = 0; i < w_.size(); ++i) {
    uint64_t w = w_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<int>(i) * 64 + b);
      w &= w - 1;
    }
  }
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out(std::max(a.universe(), b.universe()));
  int k = std::min(a.words(), b.words());
  for (int i = 0; i < k; ++i) out.data()[i] = a.word(i) & b.word(i);
  return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out(std::max(a.universe(), b.universe()));
  for (int i = 0; i < out.words(); ++i) {
    uint64_t w = 0;
    if (i < a.words()) w |= a.word(i);
    if (i < b.words()) w |= b.word(i);
    out.data()[i] = w;
  }
  return out;
}

bool lex_less(const VertexSet& a, const VertexSet& b) {
  std::vector<int> ma = a.members(), mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

Graph::Graph(int n) : n_(n), words_(words_for(n)), rows_(static_cast<size_t>(n) * words_for(n), 0) {
  if (n < 0) throw InputError("graph order must be nonnegative");
}

Graph Graph::from_rows(int n, std::vector<uint64_t> rows) {
  Graph g(n);
  if (rows.size() != g.rows_.size()) throw InputError("adjacency rows have wrong shape");
  g.rows_ = std::move(rows);
  int deg_sum = 0;
  for (int v = 0; v < n; ++v) {
    const uint64_t* r = g.row(v);
    for (int i = 0; i < g.words_; ++i) deg_sum += std::popcount(r[i]);
  }
  g.m_ = deg_sum / 2;
  return g;
}

bool Graph::has_edge(int u, int v) const {
  return (row(u)[v / 64] >> (v % 64)) & 1;
}

int Graph::degree(int v) const {
  const uint64_t* r = row(v);
  int c = 0;
  for (int i = 0; i < words_; ++i) c += std::popcount(r[i]);
  return c;
}

VertexSet Graph::neighbors(int v) const {
  VertexSet s(n_);
  const uint64_t* r = row(v);
  for (int i = 0; i < words_; ++i) s.data()[i] = r[i];
  return s;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<size_t>(m_));
  for (int u = 0; u < n_; ++u) {
    const uint64_t* r = row(u);
    for (int i = u / 64; i < words_; ++i) {
      uint64_t w = r[i];
      if (i == u / 64) w &= ~((uint64_t{2} << (u % 64)) - 1);  // keep v > u only
      while (w) {
        int v = i * 64 + std::countr_zero(w);
        out.emplace_back(u, v);
        w &= w - 1;
      }
    }
  }
  return out;
}

void Graph::add_edge_unchecked(int u, int v) {
  if (has_edge(u, v)) return;
  rows_[static_cast<size_t>(u) * words_ + v / 64] |= uint64_t{1} << (v % 64);
  rows_[static_cast<size_t>(v) * words_ + u / 64] |= uint64_t{1} << (u % 64);
  ++m_;
}

Graph build_graph(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("edge endpoint outside [0," + std::to_string(n) + ")");
    if (u == v) throw InputError("loop at vertex " + std::to_string(u));
    g.add_edge_unchecked(std::min(u, v), std::max(u, v));
  }
  return g;
}

Graph complement(const Graph& g) {
  int n = g.n();
  Graph out(n);
  std::vector<uint64_t> rows(g.rows().size(), 0);
  for (int v = 0; v < n; ++v) {
    uint64_t* r = rows.data() + static_cast<size_t>(v) * g.words();
    const uint64_t* src = g.row(v);
    for (int i = 0; i < g.words(); ++i) r[i] = ~src[i];
    r[v / 64] &= ~(uint64_t{1} << (v % 64));  // no loops
    if (n % 64 != 0) r[g.words() - 1] &= (uint64_t{1} << (n % 64)) - 1;
  }
  return Graph::from_rows(n, std::move(rows));
}

VertexSet common_neighbors(const Graph& g, int u, int v) {
  VertexSet s(g.n());
  const uint64_t* ru = g.row(u);
  const uint64_t* rv = g.row(v);
  for (int i = 0; i < g.words(); ++i) s.data()[i] = ru[i] & rv[i];
  return s;
}

namespace {

// Looks for a k-clique inside `mask`, visiting vertices in increasing order.
// `mask` has `words` words; scratch avoids allocation in the recursion.
bool clique_in_mask(const Graph& g, const uint64_t* mask, int words, int k,
                    std::vector<uint64_t>& scratch, int depth) {
  if (k <= 0) return true;
  int cnt = 0;
  for (int i = 0; i < words; ++i) cnt += std::popcount(mask[i]);
  if (cnt < k) return false;
  uint64_t* next = scratch.data() + static_cast<size_t>(depth) * words;
  for (int i = 0; i < words; ++i) {
    uint64_t w = mask[i];
    while (w) {
      int b = std::countr_zero(w);
      w &= w - 1;
      int v = i * 64 + b;
      const uint64_t* rv = g.row(v);
      // Candidates after v: neighbors of v inside mask, above v.
      for (int j = 0; j < words; ++j) next[j] = mask[j] & rv[j];
      next[i] &= ~((uint64_t{2} << b) - 1);
      for (int j = 0; j < i; ++j) next[j] = 0;
      if (clique_in_mask(g, next, words, k - 1, scratch, depth + 1)) return true;
    }
  }
  return false;
}

}  // namespace

bool contains_clique(const Graph& g, const VertexSet& candidates, int k) {
  if (k <= 0) return true;
  if (g.n() == 0) return false;
  std::vector<uint64_t> mask(static_cast<size_t>(g.words()), 0);
  for (int i = 0; i < std::min(g.words(), candidates.words()); ++i) mask[i] = candidates.word(i);
  std::vector<uint64_t> scratch(static_cast<size_t>(k + 1) * g.words(), 0);
  return clique_in_mask(g, mask.data(), g.words(), k, scratch, 0);
}

namespace {

void bron_kerbosch(const Graph& g, std::vector<uint64_t>& R, std::vector<uint64_t> P,
                   std::vector<uint64_t> X, std::vector<VertexSet>& out) {
  int words = g.words();
  bool p_empty = true, x_empty = true;
  for (int i = 0; i < words; ++i) {
    if (P[i]) p_empty = false;
    if (X[i]) x_empty = false;
  }
  if (p_empty && x_empty) {
    VertexSet s(g.n());
    for (int i = 0; i < words; ++i) s.data()[i] = R[i];
    out.push_back(std::move(s));
    return;
  }
  // Pivot: vertex of P|X with the most neighbors in P.
  int pivot = -1, best = -1;
  for (int i = 0; i < words; ++i) {
    uint64_t w = P[i] | X[i];
    while (w) {
      int v = i * 64 + std::countr_zero(w);
      w &= w - 1;
      const uint64_t* rv = g.row(v);
      int c = 0;
      for (int j = 0; j < words; ++j) c += std::popcount(rv[j] & P[j]);
      if (c > best) {
        best = c;
        pivot = v;
      }
    }
  }
  const uint64_t* rp = g.row(pivot);
  std::vector<uint64_t> ext(static_cast<size_t>(words));
  for (int i = 0; i < words; ++i) ext[i] = P[i] & ~rp[i];
  for (int i = 0; i < words; ++i) {
    uint64_t w = ext[i];
    while (w) {
      int b = std::countr_zero(w);
      w &= w - 1;
      int v = i * 64 + b;
      const uint64_t* rv = g.row(v);
      std::vector<uint64_t> P2(static_cast<size_t>(words)), X2(static_cast<size_t>(words));
      for (int j = 0; j < words; ++j) {
        P2[j] = P[j] & rv[j];
        X2[j] = X[j] & rv[j];
      }
      R[static_cast<size_t>(v) / 64] |= uint64_t{1} << (v % 64);
      bron_kerbosch(g, R, std::move(P2), std::move(X2), out);
      R[static_cast<size_t>(v) / 64] &= ~(uint64_t{1} << (v % 64));
      P[static_cast<size_t>(v) / 64] &= ~(uint64_t{1} << (v % 64));
      X[static_cast<size_t>(v) / 64] |= uint64_t{1} << (v % 64);
    }
  }
}

}  // namespace

std::vector<VertexSet> maximal_cliques(const Graph& g) {
  std::vector<VertexSet> out;
  if (g.n() == 0) return out;
  std::vector<uint64_t> R(static_cast<size_t>(g.words()), 0);
  std::vector<uint64_t> P(static_cast<size_t>(g.words()), ~uint64_t{0});
  if (g.n() % 64 != 0) P.back() = (uint64_t{1} << (g.n() % 64)) - 1;
  std::vector<uint64_t> X(static_cast<size_t>(g.words()), 0);
  bron_kerbosch(g, R, std::move(P), std::move(X), out);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

namespace {

// BFS from src over the whole graph; fills dist with -1 for unreachable.
void bfs(const Graph& g, int src, std::vector<int>& dist) {
  int words = g.words();
  std::vector<uint64_t> visited(static_cast<size_t>(words), 0);
  std::vector<uint64_t> frontier(static_cast<size_t>(words), 0);
  std::fill(dist.begin(), dist.end(), -1);
  frontier[static_cast<size_t>(src) / 64] = uint64_t{1} << (src % 64);
  visited = frontier;
  dist[static_cast<size_t>(src)] = 0;
  int level = 0;
  bool any = true;
  std::vector<uint64_t> next(static_cast<size_t>(words));
  while (any) {
    ++level;
    std::fill(next.begin(), next.end(), 0);
    for (int i = 0; i < words; ++i) {
      uint64_t w = frontier[i];
      while (w) {
        int v = i * 64 + std::countr_zero(w);
        w &= w - 1;
        const uint64_t* rv = g.row(v);
        for (int j = 0; j < words; ++j) next[j] |= rv[j];
      }
    }
    any = false;
    for (int i = 0; i < words; ++i) {
      next[i] &= ~visited[i];
      visited[i] |= next[i];
      if (next[i]) any = true;
      uint64_t w = next[i];
      while (w) {
        int v = i * 64 + std::countr_zero(w);
        w &= w - 1;
        dist[static_cast<size_t>(v)] = level;
      }
    }
    frontier = next;
  }
}

}  // namespace

std::optional<int> diameter(const Graph& g) {
  if (g.n() == 0) return std::nullopt;
  if (g.n() == 1) return 0;
  std::vector<int> dist(static_cast<size_t>(g.n()));
  int diam = 0;
  for (int s = 0; s < g.n(); ++s) {
    bfs(g, s, dist);
    for (int v = 0; v < g.n(); ++v) {
      if (dist[static_cast<size_t>(v)] < 0) return std::nullopt;
      diam = std::max(diam, dist[static_cast<size_t>(v)]);
    }
  }
  return diam;
}

bool is_connected(const Graph& g) { return diameter(g).has_value(); }

namespace {

// Connectivity of the subgraph induced by `alive` (a bitmask over vertices).
bool connected_within(const Graph& g, const std::vector<uint64_t>& alive) {
  int words = g.words();
  int start = -1, total = 0;
  for (int i = 0; i < words; ++i) {
    total += std::popcount(alive[i]);
    if (start < 0 && alive[i]) start = i * 64 + std::countr_zero(alive[i]);
  }
  if (total <= 1) return true;
  std::vector<uint64_t> visited(static_cast<size_t>(words), 0);
  std::vector<uint64_t> frontier(static_cast<size_t>(words), 0);
  frontier[static_cast<size_t>(start) / 64] = uint64_t{1} << (start % 64);
  visited = frontier;
  bool any = true;
  std::vector<uint64_t> next(static_cast<size_t>(words));
  while (any) {
    std::fill(next.begin(), next.end(), 0);
    for (int i = 0; i < words; ++i) {
      uint64_t w = frontier[i];
      while (w) {
        int v = i * 64 + std::countr_zero(w);
        w &= w - 1;
        const uint64_t* rv = g.row(v);
        for (int j = 0; j < words; ++j) next[j] |= rv[j];
      }
    }
    any = false;
    for (int i = 0; i < words; ++i) {
      next[i] &= alive[i] & ~visited[i];
      visited[i] |= next[i];
      if (next[i]) any = true;
    }
    frontier = next;
  }
  int seen = 0;
  for (int i = 0; i < words; ++i) seen += std::popcount(visited[i]);
  return seen == total;
}

bool removal_keeps_connected(const Graph& g, std::vector<int>& removed, int pick_from, int left) {
  if (left == 0) {
    std::vector<uint64_t> alive(static_cast<size_t>(g.words()), ~uint64_t{0});
    if (g.n() % 64 != 0) alive.back() = (uint64_t{1} << (g.n() % 64)) - 1;
    for (int v : removed) alive[static_cast<size_t>(v) / 64] &= ~(uint64_t{1} << (v % 64));
    return connected_within(g, alive);
  }
  for (int v = pick_from; v < g.n(); ++v) {
    removed.push_back(v);
    bool ok = removal_keeps_connected(g, removed, v + 1, left - 1);
    removed.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool is_k_connected(const Graph& g, int k) {
  if (k <= 0) return g.n() >= 1;
  if (g.n() < k + 1) return false;
  std::vector<int> removed;
  return removal_keeps_connected(g, removed, 0, k - 1);
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  int n = g.n();
  if (static_cast<int>(perm.size()) != n) throw InputError("permutation has wrong length");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<size_t>(p)])
      throw InputError("relabeling map is not a bijection on the vertex range");
    seen[static_cast<size_t>(p)] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(g.edge_count()));
  for (const auto& [u, v] : g.edges())
    edges.push_back(make_edge(perm[static_cast<size_t>(u)], perm[static_cast<size_t>(v)]));
  return build_graph(n, edges);
}

}  // namespace krboot
