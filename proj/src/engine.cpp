#include "krboot/engine.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>

#include "krboot/errors.hpp"

namespace krboot {

void check_params(const ProcessParams& params) {
  if (params.r < 3) throw InputError("clique size r must be at least 3");
}

int InfectionTrace::time_of(int u, int v) const {
  auto [a, b] = make_edge(u, v);
  if (initial.has_edge(a, b)) return 0;
  for (const auto& e : events) {
    if (e.u == a && e.v == b) return e.t;
  }
  return -1;
}

namespace {

// Witness test: does the common neighborhood of (u,v) in g contain a
// K_{r-2}? The small cases the process actually uses are unrolled; the
// general case recurses over candidate words in ascending vertex order.
class WitnessTester {
 public:
  WitnessTester(const Graph& g, int r)
      : g_(g), r_(r), words_(g.words()), common_(g.words()), scratch_() {
    if (r_ > 5) scratch_.assign(static_cast<size_t>(r_ - 1) * words_, 0);
  }

  bool has_witness(int u, int v) {
    const uint64_t* ru = g_.row(u);
    const uint64_t* rv = g_.row(v);
    for (int i = 0; i < words_; ++i) common_[i] = ru[i] & rv[i];
    switch (r_) {
      case 3:
        return any(common_.data());
      case 4:
        return has_edge_inside(common_.data());
      case 5:
        return has_triangle_inside(common_.data());
      default:
        return has_clique_inside(common_.data(), r_ - 2, 0);
    }
  }

 private:
  bool any(const uint64_t* mask) const {
    for (int i = 0; i < words_; ++i)
      if (mask[i]) return true;
    return false;
  }

  bool has_edge_inside(const uint64_t* mask) const {
    for (int i = 0; i < words_; ++i) {
      uint64_t w = mask[i];
      while (w) {
        int x = i * 64 + std::countr_zero(w);
        w &= w - 1;
        const uint64_t* rx = g_.row(x);
        for (int j = 0; j < words_; ++j)
          if (rx[j] & mask[j]) return true;
      }
    }
    return false;
  }

  bool has_triangle_inside(const uint64_t* mask) const {
    for (int i = 0; i < words_; ++i) {
      uint64_t w = mask[i];
      while (w) {
        int b = std::countr_zero(w);
        w &= w - 1;
        int x = i * 64 + b;
        const uint64_t* rx = g_.row(x);
        // y > x inside mask & N(x); then need N(x) & N(y) & mask nonempty.
        for (int j = i; j < words_; ++j) {
          uint64_t wy = rx[j] & mask[j];
          if (j == i) wy &= ~((uint64_t{2} << b) - 1);
          while (wy) {
            int y = j * 64 + std::countr_zero(wy);
            wy &= wy - 1;
            const uint64_t* ry = g_.row(y);
            for (int k = 0; k < words_; ++k)
              if (rx[k] & ry[k] & mask[k]) return true;
          }
        }
      }
    }
    return false;
  }

  bool has_clique_inside(const uint64_t* mask, int k, int depth) {
    if (k == 0) return true;
    int cnt = 0;
    for (int i = 0; i < words_; ++i) cnt += std::popcount(mask[i]);
    if (cnt < k) return false;
    uint64_t* next = scratch_.data() + static_cast<size_t>(depth) * words_;
    for (int i = 0; i < words_; ++i) {
      uint64_t w = mask[i];
      while (w) {
        int b = std::countr_zero(w);
        w &= w - 1;
        int x = i * 64 + b;
        const uint64_t* rx = g_.row(x);
        for (int j = 0; j < i; ++j) next[j] = 0;
        for (int j = i; j < words_; ++j) next[j] = mask[j] & rx[j];
        next[i] &= ~((uint64_t{2} << b) - 1);
        if (has_clique_inside(next, k - 1, depth + 1)) return true;
        // `next` slot is reused by the following candidate at this depth.
      }
    }
    return false;
  }

  const Graph& g_;
  int r_;
  int words_;
  std::vector<uint64_t> common_;
  std::vector<uint64_t> scratch_;
};

InfectionTrace finish_trace(const Graph& initial, int r, Graph closure,
                            std::vector<InfectionEvent> events) {
  InfectionTrace tr;
  tr.n = initial.n();
  tr.r = r;
  tr.initial = initial;
  tr.closure = std::move(closure);
  std::sort(events.begin(), events.end(), [](const InfectionEvent& a, const InfectionEvent& b) {
    return std::tie(a.t, a.u, a.v) < std::tie(b.t, b.u, b.v);
  });
  tr.events = std::move(events);
  tr.tau = tr.events.empty() ? 0 : tr.events.back().t;
  tr.percolates = tr.closure.is_complete();
  return tr;
}

}  // namespace

std::vector<Edge> completable_edges(const Graph& g, const ProcessParams& params) {
  check_params(params);
  WitnessTester tester(g, params.r);
  std::vector<Edge> out;
  for (int u = 0; u < g.n(); ++u) {
    for (int v = u + 1; v < g.n(); ++v) {
      if (!g.has_edge(u, v) && tester.has_witness(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph step(const Graph& g, const ProcessParams& params) {
  auto adds = completable_edges(g, params);
  auto edges = g.edges();
  edges.insert(edges.end(), adds.begin(), adds.end());
  return build_graph(g.n(), edges);
}

InfectionTrace close(const Graph& g, const ProcessParams& params) {
  check_params(params);
  const int n = g.n();
  Graph cur = g;
  std::vector<InfectionEvent> events;

  // Pairs to re-test this round, deduplicated through a bitmask over the
  // lexicographic pair index.
  std::vector<Edge> candidates;
  std::vector<uint64_t> queued((pair_count(n) + 63) / 64, 0);
  auto enqueue = [&](int u, int v) {
    if (u == v || cur.has_edge(u, v)) return;
    auto [a, b] = make_edge(u, v);
    int64_t idx = pair_index(n, a, b);
    uint64_t& word = queued[static_cast<size_t>(idx) / 64];
    uint64_t bit = uint64_t{1} << (idx % 64);
    if (word & bit) return;
    word |= bit;
    candidates.emplace_back(a, b);
  };

  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!cur.has_edge(u, v)) enqueue(u, v);

  int t = 0;
  while (!candidates.empty()) {
    ++t;
    WitnessTester tester(cur, params.r);
    std::vector<Edge> adds;
    for (const auto& [u, v] : candidates) {
      if (tester.has_witness(u, v)) adds.emplace_back(u, v);
    }
    if (adds.empty()) break;

    auto edges = cur.edges();
    edges.insert(edges.end(), adds.begin(), adds.end());
    cur = build_graph(n, edges);
    for (const auto& [u, v] : adds) events.push_back({u, v, t});

    // Next round, a pair can newly complete only if its common neighborhood
    // changed: either an endpoint gained an incident edge, or an edge
    // appeared inside the neighborhood intersection of both endpoints.
    candidates.clear();
    std::fill(queued.begin(), queued.end(), 0);
    for (const auto& [x, y] : adds) {
      for (int w = 0; w < n; ++w) {
        enqueue(x, w);
        enqueue(y, w);
      }
      auto both = common_neighbors(cur, x, y).members();
      for (size_t a = 0; a < both.size(); ++a)
        for (size_t b = a + 1; b < both.size(); ++b) enqueue(both[a], both[b]);
    }
  }

  return finish_trace(g, params.r, std::move(cur), std::move(events));
}

InfectionTrace close_naive(const Graph& g, const ProcessParams& params) {
  check_params(params);
  const int n = g.n();
  Graph cur = g;
  std::vector<InfectionEvent> events;
  int t = 0;
  while (true) {
    ++t;
    std::vector<Edge> adds;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (cur.has_edge(u, v)) continue;
        VertexSet common = common_neighbors(cur, u, v);
        if (contains_clique(cur, common, params.r - 2)) adds.emplace_back(u, v);
      }
    }
    if (adds.empty()) break;
    auto edges = cur.edges();
    edges.insert(edges.end(), adds.begin(), adds.end());
    cur = build_graph(n, edges);
    for (const auto& [u, v] : adds) events.push_back({u, v, t});
  }
  return finish_trace(g, params.r, std::move(cur), std::move(events));
}

int saturation_time(const Graph& g, const ProcessParams& params) {
  return close(g, params).tau;
}

bool percolates(const Graph& g, const ProcessParams& params) {
  return close(g, params).percolates;
}

std::string trace_to_json(const InfectionTrace& trace) {
  std::ostringstream os;
  os << "{\"events\":[";
  for (size_t i = 0; i < trace.events.size(); ++i) {
    const auto& e = trace.events[i];
    if (i) os << ",";
    os << "{\"t\":" << e.t << ",\"u\":" << e.u << ",\"v\":" << e.v << "}";
  }
  os << "],\"initial\":[";
  auto edges = trace.initial.edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    if (i) os << ",";
    os << "[" << edges[i].first << "," << edges[i].second << "]";
  }
  os << "],\"n\":" << trace.n << ",\"percolates\":" << (trace.percolates ? "true" : "false")
     << ",\"r\":" << trace.r << ",\"tau\":" << trace.tau << "}";
  return os.str();
}

}  // namespace krboot
