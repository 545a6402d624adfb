#include "krboot/families.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "krboot/errors.hpp"

namespace krboot {

void VerificationReport::fail(std::string where, std::string detail) {
  ok = false;
  violations.push_back({std::move(where), std::move(detail)});
}

Graph build_kr_minus_e(int r) {
  if (r < 3) throw InputError("K_r minus an edge needs r >= 3");
  std::vector<Edge> edges;
  for (int u = 0; u < r; ++u)
    for (int v = u + 1; v < r; ++v)
      if (!(u == r - 2 && v == r - 1)) edges.emplace_back(u, v);
  return build_graph(r, edges);
}

Graph build_path(int m) {
  if (m < 0) throw InputError("path edge count must be nonnegative");
  std::vector<Edge> edges;
  for (int i = 0; i < m; ++i) edges.emplace_back(i, i + 1);
  return build_graph(m + 1, edges);
}

namespace {

// Body vertices (relative ids within {0..r-2}) that chain vertex v_s is NOT
// joined to. v_1 misses only the designated vertex r-2; later vertices miss
// two, alternating so that N(v_s)\{v_{s-1}} never fits inside N(v_{s-1}).
std::vector<int> skipped_body(int r, int s) {
  if (s == 1) return {r - 2};
  if (s % 2 == 0) return {0, r - 3};
  return {0, r - 2};
}

}  // namespace

std::pair<Graph, HtLayout> build_ht(int r, int t) {
  if (r < 4) throw InputError("H_t needs r >= 4");
  if (t < 1) throw InputError("H_t needs t >= 1");
  const int n = r - 1 + t;
  std::vector<Edge> edges;
  for (int u = 0; u < r - 1; ++u)
    for (int v = u + 1; v < r - 1; ++v) edges.emplace_back(u, v);

  HtLayout layout;
  layout.r = r;
  layout.t = t;
  layout.body = VertexSet(n);
  for (int b = 0; b < r - 1; ++b) layout.body.add(b);
  layout.v0 = 0;
  for (int s = 1; s <= t; ++s) {
    int vs = r - 2 + s;
    layout.chain.push_back(vs);
    if (s >= 2) edges.emplace_back(r - 2 + s - 1, vs);
    auto skipped = skipped_body(r, s);
    for (int b = 0; b < r - 1; ++b) {
      if (std::find(skipped.begin(), skipped.end(), b) == skipped.end())
        edges.emplace_back(b, vs);
    }
  }
  return {build_graph(n, edges), layout};
}

namespace {

std::string edge_str(int u, int v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

VerificationReport verify_ht(const Graph& g, const HtLayout& layout) {
  VerificationReport rep;
  const int r = layout.r;
  const int t = layout.t;
  if (r < 4 || t < 1) {
    rep.fail("params", "need r >= 4 and t >= 1");
    return rep;
  }
  std::vector<int> body = layout.body.members();
  if (static_cast<int>(body.size()) != r - 1)
    rep.fail("layout", "body has " + std::to_string(body.size()) + " vertices, expected " +
                           std::to_string(r - 1));
  if (!layout.body.contains(layout.v0)) rep.fail("layout", "v0 is not a body vertex");
  if (static_cast<int>(layout.chain.size()) != t)
    rep.fail("layout", "chain has " + std::to_string(layout.chain.size()) +
                           " vertices, expected " + std::to_string(t));
  std::set<int> all(body.begin(), body.end());
  for (int v : layout.chain) all.insert(v);
  for (int v : all) {
    if (v < 0 || v >= g.n()) {
      rep.fail("layout", "vertex " + std::to_string(v) + " outside the graph");
      return rep;
    }
  }
  if (static_cast<int>(all.size()) != r - 1 + static_cast<int>(layout.chain.size())) {
    rep.fail("layout", "body and chain vertices are not pairwise distinct");
    return rep;
  }
  if (g.n() != r - 1 + t)
    rep.fail("size-v", "v = " + std::to_string(g.n()) + ", expected " + std::to_string(r - 1 + t));

  for (size_t a = 0; a < body.size(); ++a) {
    for (size_t b = a + 1; b < body.size(); ++b) {
      if (!g.has_edge(body[a], body[b]))
        rep.fail("condition-i", "body pair " + edge_str(body[a], body[b]) + " is not an edge");
    }
  }

  VertexSet prefix(g.n());  // V_{s-1}
  for (int b : body) prefix.add(b);
  for (int s = 1; s <= t && s <= static_cast<int>(layout.chain.size()); ++s) {
    int vs = layout.chain[static_cast<size_t>(s - 1)];
    int prev = s == 1 ? layout.v0 : layout.chain[static_cast<size_t>(s - 2)];
    VertexSet ns = set_intersection(g.neighbors(vs), prefix);
    if (ns.size() != r - 2)
      rep.fail("condition-iii", "s=" + std::to_string(s) + ": v_s has " +
                                    std::to_string(ns.size()) + " neighbors in V_" +
                                    std::to_string(s - 1) + ", expected " + std::to_string(r - 2));
    if (!ns.contains(prev))
      rep.fail("condition-ii",
               "s=" + std::to_string(s) + ": v_" + std::to_string(s - 1) + " is not a neighbor");
    if (s >= 2) {
      // At s=1 the condition cannot hold: N(v_1)\{v_0} lies in the body
      // clique, hence inside N(v_0). It binds only from the second vertex on.
      VertexSet lhs = ns;
      lhs.remove(prev);
      if (lhs.is_subset_of(g.neighbors(prev)))
        rep.fail("condition-iv", "s=" + std::to_string(s) +
                                     ": N(v_s) minus v_{s-1} lies inside N(v_{s-1})");
    }
    prefix.add(vs);
  }

  const int expected_e = (r - 1) * (r - 2) / 2 + t * (r - 2);
  if (g.edge_count() != expected_e)
    rep.fail("size-e",
             "e = " + std::to_string(g.edge_count()) + ", expected " + std::to_string(expected_e));
  return rep;
}

namespace {

// Relative body id of the vertex u inside source S_{i,j} such that the edge
// {v_i, u} is absent until the source's last internal step.
int bridge_exit_rel(int r, int i) { return (i >= 2 && i % 2 == 0) ? r - 3 : r - 2; }

bool is_prime(int h) {
  if (h < 2) return false;
  for (int d = 2; d * d <= h; ++d)
    if (h % d == 0) return false;
  return true;
}

}  // namespace

std::pair<Graph, LhLayout> build_lh(int r, int h) {
  if (r < 5) throw InputError("L_h needs r >= 5");
  if (h < 2) throw InputError("L_h needs h >= 2");
  if (!is_prime(h)) throw InputError("default permutation scheme needs a prime layer count h");
  if (h > r - 2)
    throw InputError("layer count h must be at most r-2 so borrowed chain vertices stay clear of "
                     "the reserved body roles");

  const int layer_span = h * r + h * (r - 4);
  const int n = h * h * (2 * r - 4) + 2;
  auto source_base = [&](int i, int j) { return (i - 1) * layer_span + (j - 1) * r; };
  auto bridge_base = [&](int i, int j) { return (i - 1) * layer_span + h * r + (j - 1) * (r - 4); };

  LhLayout layout;
  layout.r = r;
  layout.h = h;
  layout.perms.resize(static_cast<size_t>(h));
  for (int i = 1; i <= h; ++i) {
    layout.perms[static_cast<size_t>(i - 1)].resize(static_cast<size_t>(i));
    for (int l = 1; l <= i; ++l) {
      std::vector<int> p(static_cast<size_t>(h));
      for (int j = 0; j < h; ++j) p[static_cast<size_t>(j)] = (j + (i - l) * i) % h;
      layout.perms[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)] = std::move(p);
    }
  }

  // Chain tails: source S_{i,j} takes one own vertex of one source per
  // higher layer; within a target, slots are handed out smallest-id first,
  // in borrower order, so no vertex serves two chains.
  std::map<std::pair<int, int>, int> taken;  // (layer, 0-based pos) -> used slots
  std::vector<std::vector<int>> chains(static_cast<size_t>(h) * h);
  for (int i = 1; i <= h; ++i) {
    for (int j = 1; j <= h; ++j) {
      auto& chain = chains[static_cast<size_t>(i - 1) * h + (j - 1)];
      chain.push_back(source_base(i, j) + r - 1);  // v_1
      for (int s = 2; s <= i; ++s) {
        int l = i - s + 1;
        int x = layout.perm(i, l, j - 1);
        int rel = taken[{l, x}]++;
        chain.push_back(source_base(l, x + 1) + rel);
      }
    }
  }

  std::vector<Edge> edges;
  layout.sources.reserve(static_cast<size_t>(h) * h);
  for (int i = 1; i <= h; ++i) {
    for (int j = 1; j <= h; ++j) {
      const int base = source_base(i, j);
      const bool full_body = (i == 1 && j == 1);
      LhSource src;
      src.i = i;
      src.j = j;
      src.vertices = VertexSet(n);
      src.ht.r = r;
      src.ht.t = i;
      src.ht.body = VertexSet(n);
      src.ht.v0 = base;
      for (int b = 0; b < r - 1; ++b) {
        src.ht.body.add(base + b);
        src.vertices.add(base + b);
      }
      src.ht.chain = chains[static_cast<size_t>(i - 1) * h + (j - 1)];
      for (int v : src.ht.chain) src.vertices.add(v);
      if (!full_body) src.missing_body_edge = Edge{base, base + 1};

      for (int a = 0; a < r - 1; ++a) {
        for (int b = a + 1; b < r - 1; ++b) {
          if (!full_body && a == 0 && b == 1) continue;
          edges.emplace_back(base + a, base + b);
        }
      }
      for (int s = 1; s <= i; ++s) {
        int vs = src.ht.chain[static_cast<size_t>(s - 1)];
        if (s >= 2) edges.push_back(make_edge(src.ht.chain[static_cast<size_t>(s - 2)], vs));
        auto skipped = skipped_body(r, s);
        for (int b = 0; b < r - 1; ++b) {
          if (std::find(skipped.begin(), skipped.end(), b) == skipped.end())
            edges.push_back(make_edge(base + b, vs));
        }
      }
      layout.sources.push_back(std::move(src));
    }
  }

  layout.bridges.reserve(static_cast<size_t>(h) * h);
  for (int i = 1; i <= h; ++i) {
    for (int j = 1; j <= h; ++j) {
      const LhSource& src = layout.source(i, j);
      const bool dummy = (i == h && j == h);
      LhBridge br;
      br.i = i;
      br.j = j;
      br.vertices = VertexSet(n);
      int p1 = src.ht.chain.back();  // v_i, carrier of the incoming activation
      int p2 = source_base(i, j) + bridge_exit_rel(r, i);
      br.vertices.add(p1);
      br.vertices.add(p2);
      br.missing_edges[0] = make_edge(p1, p2);
      std::vector<int> members = {p1, p2};
      if (!dummy) {
        int ni = j < h ? i : i + 1;
        int nj = j < h ? j + 1 : 1;
        int q1 = source_base(ni, nj);
        int q2 = q1 + 1;
        br.vertices.add(q1);
        br.vertices.add(q2);
        br.missing_edges[1] = Edge{q1, q2};
        members.push_back(q1);
        members.push_back(q2);
        for (int f = 0; f < r - 4; ++f) {
          int fv = bridge_base(i, j) + f;
          br.vertices.add(fv);
          members.push_back(fv);
        }
      } else {
        for (int f = 0; f < r - 2; ++f) {
          int fv = bridge_base(i, j) + f;
          br.vertices.add(fv);
          members.push_back(fv);
        }
        br.missing_edges[1] = Edge{bridge_base(i, j), bridge_base(i, j) + 1};
      }
      for (size_t a = 0; a < members.size(); ++a) {
        for (size_t b = a + 1; b < members.size(); ++b) {
          Edge e = make_edge(members[a], members[b]);
          if (e == br.missing_edges[0] || e == br.missing_edges[1]) continue;
          edges.push_back(e);
        }
      }
      layout.bridges.push_back(std::move(br));
    }
  }

  return {build_graph(n, edges), layout};
}

namespace {

std::string piece_name(const char* kind, int i, int j) {
  std::ostringstream os;
  os << kind << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

VerificationReport verify_lh(const Graph& g, const LhLayout& layout) {
  VerificationReport rep;
  const int r = layout.r;
  const int h = layout.h;
  if (r < 5 || h < 2) {
    rep.fail("params", "need r >= 5 and h >= 2");
    return rep;
  }
  if (static_cast<int>(layout.sources.size()) != h * h ||
      static_cast<int>(layout.bridges.size()) != h * h) {
    rep.fail("layout", "expected h^2 sources and h^2 bridges");
    return rep;
  }

  // Each source induces H_i, less its recorded missing body edge.
  for (const LhSource& src : layout.sources) {
    std::string name = piece_name("S", src.i, src.j);
    if (src.ht.t != src.i)
      rep.fail("source-structure", name + ": chain length differs from layer index");
    bool has_missing = src.missing_body_edge.has_value();
    if (src.i == 1 && src.j == 1) {
      if (has_missing) rep.fail("source-structure", name + " must keep its full body");
    } else if (!has_missing) {
      rep.fail("source-structure", name + " must be missing one body edge");
    }
    std::vector<Edge> patch;
    if (has_missing) {
      Edge e = *src.missing_body_edge;
      if (!src.ht.body.contains(e.first) || !src.ht.body.contains(e.second) ||
          g.has_edge(e.first, e.second)) {
        rep.fail("source-structure",
                 name + ": missing body edge " + edge_str(e.first, e.second) +
                     " must be an absent pair of body vertices");
        continue;
      }
      patch.push_back(e);
    }
    // Re-check as an H_i member on the induced subgraph with the missing
    // edge restored, relabeled to a compact range.
    std::vector<int> verts = src.vertices.members();
    std::map<int, int> local;
    for (size_t k = 0; k < verts.size(); ++k) local[verts[k]] = static_cast<int>(k);
    std::vector<Edge> ind;
    for (size_t a = 0; a < verts.size(); ++a)
      for (size_t b = a + 1; b < verts.size(); ++b)
        if (g.has_edge(verts[a], verts[b]))
          ind.emplace_back(static_cast<int>(a), static_cast<int>(b));
    for (const Edge& e : patch) ind.push_back(make_edge(local[e.first], local[e.second]));
    Graph sub = build_graph(static_cast<int>(verts.size()), ind);
    HtLayout ht;
    ht.r = r;
    ht.t = src.i;
    ht.body = VertexSet(static_cast<int>(verts.size()));
    for (int b : src.ht.body.members()) ht.body.add(local[b]);
    ht.v0 = local[src.ht.v0];
    for (int v : src.ht.chain) ht.chain.push_back(local[v]);
    VerificationReport inner = verify_ht(sub, ht);
    for (const Violation& viol : inner.violations)
      rep.fail("source-structure", name + ": " + viol.where + ": " + viol.detail);
  }

  // Each bridge induces K_r minus its two vertex-disjoint recorded edges.
  for (const LhBridge& br : layout.bridges) {
    std::string name = piece_name("B", br.i, br.j);
    std::vector<int> verts = br.vertices.members();
    if (static_cast<int>(verts.size()) != r) {
      rep.fail("bridge-structure", name + " has " + std::to_string(verts.size()) +
                                       " vertices, expected " + std::to_string(r));
      continue;
    }
    const Edge& e0 = br.missing_edges[0];
    const Edge& e1 = br.missing_edges[1];
    if (e0.first == e1.first || e0.first == e1.second || e0.second == e1.first ||
        e0.second == e1.second)
      rep.fail("bridge-structure", name + ": missing edges are not vertex-disjoint");
    for (size_t a = 0; a < verts.size(); ++a) {
      for (size_t b = a + 1; b < verts.size(); ++b) {
        Edge e = make_edge(verts[a], verts[b]);
        bool should_miss = (e == e0 || e == e1);
        if (g.has_edge(e.first, e.second) == should_miss)
          rep.fail("bridge-structure",
                   name + ": pair " + edge_str(e.first, e.second) +
                       (should_miss ? " should be absent" : " should be an edge"));
      }
    }
  }

  // Pairwise intersection sizes, per the construction's case table. A source
  // meets its own bridge and the previous bridge in the chain in exactly two
  // vertices; everything else stays at one vertex or none, and same-layer
  // pieces of the same kind never meet at all.
  for (int i = 1; i <= h; ++i) {
    for (int j = 1; j <= h; ++j) {
      const LhSource& s = layout.source(i, j);
      for (int k = 1; k <= h; ++k) {
        for (int l = 1; l <= h; ++l) {
          const LhBridge& b = layout.bridge(k, l);
          int inter = s.vertices.intersection_size(b.vertices);
          bool neighboring = (i == k && j == l) || (i == k && j == l + 1) ||
                             (i == k + 1 && j == 1 && l == h);
          if (neighboring) {
            if (inter != 2)
              rep.fail("intersection", piece_name("S", i, j) + " and " + piece_name("B", k, l) +
                                           " share " + std::to_string(inter) +
                                           " vertices, expected 2");
          } else if (inter > 1 || (i == k && inter != 0)) {
            rep.fail("intersection", piece_name("S", i, j) + " and " + piece_name("B", k, l) +
                                         " share " + std::to_string(inter) + " vertices");
          }
        }
      }
    }
  }
  for (size_t a = 0; a < layout.sources.size(); ++a) {
    for (size_t b = a + 1; b < layout.sources.size(); ++b) {
      const LhSource& s1 = layout.sources[a];
      const LhSource& s2 = layout.sources[b];
      int inter = s1.vertices.intersection_size(s2.vertices);
      int cap = s1.i == s2.i ? 0 : 1;
      if (inter > cap)
        rep.fail("intersection", piece_name("S", s1.i, s1.j) + " and " +
                                     piece_name("S", s2.i, s2.j) + " share " +
                                     std::to_string(inter) + " vertices");
    }
  }
  for (size_t a = 0; a < layout.bridges.size(); ++a) {
    for (size_t b = a + 1; b < layout.bridges.size(); ++b) {
      const LhBridge& b1 = layout.bridges[a];
      const LhBridge& b2 = layout.bridges[b];
      int inter = b1.vertices.intersection_size(b2.vertices);
      int cap = b1.i == b2.i ? 0 : 1;
      if (inter > cap)
        rep.fail("intersection", piece_name("B", b1.i, b1.j) + " and " +
                                     piece_name("B", b2.i, b2.j) + " share " +
                                     std::to_string(inter) + " vertices");
    }
  }

  // Two-vertex intersections must be stable: the shared pair is a non-edge.
  for (const LhBridge& br : layout.bridges) {
    for (const Edge& e : br.missing_edges) {
      if (g.has_edge(e.first, e.second))
        rep.fail("stability", piece_name("B", br.i, br.j) + ": shared pair " +
                                  edge_str(e.first, e.second) + " is an edge");
    }
  }

  // Permutation sanity plus the compatibility condition: two sources that
  // co-intersect some source's layer never co-intersect at a lower layer.
  if (static_cast<int>(layout.perms.size()) != h) {
    rep.fail("permutation", "perms must cover every layer");
    return rep;
  }
  for (int i = 1; i <= h; ++i) {
    if (static_cast<int>(layout.perms[static_cast<size_t>(i - 1)].size()) < i) {
      rep.fail("permutation", "perms of layer " + std::to_string(i) + " are incomplete");
      return rep;
    }
    for (int l = 1; l <= i; ++l) {
      std::vector<bool> seen(static_cast<size_t>(h), false);
      for (int j = 0; j < h; ++j) {
        int x = layout.perm(i, l, j);
        if (x < 0 || x >= h || seen[static_cast<size_t>(x)]) {
          rep.fail("permutation", "pi_" + std::to_string(i) + "^" + std::to_string(l) +
                                      " is not a permutation");
          break;
        }
        seen[static_cast<size_t>(x)] = true;
      }
      if (l == i) {
        for (int j = 0; j < h; ++j)
          if (layout.perm(i, i, j) != j) {
            rep.fail("permutation", "pi_" + std::to_string(i) + "^" + std::to_string(i) +
                                        " must be the identity");
            break;
          }
      }
    }
  }
  for (int i1 = 1; i1 <= h; ++i1) {
    for (int i2 = 1; i2 <= i1; ++i2) {
      for (int j1 = 0; j1 < h; ++j1) {
        for (int j2 = 0; j2 < h; ++j2) {
          if (i1 == i2 && j1 == j2) continue;
          for (int i3 = 1; i3 <= i2; ++i3) {
            if (layout.perm(i1, i3, j1) != layout.perm(i2, i3, j2)) continue;
            for (int i4 = 1; i4 < i3; ++i4) {
              if (layout.perm(i1, i4, j1) == layout.perm(i2, i4, j2)) {
                std::ostringstream os;
                os << "S(" << i1 << "," << j1 + 1 << ") and S(" << i2 << "," << j2 + 1
                   << ") co-intersect at layers " << i3 << " and " << i4;
                rep.fail("compatibility", os.str());
              }
            }
          }
        }
      }
    }
  }

  // Chain vertices must sit where the permutations say.
  for (const LhSource& src : layout.sources) {
    for (int s = 2; s <= src.i; ++s) {
      int l = src.i - s + 1;
      int target = layout.perm(src.i, l, src.j - 1);
      int vs = src.ht.chain[static_cast<size_t>(s - 1)];
      if (!layout.source(l, target + 1).vertices.contains(vs))
        rep.fail("permutation", piece_name("S", src.i, src.j) + ": v_" + std::to_string(s) +
                                    " is not a vertex of the designated layer-" +
                                    std::to_string(l) + " source");
    }
  }

  return rep;
}

Graph reduced_graph(const LhLayout& layout) {
  const int h = layout.h;
  std::vector<Edge> edges;
  for (size_t a = 0; a < layout.sources.size(); ++a) {
    for (size_t b = a + 1; b < layout.sources.size(); ++b) {
      if (layout.sources[a].vertices.intersection_size(layout.sources[b].vertices) > 0)
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return build_graph(h * h, edges);
}

namespace {

using nlohmann::json;

json vertex_set_to_json(const VertexSet& s) { return json(s.members()); }

}  // namespace

std::string ht_layout_to_json(const HtLayout& layout) {
  json j;
  j["type"] = "ht";
  j["r"] = layout.r;
  j["t"] = layout.t;
  j["n"] = layout.body.universe();
  j["body"] = vertex_set_to_json(layout.body);
  j["v0"] = layout.v0;
  j["chain"] = layout.chain;
  return j.dump();
}

HtLayout ht_layout_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("type", "") != "ht")
    throw InputError("not an H_t layout document");
  try {
    HtLayout layout;
    layout.r = j.at("r").get<int>();
    layout.t = j.at("t").get<int>();
    int n = j.at("n").get<int>();
    layout.body = VertexSet::from_vertices(n, j.at("body").get<std::vector<int>>());
    layout.v0 = j.at("v0").get<int>();
    layout.chain = j.at("chain").get<std::vector<int>>();
    return layout;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed H_t layout: ") + e.what());
  }
}

std::string lh_layout_to_json(const LhLayout& layout) {
  json j;
  j["type"] = "lh";
  j["r"] = layout.r;
  j["h"] = layout.h;
  int n = layout.sources.empty() ? 0 : layout.sources.front().vertices.universe();
  j["n"] = n;
  json sources = json::array();
  for (const LhSource& src : layout.sources) {
    json s;
    s["i"] = src.i;
    s["j"] = src.j;
    s["vertices"] = vertex_set_to_json(src.vertices);
    s["body"] = vertex_set_to_json(src.ht.body);
    s["v0"] = src.ht.v0;
    s["chain"] = src.ht.chain;
    if (src.missing_body_edge)
      s["missing_body_edge"] = {src.missing_body_edge->first, src.missing_body_edge->second};
    else
      s["missing_body_edge"] = nullptr;
    sources.push_back(std::move(s));
  }
  j["sources"] = std::move(sources);
  json bridges = json::array();
  for (const LhBridge& br : layout.bridges) {
    json b;
    b["i"] = br.i;
    b["j"] = br.j;
    b["vertices"] = vertex_set_to_json(br.vertices);
    b["missing_edges"] = {{br.missing_edges[0].first, br.missing_edges[0].second},
                          {br.missing_edges[1].first, br.missing_edges[1].second}};
    bridges.push_back(std::move(b));
  }
  j["bridges"] = std::move(bridges);
  j["perms"] = layout.perms;
  return j.dump();
}

LhLayout lh_layout_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("type", "") != "lh")
    throw InputError("not an L_h layout document");
  try {
    LhLayout layout;
    layout.r = j.at("r").get<int>();
    layout.h = j.at("h").get<int>();
    int n = j.at("n").get<int>();
    for (const json& s : j.at("sources")) {
      LhSource src;
      src.i = s.at("i").get<int>();
      src.j = s.at("j").get<int>();
      src.vertices = VertexSet::from_vertices(n, s.at("vertices").get<std::vector<int>>());
      src.ht.r = layout.r;
      src.ht.t = src.i;
      src.ht.body = VertexSet::from_vertices(n, s.at("body").get<std::vector<int>>());
      src.ht.v0 = s.at("v0").get<int>();
      src.ht.chain = s.at("chain").get<std::vector<int>>();
      if (!s.at("missing_body_edge").is_null()) {
        auto e = s.at("missing_body_edge").get<std::vector<int>>();
        if (e.size() != 2) throw InputError("malformed missing_body_edge");
        src.missing_body_edge = make_edge(e[0], e[1]);
      }
      layout.sources.push_back(std::move(src));
    }
    for (const json& b : j.at("bridges")) {
      LhBridge br;
      br.i = b.at("i").get<int>();
      br.j = b.at("j").get<int>();
      br.vertices = VertexSet::from_vertices(n, b.at("vertices").get<std::vector<int>>());
      auto edges = b.at("missing_edges").get<std::vector<std::vector<int>>>();
      if (edges.size() != 2 || edges[0].size() != 2 || edges[1].size() != 2)
        throw InputError("malformed bridge missing_edges");
      br.missing_edges[0] = make_edge(edges[0][0], edges[0][1]);
      br.missing_edges[1] = make_edge(edges[1][0], edges[1][1]);
      layout.bridges.push_back(std::move(br));
    }
    layout.perms = j.at("perms").get<std::vector<std::vector<std::vector<int>>>>();
    return layout;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed L_h layout: ") + e.what());
  }
}

}  // namespace krboot
