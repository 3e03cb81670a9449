#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "nsl/curve_graph.hpp"
#include "nsl/rng.hpp"
#include "nsl/sheaf_on_tree.hpp"

namespace tst {

using nsl::CurveGraph;
using nsl::Edge;
using nsl::MarkedPoint;
using nsl::Subcurve;
using nsl::Vertex;

inline Vertex V(const std::string& id, int genus = 0) { return {id, genus, std::nullopt}; }
inline Edge E(const std::string& id, const std::string& a, const std::string& b) {
  return {id, a, b};
}

inline CurveGraph graph(std::vector<Vertex> vs, std::vector<Edge> es,
                        std::vector<MarkedPoint> ms = {}) {
  return CurveGraph(std::move(vs), std::move(es), std::move(ms));
}

// Path of n genus-0 vertices named <p>0..<p>{n-1} with edges <p>e0..
inline CurveGraph path(int n, const std::string& p = "v") {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) vs.push_back(V(p + std::to_string(i)));
  for (int i = 0; i + 1 < n; ++i)
    es.push_back(E(p + "e" + std::to_string(i), p + std::to_string(i), p + std::to_string(i + 1)));
  return graph(vs, es);
}

inline Subcurve sub(std::initializer_list<std::string> ids) {
  Subcurve s;
  for (const auto& id : ids) s.vertices.insert(id);
  return s;
}

inline Subcurve whole(const CurveGraph& g) {
  Subcurve s;
  for (const auto& v : g.vertices()) s.vertices.insert(v.id);
  return s;
}

// Decorated-multigraph isomorphism by brute force over vertex bijections;
// fine for the small instances under test.
inline bool isomorphic(const CurveGraph& a, const CurveGraph& b) {
  if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size() ||
      a.marked_points().size() != b.marked_points().size())
    return false;
  std::vector<std::string> av, bv;
  for (const auto& v : a.vertices()) av.push_back(v.id);
  for (const auto& v : b.vertices()) bv.push_back(v.id);
  std::sort(bv.begin(), bv.end());
  auto marks = [](const CurveGraph& g, const std::string& vid) {
    int n = 0;
    for (const auto& m : g.marked_points())
      if (m.vertex == vid) ++n;
    return n;
  };
  do {
    std::map<std::string, std::string> f;
    bool ok = true;
    for (size_t i = 0; i < av.size() && ok; ++i) {
      f[av[i]] = bv[i];
      ok = a.vertex(av[i]).genus == b.vertex(bv[i]).genus &&
           marks(a, av[i]) == marks(b, bv[i]);
    }
    if (ok) {
      std::multiset<std::pair<std::string, std::string>> ea, eb;
      for (const auto& e : a.edges()) {
        auto p = std::minmax(f[e.end0], f[e.end1]);
        ea.insert({p.first, p.second});
      }
      for (const auto& e : b.edges()) {
        auto p = std::minmax(e.end0, e.end1);
        eb.insert({p.first, p.second});
      }
      if (ea == eb) return true;
    }
  } while (std::next_permutation(bv.begin(), bv.end()));
  return false;
}

// Independent cycle oracle: DFS with parent-edge exclusion over the induced
// subgraph; used against the edge-count characterization of trees.
inline bool has_cycle(const CurveGraph& g, const Subcurve& s) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> adj;  // v -> (edge, other)
  for (const auto& eid : nsl::internal_edges(g, s)) {
    const Edge& e = g.edge(eid);
    if (e.is_loop()) return true;
    adj[e.end0].push_back({e.id, e.end1});
    adj[e.end1].push_back({e.id, e.end0});
  }
  std::map<std::string, int> state;
  for (const auto& root : s.vertices) {
    if (state[root]) continue;
    std::vector<std::tuple<std::string, std::string>> stack{{root, ""}};
    while (!stack.empty()) {
      auto [v, via] = stack.back();
      stack.pop_back();
      if (state[v]) return true;
      state[v] = 1;
      for (const auto& [eid, w] : adj[v]) {
        if (eid == via) continue;
        if (state[w]) return true;
        stack.push_back({w, eid});
      }
    }
  }
  return false;
}

// Small random multigraph for property tests.
inline CurveGraph random_graph(nsl::Rng& rng, int max_v = 6) {
  int n = rng.range(1, max_v);
  std::vector<Vertex> vs;
  for (int i = 0; i < n; ++i) vs.push_back(V("g" + std::to_string(i), rng.below(4) == 0 ? 1 : 0));
  std::vector<Edge> es;
  int m = rng.below(n + 3);
  for (int i = 0; i < m; ++i) {
    std::string a = "g" + std::to_string(rng.below(n));
    std::string b = "g" + std::to_string(rng.below(n));
    es.push_back(E("ge" + std::to_string(i), a, b));
  }
  return graph(vs, es);
}

// Random nonnegative sheaf on a random small tree (optionally forest).
inline nsl::SheafOnTree random_sheaf(nsl::Rng& rng, int max_v = 5, int max_rank = 3,
                                     int max_part = 3) {
  int n = rng.range(1, max_v);
  int r = rng.range(1, max_rank);
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) vs.push_back(V("s" + std::to_string(i)));
  // Random tree: attach vertex i to a random earlier vertex (skip some to get
  // forests occasionally).
  for (int i = 1; i < n; ++i) {
    if (rng.below(8) == 0) continue;
    es.push_back(E("se" + std::to_string(i), "s" + std::to_string(rng.below(i)),
                   "s" + std::to_string(i)));
  }
  std::map<std::string, nsl::SplittingType> types;
  for (const auto& v : vs) {
    std::vector<int> parts;
    for (int k = 0; k < r; ++k) parts.push_back(rng.range(0, max_part));
    types.emplace(v.id, nsl::SplittingType(parts));
  }
  std::map<std::string, int> defects;
  for (const auto& e : es) defects[e.id] = rng.range(0, r);
  return nsl::SheafOnTree(graph(vs, es), r, std::move(types), std::move(defects));
}

}  // namespace tst
