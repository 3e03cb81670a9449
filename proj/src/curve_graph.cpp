#include "nsl/curve_graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace nsl {

CurveGraph::CurveGraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
                       std::vector<MarkedPoint> marked_points)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      marked_points_(std::move(marked_points)) {
  for (size_t i = 0; i < vertices_.size(); ++i) vindex_[vertices_[i].id] = i;
  for (size_t i = 0; i < edges_.size(); ++i) eindex_[edges_[i].id] = i;
  for (size_t i = 0; i < marked_points_.size(); ++i) mindex_[marked_points_[i].id] = i;
  validate();
}

void CurveGraph::validate() const {
  require(vindex_.size() == vertices_.size(), Errc::Schema, "duplicate vertex id");
  require(eindex_.size() == edges_.size(), Errc::Schema, "duplicate edge id");
  require(mindex_.size() == marked_points_.size(), Errc::Schema, "duplicate marked-point id");
  for (const auto& v : vertices_)
    require(v.genus >= 0, Errc::Schema, "negative genus at vertex " + v.id);
  for (const auto& e : edges_)
    require(has_vertex(e.end0) && has_vertex(e.end1), Errc::Schema,
            "edge " + e.id + " references missing vertex");
  for (const auto& m : marked_points_)
    require(has_vertex(m.vertex), Errc::Schema,
            "marked point " + m.id + " references missing vertex");
}

const Vertex& CurveGraph::vertex(const std::string& id) const {
  auto it = vindex_.find(id);
  require(it != vindex_.end(), Errc::Domain, "no vertex " + id);
  return vertices_[it->second];
}

const Edge& CurveGraph::edge(const std::string& id) const {
  auto it = eindex_.find(id);
  require(it != eindex_.end(), Errc::Domain, "no edge " + id);
  return edges_[it->second];
}

const MarkedPoint& CurveGraph::marked_point(const std::string& id) const {
  auto it = mindex_.find(id);
  require(it != mindex_.end(), Errc::Domain, "no marked point " + id);
  return marked_points_[it->second];
}

std::vector<std::string> CurveGraph::incident_edges(const std::string& vid) const {
  std::vector<std::string> out;
  for (const auto& e : edges_)
    if (e.end0 == vid || e.end1 == vid) out.push_back(e.id);
  return out;
}

int CurveGraph::special_points(const std::string& vid) const {
  int n = 0;
  for (const auto& e : edges_) {
    if (e.is_loop() && e.end0 == vid)
      n += 2;
    else if (e.end0 == vid || e.end1 == vid)
      n += 1;
  }
  return n;
}

std::vector<std::vector<std::string>> CurveGraph::components() const {
  std::map<std::string, std::string> parent;
  for (const auto& v : vertices_) parent[v.id] = v.id;
  std::function<std::string(const std::string&)> find = [&](const std::string& x) {
    std::string r = x;
    while (parent[r] != r) r = parent[r];
    parent[x] = r;
    return r;
  };
  for (const auto& e : edges_) parent[find(e.end0)] = find(e.end1);
  std::map<std::string, std::vector<std::string>> groups;
  for (const auto& v : vertices_) groups[find(v.id)].push_back(v.id);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, vs] : groups) {
    std::sort(vs.begin(), vs.end());
    out.push_back(vs);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

int CurveGraph::component_count() const { return static_cast<int>(components().size()); }

int CurveGraph::b1() const {
  return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + component_count();
}

int CurveGraph::genus() const {
  int g = b1();
  for (const auto& v : vertices_) g += v.genus;
  require(g >= 0, Errc::Domain, "negative arithmetic genus");
  return g;
}

std::vector<std::string> internal_edges(const CurveGraph& g, const Subcurve& s) {
  std::vector<std::string> out;
  for (const auto& e : g.edges())
    if (s.vertices.count(e.end0) && s.vertices.count(e.end1)) out.push_back(e.id);
  return out;
}

std::vector<std::string> attach_edges(const CurveGraph& g, const Subcurve& s) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) {
    bool a = s.vertices.count(e.end0) != 0, b = s.vertices.count(e.end1) != 0;
    if (a != b) out.push_back(e.id);
  }
  return out;
}

std::vector<Subcurve> subcurve_components(const CurveGraph& g, const Subcurve& s) {
  for (const auto& v : s.vertices)
    require(g.has_vertex(v), Errc::Domain, "subcurve references missing vertex " + v);
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& eid : internal_edges(g, s)) {
    const Edge& e = g.edge(eid);
    adj[e.end0].push_back(e.end1);
    adj[e.end1].push_back(e.end0);
  }
  std::set<std::string> seen;
  std::vector<Subcurve> out;
  for (const auto& v : s.vertices) {
    if (seen.count(v)) continue;
    Subcurve comp;
    std::queue<std::string> q;
    q.push(v);
    seen.insert(v);
    while (!q.empty()) {
      std::string u = q.front();
      q.pop();
      comp.vertices.insert(u);
      for (const auto& w : adj[u])
        if (!seen.count(w)) {
          seen.insert(w);
          q.push(w);
        }
    }
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const Subcurve& a, const Subcurve& b) {
    return *a.vertices.begin() < *b.vertices.begin();
  });
  return out;
}

bool is_p1_tree(const CurveGraph& g, const Subcurve& s) {
  for (const auto& v : s.vertices) {
    require(g.has_vertex(v), Errc::Domain, "subcurve references missing vertex " + v);
    if (g.vertex(v).genus != 0) return false;
  }
  // Acyclic iff every component satisfies #edges == #vertices - 1; self-loops
  // and parallel edges both break the count.
  auto internals = internal_edges(g, s);
  for (const auto& eid : internals)
    if (g.edge(eid).is_loop()) return false;
  auto comps = subcurve_components(g, s);
  size_t vertex_total = 0;
  for (const auto& c : comps) vertex_total += c.vertices.size();
  return internals.size() + comps.size() == vertex_total;
}

ChainProfile chain_profile(const CurveGraph& g, const Subcurve& s) {
  require(is_p1_tree(g, s), Errc::Domain, "chain_profile: not a P^1-tree");
  ChainProfile p;
  p.length = static_cast<int>(s.vertices.size());
  std::map<std::string, int> deg;
  for (const auto& v : s.vertices) deg[v] = 0;
  for (const auto& eid : internal_edges(g, s)) {
    const Edge& e = g.edge(eid);
    deg[e.end0]++;
    deg[e.end1]++;
  }
  bool connected = subcurve_components(g, s).size() == 1;
  bool max2 = true;
  for (const auto& [v, d] : deg)
    if (d > 2) max2 = false;
  p.is_chain = connected && max2 && !s.vertices.empty();
  if (p.is_chain)
    for (const auto& [v, d] : deg)
      if (d <= 1) p.ends.push_back(v);
  return p;
}

bool is_admissible_tree(const CurveGraph& g, const Subcurve& s) {
  if (!is_p1_tree(g, s)) return false;
  if (s.vertices.empty()) return false;
  for (const auto& comp : subcurve_components(g, s)) {
    size_t n = attach_edges(g, comp).size();
    if (n != 1 && n != 2) return false;
  }
  return true;
}

CollapseResult collapse(const CurveGraph& g, const Subcurve& s) {
  require(is_admissible_tree(g, s), Errc::Domain, "collapse: subcurve not an admissible P^1-tree");
  int genus_before = g.genus();

  std::vector<Vertex> vs;
  for (const auto& v : g.vertices())
    if (!s.vertices.count(v.id)) vs.push_back(v);
  std::vector<Edge> es;
  for (const auto& e : g.edges())
    if (!s.vertices.count(e.end0) && !s.vertices.count(e.end1)) es.push_back(e);
  // Marked points on collapsed vertices are absorbed into the image point.
  std::vector<MarkedPoint> ms;
  for (const auto& m : g.marked_points())
    if (!s.vertices.count(m.vertex)) ms.push_back(m);

  CollapseResult res;
  for (const auto& comp : subcurve_components(g, s)) {
    auto attach = attach_edges(g, comp);
    std::sort(attach.begin(), attach.end());
    std::vector<std::string> comp_sorted(comp.vertices.begin(), comp.vertices.end());
    ImagePoint img;
    if (attach.size() == 1) {
      const Edge& a = g.edge(attach[0]);
      std::string host = s.vertices.count(a.end0) ? a.end1 : a.end0;
      img.kind = ImagePoint::Kind::MarkedPoint;
      img.id = "mp:" + a.id;
      img.at = {host};
      ms.push_back({img.id, host});
    } else {
      const Edge& a0 = g.edge(attach[0]);
      const Edge& a1 = g.edge(attach[1]);
      std::string h0 = s.vertices.count(a0.end0) ? a0.end1 : a0.end0;
      std::string h1 = s.vertices.count(a1.end0) ? a1.end1 : a1.end0;
      img.kind = ImagePoint::Kind::Node;
      img.id = "nd:" + a0.id + "|" + a1.id;
      img.at = {h0, h1};
      es.push_back({img.id, h0, h1});
    }
    for (const auto& v : comp.vertices) res.vertex_image[v] = img.id;
    res.collapsed_to.emplace_back(comp_sorted, img);
  }
  for (const auto& v : g.vertices())
    if (!s.vertices.count(v.id)) res.vertex_image[v.id] = v.id;

  res.graph = CurveGraph(std::move(vs), std::move(es), std::move(ms));
  require(res.graph.genus() == genus_before, Errc::Domain,
          "collapse changed the arithmetic genus");
  return res;
}

CurveGraph insert_tree(const CurveGraph& g, const InsertSite& site, const CurveGraph& tree,
                       const std::vector<std::string>& attach) {
  require(tree.component_count() == 1 && tree.genus() == 0 && tree.marked_points().empty(),
          Errc::Domain, "insert_tree: payload must be a connected genus-0 tree");
  for (const auto& v : tree.vertices())
    require(v.genus == 0, Errc::Domain, "insert_tree: payload vertex of positive genus");
  for (const auto& a : attach)
    require(tree.has_vertex(a), Errc::Domain, "insert_tree: attach vertex not in payload");
  for (const auto& v : tree.vertices())
    require(!g.has_vertex(v.id), Errc::Schema, "insert_tree: vertex id clash: " + v.id);
  for (const auto& e : tree.edges())
    require(!g.has_edge(e.id), Errc::Schema, "insert_tree: edge id clash: " + e.id);

  size_t want = site.kind == InsertSite::Kind::AtMarkedPoint ? 1 : 2;
  require(attach.size() == want, Errc::Domain,
          "insert_tree: attach arity mismatch with site kind");

  std::vector<Vertex> vs(g.vertices());
  std::vector<Edge> es(g.edges());
  std::vector<MarkedPoint> ms(g.marked_points());
  vs.insert(vs.end(), tree.vertices().begin(), tree.vertices().end());
  es.insert(es.end(), tree.edges().begin(), tree.edges().end());

  if (site.kind == InsertSite::Kind::AtMarkedPoint) {
    const MarkedPoint& m = g.marked_point(site.id);
    ms.erase(std::remove_if(ms.begin(), ms.end(),
                            [&](const MarkedPoint& x) { return x.id == m.id; }),
             ms.end());
    es.push_back({"e:" + m.id, m.vertex, attach[0]});
  } else {
    const Edge& e = g.edge(site.id);
    es.erase(std::remove_if(es.begin(), es.end(), [&](const Edge& x) { return x.id == e.id; }),
             es.end());
    es.push_back({e.id + ":a", e.end0, attach[0]});
    es.push_back({e.id + ":b", e.end1, attach[1]});
  }
  CurveGraph out(std::move(vs), std::move(es), std::move(ms));
  require(out.genus() == g.genus(), Errc::Domain, "insert_tree changed the arithmetic genus");
  return out;
}

bool is_stable(const CurveGraph& g) {
  for (const auto& v : g.vertices()) {
    int sp = g.special_points(v.id);
    if (v.genus == 0 && sp < 3) return false;
    if (v.genus == 1 && sp < 1) return false;
  }
  return true;
}

StabilizeResult stabilize(const CurveGraph& g) {
  require(g.genus() >= 2, Errc::Domain, "stabilize requires genus >= 2");
  CurveGraph cur = g;
  StabilizeResult res;
  for (const auto& v : g.vertices()) res.vertex_image[v.id] = v.id;

  for (;;) {
    std::optional<std::string> pick;
    for (const auto& v : cur.vertices()) {
      if (v.genus != 0) continue;
      bool loop = false;
      for (const auto& eid : cur.incident_edges(v.id))
        if (cur.edge(eid).is_loop()) loop = true;
      if (loop) continue;
      if (cur.special_points(v.id) < 3) {
        if (!pick || v.id < *pick) pick = v.id;
      }
    }
    if (!pick) break;
    Subcurve one{{*pick}};
    require(is_admissible_tree(cur, one), Errc::Domain,
            "stabilize: unstable vertex " + *pick + " is not contractible");
    // Ids consumed by this contraction: the vertex itself, its attach edges,
    // and marked points sitting on it all map to the new image point.
    std::set<std::string> consumed = {*pick};
    for (const auto& eid : cur.incident_edges(*pick)) consumed.insert(eid);
    for (const auto& m : cur.marked_points())
      if (m.vertex == *pick) consumed.insert(m.id);
    CollapseResult step = collapse(cur, one);
    const std::string img = step.vertex_image.at(*pick);
    res.contracted.vertices.insert(*pick);
    for (auto& [orig, cur_img] : res.vertex_image)
      if (consumed.count(cur_img)) cur_img = img;
    cur = step.graph;
  }
  require(is_stable(cur), Errc::Domain, "stabilize: residual graph is not stable");
  res.core = cur;
  return res;
}

}  // namespace nsl
