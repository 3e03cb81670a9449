#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsl/errors.hpp"

namespace nsl {

// Decorated multigraph model of a nodal curve: vertices are irreducible
// components (with geometric genus), edges are nodes (self-loops allowed),
// marked points are smooth points used as attachment/bubbling sites.

struct Vertex {
  std::string id;
  int genus = 0;
  std::optional<std::string> label;
};

struct Edge {
  std::string id;
  std::string end0, end1;  // unordered; end0 == end1 for a self-loop
  bool is_loop() const { return end0 == end1; }
};

struct MarkedPoint {
  std::string id;
  std::string vertex;
};

class CurveGraph {
 public:
  CurveGraph() = default;
  CurveGraph(std::vector<Vertex> vertices, std::vector<Edge> edges,
             std::vector<MarkedPoint> marked_points);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<MarkedPoint>& marked_points() const { return marked_points_; }

  bool has_vertex(const std::string& id) const { return vindex_.count(id) != 0; }
  bool has_edge(const std::string& id) const { return eindex_.count(id) != 0; }
  bool has_marked_point(const std::string& id) const { return mindex_.count(id) != 0; }
  const Vertex& vertex(const std::string& id) const;
  const Edge& edge(const std::string& id) const;
  const MarkedPoint& marked_point(const std::string& id) const;

  // Edge ids incident to a vertex; a self-loop appears once.
  std::vector<std::string> incident_edges(const std::string& vid) const;

  // Nodes on the component: non-loop incidences count 1, self-loops count 2.
  int special_points(const std::string& vid) const;

  int component_count() const;
  // Connected components as sorted vertex-id lists, ordered by smallest id.
  std::vector<std::vector<std::string>> components() const;

  int b1() const;      // #edges - #vertices + #components
  int genus() const;   // sum of vertex genera + b1

 private:
  void validate() const;

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<MarkedPoint> marked_points_;
  std::map<std::string, size_t> vindex_, eindex_, mindex_;
};

// A subcurve is the induced subgraph on a vertex subset of a parent graph.
struct Subcurve {
  std::set<std::string> vertices;
};

// Edge ids of g internal to s (both endpoints in s; self-loops at s included).
std::vector<std::string> internal_edges(const CurveGraph& g, const Subcurve& s);
// Edge ids of g with exactly one endpoint in s (each is one attach point).
std::vector<std::string> attach_edges(const CurveGraph& g, const Subcurve& s);
// Connected components of the induced subgraph, ordered by smallest vertex id.
std::vector<Subcurve> subcurve_components(const CurveGraph& g, const Subcurve& s);

// Every vertex of s has genus 0 and the induced subgraph is acyclic.
bool is_p1_tree(const CurveGraph& g, const Subcurve& s);

struct ChainProfile {
  bool is_chain = false;
  int length = 0;
  std::vector<std::string> ends;
};

// Requires is_p1_tree(s). A chain is connected with every internal degree <= 2.
ChainProfile chain_profile(const CurveGraph& g, const Subcurve& s);

// Every connected component of the P^1-tree s meets the complement in exactly
// one or two attach edges.
bool is_admissible_tree(const CurveGraph& g, const Subcurve& s);

struct ImagePoint {
  enum class Kind { MarkedPoint, Node };
  Kind kind;
  std::string id;                    // marked-point id or edge id in the result graph
  std::vector<std::string> at;       // carrying vertex id(s) in the result graph
};

struct CollapseResult {
  CurveGraph graph;
  // Image of every vertex: kept vertices map to themselves, collapsed ones to
  // the id of the image point record below.
  std::map<std::string, std::string> vertex_image;
  // One entry per collapsed connected component (sorted vertex ids).
  std::vector<std::pair<std::vector<std::string>, ImagePoint>> collapsed_to;
};

// Contracts an admissible P^1-tree: one-attach components become a fresh
// marked point on the attaching vertex, two-attach components become a node
// joining the attaching vertices (a self-loop if they coincide). Genus is
// preserved.
CollapseResult collapse(const CurveGraph& g, const Subcurve& s);

struct InsertSite {
  enum class Kind { AtMarkedPoint, AtEdge };
  Kind kind;
  std::string id;
};

// Inverse surgery to collapse: grafts a connected genus-0 tree at a marked
// point (one attach vertex) or into an edge (two attach vertices). The marked
// point resp. edge is consumed; new attach edges get deterministic ids.
CurveGraph insert_tree(const CurveGraph& g, const InsertSite& site, const CurveGraph& tree,
                       const std::vector<std::string>& attach);

struct StabilizeResult {
  CurveGraph core;
  Subcurve contracted;  // in the input graph
  std::map<std::string, std::string> vertex_image;
};

// Contracts, greedily in ascending vertex-id order, genus-0 loop-free vertices
// with fewer than three special points until the core is stable. Requires
// genus >= 2.
StabilizeResult stabilize(const CurveGraph& g);

// Stability of the whole graph: genus-0 vertices need >= 3 special points,
// genus-1 vertices >= 1.
bool is_stable(const CurveGraph& g);

}  // namespace nsl
