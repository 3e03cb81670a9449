#include "nsl/sheaf_on_tree.hpp"

#include <algorithm>

namespace nsl {

SplittingType::SplittingType(std::vector<int> parts) : parts_(std::move(parts)) {
  require(!parts_.empty(), Errc::Schema, "splitting type needs at least one part");
  std::sort(parts_.begin(), parts_.end());
}

int SplittingType::degree() const {
  int d = 0;
  for (int a : parts_) d += a;
  return d;
}

bool SplittingType::trivial() const {
  return std::all_of(parts_.begin(), parts_.end(), [](int a) { return a == 0; });
}

const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::NotNonnegative: return "NotNonnegative";
    case Positivity::Nonnegative: return "Nonnegative";
    case Positivity::Positive: return "Positive";
    case Positivity::StrictlyPositive: return "StrictlyPositive";
  }
  return "?";
}

SheafOnTree::SheafOnTree(CurveGraph tree, int rank,
                         std::map<std::string, SplittingType> vertex_types,
                         std::map<std::string, int> edge_defects,
                         std::map<std::string, EdgeGluing> gluing)
    : tree_(std::move(tree)),
      rank_(rank),
      vertex_types_(std::move(vertex_types)),
      edge_defects_(std::move(edge_defects)),
      gluing_(std::move(gluing)) {
  require(rank_ >= 1, Errc::Schema, "rank must be >= 1");
  Subcurve all;
  for (const auto& v : tree_.vertices()) all.vertices.insert(v.id);
  for (const auto& v : tree_.vertices())
    require(v.genus == 0, Errc::Schema, "sheaf carrier must be a P^1-tree (genus-0 vertices)");
  require(is_p1_tree(tree_, all), Errc::Schema, "sheaf carrier must be a P^1-tree (acyclic)");
  for (const auto& v : tree_.vertices()) {
    auto it = vertex_types_.find(v.id);
    require(it != vertex_types_.end(), Errc::Schema, "missing splitting type at vertex " + v.id);
    require(it->second.rank() == rank_, Errc::Schema,
            "splitting type at " + v.id + " has wrong rank");
  }
  require(vertex_types_.size() == tree_.vertices().size(), Errc::Schema,
          "splitting type for unknown vertex");
  for (const auto& [eid, d] : edge_defects_) {
    require(tree_.has_edge(eid), Errc::Schema, "defect on unknown edge " + eid);
    require(0 <= d && d <= rank_, Errc::Schema,
            "edge defect out of range [0, r] at edge " + eid);
  }
  for (const auto& [eid, gl] : gluing_) {
    require(tree_.has_edge(eid), Errc::Schema, "gluing on unknown edge " + eid);
    int delta = defect_of(eid);
    int rows = rank_ - delta;
    require(gl.pi_minus.rows() == rows && gl.pi_minus.cols() == rank_ &&
                gl.pi_plus.rows() == rows && gl.pi_plus.cols() == rank_ &&
                gl.iso.rows() == rows && gl.iso.cols() == rows,
            Errc::Schema, "gluing data shape mismatch at edge " + eid);
    require(gl.pi_minus.rank() == rows && gl.pi_plus.rank() == rows, Errc::Schema,
            "gluing projections must have full rank at edge " + eid);
    require(rows == 0 || gl.iso.invertible(), Errc::Schema,
            "gluing identification must be invertible at edge " + eid);
  }
}

const SplittingType& SheafOnTree::type_of(const std::string& vid) const {
  auto it = vertex_types_.find(vid);
  require(it != vertex_types_.end(), Errc::Domain, "no splitting type at vertex " + vid);
  return it->second;
}

int SheafOnTree::defect_of(const std::string& eid) const {
  auto it = edge_defects_.find(eid);
  return it == edge_defects_.end() ? 0 : it->second;
}

bool SheafOnTree::nonnegative() const {
  for (const auto& [vid, t] : vertex_types_)
    if (!t.nonnegative()) return false;
  return true;
}

SheafOnTree SheafOnTree::component(const Subcurve& comp) const {
  std::vector<Vertex> vs;
  for (const auto& v : tree_.vertices())
    if (comp.vertices.count(v.id)) vs.push_back(v);
  std::vector<Edge> es;
  for (const auto& e : tree_.edges())
    if (comp.vertices.count(e.end0) && comp.vertices.count(e.end1)) es.push_back(e);
  std::map<std::string, SplittingType> types;
  for (const auto& v : vs) types.emplace(v.id, type_of(v.id));
  std::map<std::string, int> defects;
  std::map<std::string, EdgeGluing> gl;
  for (const auto& e : es) {
    defects[e.id] = defect_of(e.id);
    auto it = gluing_.find(e.id);
    if (it != gluing_.end()) gl.emplace(e.id, it->second);
  }
  return SheafOnTree(CurveGraph(std::move(vs), std::move(es), {}), rank_, std::move(types),
                     std::move(defects), std::move(gl));
}

int degree(const SheafOnTree& f) {
  int d = 0;
  for (const auto& [vid, t] : f.vertex_types()) d += t.degree();
  return d;
}

int delta_flat_total(const SheafOnTree& f) {
  int d = 0;
  for (const auto& e : f.tree().edges()) d += f.defect_of(e.id);
  return d;
}

int h0(const SheafOnTree& f) {
  require(f.nonnegative(), Errc::Domain, "h0 formula asserted only for nonnegative sheaves");
  return f.rank() * f.tree().component_count() + degree(f) + delta_flat_total(f);
}

Positivity classify_positivity(const SheafOnTree& f) {
  if (!f.nonnegative()) return Positivity::NotNonnegative;
  bool strict = true;
  for (const auto& [vid, t] : f.vertex_types())
    if (!t.positive_on_component()) strict = false;
  if (strict) return Positivity::StrictlyPositive;
  Subcurve all;
  for (const auto& v : f.tree().vertices()) all.vertices.insert(v.id);
  bool positive = true;
  for (const auto& comp : subcurve_components(f.tree(), all)) {
    bool has_positive = false;
    for (const auto& vid : comp.vertices)
      if (f.type_of(vid).positive_on_component()) has_positive = true;
    if (!has_positive) positive = false;
  }
  return positive ? Positivity::Positive : Positivity::Nonnegative;
}

int constrained_sections_lower_bound(const SheafOnTree& f, int attach_points) {
  require(attach_points >= 0, Errc::Domain, "negative attach-point count");
  return h0(f) - f.rank() * attach_points;
}

PushforwardResult pushforward_collapse(const SheafOnTree& f, const AttachContext& ctx) {
  require(f.nonnegative(), Errc::Domain,
          "pushforward_collapse asserted only for nonnegative sheaves");
  require(f.tree().component_count() == 1, Errc::Domain,
          "pushforward_collapse expects one connected tree component");
  size_t want = ctx.kind == AttachKind::SmoothPoint ? 1 : 2;
  require(ctx.boundary_defects.size() == want, Errc::Domain,
          "attach context arity does not match its kind");
  for (int d : ctx.boundary_defects)
    require(0 <= d && d <= f.rank(), Errc::Domain, "boundary defect out of range [0, r]");

  int eta = degree(f) + delta_flat_total(f);
  for (int d : ctx.boundary_defects) eta += d;
  PushforwardResult res;
  res.eta = eta;
  if (ctx.kind == AttachKind::SmoothPoint) {
    res.torsion_length = eta;
    res.image_defect = std::nullopt;
  } else {
    res.torsion_length = std::max(0, eta - f.rank());
    res.image_defect = std::min(eta, f.rank());
  }
  return res;
}

int delta_flat_change(const SheafOnTree& tree_part, const std::vector<AttachContext>& contexts) {
  require(classify_positivity(tree_part) == Positivity::Positive ||
              classify_positivity(tree_part) == Positivity::StrictlyPositive,
          Errc::Domain, "delta_flat_change requires a positive tree sheaf");
  Subcurve all;
  for (const auto& v : tree_part.tree().vertices()) all.vertices.insert(v.id);
  auto comps = subcurve_components(tree_part.tree(), all);
  require(comps.size() == contexts.size(), Errc::Domain,
          "one attach context needed per connected component");
  int total = 0;
  for (size_t i = 0; i < comps.size(); ++i) {
    SheafOnTree piece = tree_part.component(comps[i]);
    PushforwardResult pf = pushforward_collapse(piece, contexts[i]);
    int pre = delta_flat_total(piece);
    for (int d : contexts[i].boundary_defects) pre += d;
    int post = pf.torsion_length + pf.image_defect.value_or(0);
    // Fiber-excess conservation across the collapse: pre - post = -deg.
    require(pre - post == -degree(piece), Errc::Domain,
            "pushforward arithmetic violated the collapse identity");
    total += pre - post;
  }
  require(total == -degree(tree_part), Errc::Domain,
          "aggregate defect change does not match -deg");
  require(total < 0, Errc::Domain, "defect change must be strictly negative");
  return total;
}

}  // namespace nsl
