#include "nsl/bounds_audit.hpp"

#include <algorithm>

namespace nsl {

namespace {

std::string num(long v) { return std::to_string(v); }

}  // namespace

CheckReport check_component_bound(const Scenario& s) {
  for (long h : s.u_one_h_beta)
    require(h >= 1, Errc::Domain, "vertical component needs H.beta_i >= 1");
  long count = static_cast<long>(s.u_one_h_beta.size());
  CheckReport r{"component_bound", count < s.total_h_beta || count == 0, num(count),
                num(s.total_h_beta), ""};
  if (count == 0) {
    r.pass = true;
    r.detail = "vacuous: no vertical components";
  } else {
    r.detail = "#components(C'^(1)_u) < H.beta (strict)";
  }
  return r;
}

CheckReport check_torsion_bound(const Scenario& s) {
  long bound = 0;
  if (s.u_a_fragment) {
    bound = h0(*s.u_a_fragment) - static_cast<long>(s.rank) * s.n_a;
  } else {
    bound = -static_cast<long>(s.rank) * s.n_a;
  }
  CheckReport r{"torsion_bound", s.l_torsion >= bound, num(s.l_torsion), num(bound),
                "l(F_torsion) >= h0(E'|_{u_a}) - r*n_a"};
  return r;
}

CheckReport check_delta_bound(const Scenario& s) {
  long total = 0;
  for (int d : s.core_defects) {
    require(0 <= d && d <= s.rank, Errc::Domain, "core defect out of range [0, r]");
    total += d;
  }
  long bound = static_cast<long>(s.rank) * s.core_node_count;
  return {"delta_bound", total <= bound, num(total), num(bound),
          "sum of core defects <= r * #core nodes"};
}

CheckReport check_euler_window(const Scenario& s) {
  long diff = s.chi_E_C0 - s.chi_F_mod_torsion;
  if (diff < 0) diff = -diff;
  long bound = 2L * s.rank * s.attach_count;
  return {"euler_window", diff <= bound, num(diff), num(bound),
          "|chi(E'|_{C'_0}) - chi(F/F_torsion)| <= 2r|C'_0 cap C'_u|"};
}

std::vector<CheckReport> audit_all(const Scenario& s) {
  return {check_component_bound(s), check_torsion_bound(s), check_delta_bound(s),
          check_euler_window(s)};
}

Scenario scenario_from_state(const ReductionState& state) {
  const FMDatum& d = state.datum;
  Scenario s;
  s.rank = d.rank;
  s.total_h_beta = d.total_charge.h_beta;

  // Per-vertex classification: vertical (fragment charge with jl > 0), then
  // nonconstant 0-dimensional, then constant.
  std::set<std::string> u_one, u_plus, u_zero;
  for (const auto& vid : d.contracted) {
    if (d.vertex_charge(vid).jl_beta > 0)
      u_one.insert(vid);
    else if (!d.vertex_types.at(vid).trivial())
      u_plus.insert(vid);
    else
      u_zero.insert(vid);
  }

  // Vertical components: connected pieces of the u_one locus.
  Subcurve ones{u_one};
  for (const auto& comp : subcurve_components(d.curve, ones)) {
    long h = 0;
    for (const auto& vid : comp.vertices) h += d.vertex_charge(vid).h_beta;
    s.u_one_h_beta.push_back(h);
  }
  // In-flight vertical torsion records are also 1-dimensional vertical pieces.
  for (const auto& t : d.vertical_torsions) s.u_one_h_beta.push_back(t.charge.h_beta);

  // u_a: components of the 0-dimensional locus containing a nonconstant
  // vertex.
  Subcurve zero_dim{u_plus};
  zero_dim.vertices.insert(u_zero.begin(), u_zero.end());
  Subcurve u_a;
  for (const auto& comp : subcurve_components(d.curve, zero_dim)) {
    bool has_plus = std::any_of(comp.vertices.begin(), comp.vertices.end(),
                                [&](const std::string& v) { return u_plus.count(v) != 0; });
    if (has_plus) u_a.vertices.insert(comp.vertices.begin(), comp.vertices.end());
  }
  s.n_a = static_cast<int>(attach_edges(d.curve, u_a).size());
  if (!u_a.vertices.empty()) {
    std::vector<Vertex> vs;
    for (const auto& v : d.curve.vertices())
      if (u_a.vertices.count(v.id)) vs.push_back(v);
    std::vector<Edge> es;
    std::map<std::string, int> defects;
    for (const auto& eid : internal_edges(d.curve, u_a)) {
      es.push_back(d.curve.edge(eid));
      defects[eid] = d.defect_of(eid);
    }
    std::map<std::string, SplittingType> types;
    for (const auto& v : vs) types.emplace(v.id, d.vertex_types.at(v.id));
    s.u_a_fragment = SheafOnTree(CurveGraph(std::move(vs), std::move(es), {}), d.rank,
                                 std::move(types), std::move(defects));
  }

  // Core bookkeeping.
  Subcurve contracted{d.contracted};
  std::vector<std::string> core_edges;
  for (const auto& e : d.curve.edges())
    if (!d.contracted.count(e.end0) && !d.contracted.count(e.end1)) core_edges.push_back(e.id);
  // Core nodes after stabilization: core-core edges plus one node per
  // two-attach contracted region.
  int extra_nodes = 0;
  for (const auto& region : d.contracted_regions())
    if (attach_edges(d.curve, region).size() == 2) ++extra_nodes;
  s.core_node_count = static_cast<int>(core_edges.size()) + extra_nodes;
  for (const auto& eid : core_edges) s.core_defects.push_back(d.defect_of(eid));
  s.attach_count = static_cast<int>(attach_edges(d.curve, contracted).size());

  // Pushforward torsion of the stabilization, region by region; two-attach
  // regions also leave an image defect on the corresponding new core node.
  long l = 0;
  for (const auto& region : d.contracted_regions()) {
    SheafOnTree frag = d.region_sheaf(region);
    auto att = attach_edges(d.curve, region);
    AttachContext ctx;
    ctx.kind = att.size() == 1 ? AttachKind::SmoothPoint : AttachKind::Node;
    std::sort(att.begin(), att.end());
    for (const auto& eid : att) ctx.boundary_defects.push_back(d.defect_of(eid));
    PushforwardResult pf = pushforward_collapse(frag, ctx);
    l += pf.torsion_length;
    if (pf.image_defect) s.core_defects.push_back(*pf.image_defect);
  }
  // Point torsion records push forward to torsion as well.
  for (const auto& t : d.point_torsions) l += t.charge.chi;
  s.l_torsion = l;

  s.chi_E_C0 = d.core_charge.chi;
  s.chi_F_mod_torsion = d.total_charge.chi - l;
  return s;
}

}  // namespace nsl
