#include "nsl/error_charge.hpp"

#include <algorithm>

namespace nsl {

int FMDatum::defect_of(const std::string& eid) const {
  auto it = edge_defects.find(eid);
  return it == edge_defects.end() ? 0 : it->second;
}

bool FMDatum::is_constant_vertex(const std::string& vid) const {
  if (!contracted.count(vid)) return false;
  return vertex_types.at(vid).trivial();
}

ChargeDatum FMDatum::vertex_charge(const std::string& vid) const {
  auto it = vertex_charges.find(vid);
  return it == vertex_charges.end() ? ChargeDatum{} : it->second;
}

std::vector<Subcurve> FMDatum::contracted_regions() const {
  Subcurve s;
  s.vertices = contracted;
  return subcurve_components(curve, s);
}

SheafOnTree FMDatum::region_sheaf(const Subcurve& region) const {
  std::vector<Vertex> vs;
  for (const auto& v : curve.vertices())
    if (region.vertices.count(v.id)) vs.push_back(v);
  std::vector<Edge> es;
  std::map<std::string, int> defects;
  for (const auto& eid : internal_edges(curve, region)) {
    es.push_back(curve.edge(eid));
    defects[eid] = defect_of(eid);
  }
  std::map<std::string, SplittingType> types;
  for (const auto& v : vs) types.emplace(v.id, vertex_types.at(v.id));
  return SheafOnTree(CurveGraph(std::move(vs), std::move(es), {}), rank, std::move(types),
                     std::move(defects));
}

ChargeDatum FMDatum::region_charge(const Subcurve& region) const {
  ChargeDatum c;
  for (const auto& vid : region.vertices) c = c + vertex_charge(vid);
  return c;
}

ChargeDatum FMDatum::derived_total() const {
  ChargeDatum c = core_charge;
  for (const auto& [vid, q] : vertex_charges) c = c + q;
  for (const auto& t : point_torsions) c = c + t.charge;
  for (const auto& t : vertical_torsions) c = c + t.charge;
  return c;
}

void FMDatum::validate() const {
  require(rank >= 1, Errc::Schema, "FM datum rank must be >= 1");
  for (const auto& vid : contracted) {
    require(curve.has_vertex(vid), Errc::Schema, "contracted set references missing vertex " + vid);
    require(curve.vertex(vid).genus == 0, Errc::Schema,
            "contracted vertex " + vid + " must have genus 0");
  }
  Subcurve s;
  s.vertices = contracted;
  if (!contracted.empty())
    require(is_admissible_tree(curve, s), Errc::Schema,
            "contracted locus must be an admissible P^1-tree");
  require(vertex_types.size() == contracted.size(), Errc::Schema,
          "splitting data must cover exactly the contracted vertices");
  for (const auto& [vid, t] : vertex_types) {
    require(contracted.count(vid), Errc::Schema, "splitting data on non-contracted vertex " + vid);
    require(t.rank() == rank, Errc::Schema, "splitting rank mismatch at " + vid);
  }
  for (const auto& [eid, d] : edge_defects) {
    require(curve.has_edge(eid), Errc::Schema, "defect on unknown edge " + eid);
    require(0 <= d && d <= rank, Errc::Schema, "edge defect out of range at " + eid);
  }
  for (const auto& [vid, q] : vertex_charges) {
    require(contracted.count(vid), Errc::Schema, "fragment charge on non-contracted vertex " + vid);
    require(q.jl_beta == 0 || q.h_beta >= 1, Errc::Schema,
            "vertical fragment charge needs H.beta >= 1 at " + vid);
    require(!is_constant_vertex(vid) || q.is_zero(), Errc::Schema,
            "constant vertex " + vid + " must carry zero charge");
  }
  if (!core_chi.empty()) {
    long sum = 0;
    for (const auto& [vid, c] : core_chi) {
      require(curve.has_vertex(vid) && !contracted.count(vid), Errc::Schema,
              "core chi bookkeeping on non-core vertex " + vid);
      sum += c;
    }
    require(sum == core_charge.chi, Errc::Schema, "per-vertex core chi does not sum to core chi");
  }
  std::set<std::string> ids;
  auto check_at = [&](const std::string& at) {
    require(curve.has_marked_point(at) || curve.has_edge(at) || curve.has_vertex(at), Errc::Schema,
            "torsion record at unknown point " + at);
  };
  for (const auto& t : point_torsions) {
    require(ids.insert(t.id).second, Errc::Schema, "duplicate torsion record id " + t.id);
    check_at(t.at);
    require(t.charge.jl_beta == 0, Errc::Schema, "point torsion must have (J+L).beta = 0");
    require(t.charge.b_beta == 0, Errc::Schema, "point torsion must have B.beta = 0");
    require(t.charge.chi >= 1, Errc::Schema, "point torsion must have chi >= 1");
    // Relative torsion at a node forces fiber excess on the torsion-free part
    // there (the re-collapse identity caps the image defect below by 1).
    require(!curve.has_edge(t.at) || defect_of(t.at) >= 1, Errc::Schema,
            "point torsion at node " + t.at + " needs a positive flatness defect there");
  }
  std::set<std::string> vertical_sites;
  for (const auto& t : vertical_torsions) {
    require(ids.insert(t.id).second, Errc::Schema, "duplicate torsion record id " + t.id);
    check_at(t.at);
    require(t.charge.jl_beta > 0, Errc::Schema, "vertical torsion must have (J+L).beta > 0");
    require(t.charge.h_beta >= 1, Errc::Schema, "vertical torsion must have H.beta >= 1");
    require(vertical_sites.insert(t.at).second, Errc::Schema,
            "two vertical records share the point " + t.at);
  }
  for (const auto& t : point_torsions)
    require(!vertical_sites.count(t.at), Errc::Schema,
            "point torsion shares the point " + t.at + " with a vertical record");
  require(derived_total() == total_charge, Errc::Certificate,
          "ChargeLeak: core + fragments + torsion != total charge");
}

ChargeValue err_charge(const FMDatum& d) {
  ChargeDatum torsion;
  for (const auto& t : d.point_torsions) torsion = torsion + t.charge;
  for (const auto& t : d.vertical_torsions) torsion = torsion + t.charge;
  ChargeValue z = central_charge(torsion);
  int defects = 0;
  for (const auto& [eid, del] : d.edge_defects) defects += del;
  return z + ChargeValue{Rat(defects), Rat(0)};
}

bool is_flat(const FMDatum& d) { return err_charge(d).is_zero(); }

DefinityReport definity_check(const FMDatum& d) {
  ChargeValue e = err_charge(d);
  DefinityReport r;
  r.neg_im_nonneg = -e.im >= 0;
  r.im_zero_iff_no_vertical = (e.im == 0) == d.vertical_torsions.empty();
  r.integer_when_im_zero = e.im != 0 || (rat_is_integer(e.re) && e.re >= 0);
  return r;
}

bool lattice_membership(const std::vector<ChargeValue>& values, const ChargeValue& g1,
                        const ChargeValue& g2) {
  Rat det = g1.re * g2.im - g2.re * g1.im;
  require(det != 0, Errc::Domain, "no valid basis: generators are R-linearly dependent");
  for (const auto& v : values) {
    Rat a = (v.re * g2.im - g2.re * v.im) / det;
    Rat b = (g1.re * v.im - v.re * g1.im) / det;
    if (!rat_is_integer(a) || !rat_is_integer(b)) return false;
  }
  return true;
}

}  // namespace nsl
