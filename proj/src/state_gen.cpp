#include "nsl/state_gen.hpp"

namespace nsl {

FMDatum random_initial_state(Rng& rng, const GenOptions& opt) {
  FMDatum d;
  d.rank = rng.range(1, opt.max_rank);

  std::vector<Vertex> vs;
  std::vector<Edge> es;
  std::vector<MarkedPoint> ms;
  switch (rng.below(5)) {
    case 0: vs = {{"c0", 2, std::nullopt}}; break;
    case 1:
      vs = {{"c0", 1, std::nullopt}, {"c1", 1, std::nullopt}};
      es = {{"ce0", "c0", "c1"}};
      break;
    case 2:
      vs = {{"c0", 0, std::nullopt}};
      es = {{"ce0", "c0", "c0"}, {"ce1", "c0", "c0"}};
      break;
    case 3:
      vs = {{"c0", 0, std::nullopt}, {"c1", 0, std::nullopt}};
      es = {{"ce0", "c0", "c1"}, {"ce1", "c0", "c1"}, {"ce2", "c0", "c1"}};
      break;
    default:
      vs = {{"c0", 1, std::nullopt}, {"c1", 0, std::nullopt}};
      es = {{"ce0", "c0", "c1"}, {"ce1", "c1", "c1"}};
      break;
  }
  std::vector<std::string> core_ids;
  for (const auto& v : vs) core_ids.push_back(v.id);
  auto random_core = [&] { return core_ids[static_cast<size_t>(rng.below(int(core_ids.size())))]; };

  // Constant bubbles left over from stabilization: pendant or bridging, one or
  // two vertices each.
  std::vector<int> zero_parts(static_cast<size_t>(d.rank), 0);
  int n_regions = rng.below(3);
  for (int k = 0; k < n_regions; ++k) {
    std::string a = "t" + std::to_string(k) + "a";
    vs.push_back({a, 0, std::nullopt});
    d.contracted.insert(a);
    d.vertex_types.emplace(a, SplittingType(zero_parts));
    bool two_vertex = rng.coin();
    std::string last = a;
    if (two_vertex) {
      std::string b = "t" + std::to_string(k) + "b";
      vs.push_back({b, 0, std::nullopt});
      d.contracted.insert(b);
      d.vertex_types.emplace(b, SplittingType(zero_parts));
      es.push_back({"ti" + std::to_string(k), a, b});
      last = b;
    }
    es.push_back({"ta" + std::to_string(k), a, random_core()});
    if (rng.coin()) es.push_back({"tb" + std::to_string(k), last, random_core()});
  }

  int re_left = opt.max_real;

  // Point-torsion sites: marked points on core vertices.
  int n_points = rng.below(3);
  for (int i = 0; i < n_points && re_left > 0; ++i) {
    std::string mid = "m" + std::to_string(i);
    ms.push_back({mid, random_core()});
    long chi = rng.range(1, std::min(3, re_left));
    d.point_torsions.push_back({"pt" + std::to_string(i), mid, ChargeDatum(chi, 0, 0, 0)});
    re_left -= static_cast<int>(chi);
  }

  // Vertical torsion at its own marked points; jl in (1/q)Z.
  int q = opt.jl_denominator;
  int im_units_left = opt.max_im * q;
  int n_vert = rng.below(opt.max_vertical + 1);
  for (int i = 0; i < n_vert && im_units_left > 0; ++i) {
    std::string mid = "w" + std::to_string(i);
    ms.push_back({mid, random_core()});
    int units = rng.range(1, std::min(2 * q, im_units_left));
    long chi = re_left > 0 ? rng.range(0, std::min(2, re_left)) : 0;
    d.vertical_torsions.push_back(
        {"vt" + std::to_string(i), mid, ChargeDatum(chi, 0, rat_frac(units, q), rng.range(1, 2))});
    im_units_left -= units;
    re_left -= static_cast<int>(chi);
  }

  d.curve = CurveGraph(std::move(vs), std::move(es), std::move(ms));

  // Flatness defects on up to three nodes.
  std::vector<std::string> eids;
  for (const auto& e : d.curve.edges()) eids.push_back(e.id);
  int n_def = eids.empty() ? 0 : rng.below(4);
  for (int i = 0; i < n_def && re_left > 0; ++i) {
    const std::string& eid = eids[static_cast<size_t>(rng.below(int(eids.size())))];
    if (d.edge_defects.count(eid)) continue;
    int delta = rng.range(1, std::min(d.rank, re_left));
    d.edge_defects[eid] = delta;
    re_left -= delta;
  }

  d.core_charge = ChargeDatum(rng.range(2, 8), Rat(rng.range(0, 2)), Rat(rng.range(1, 4)),
                              rng.range(1, 3));
  d.total_charge = d.derived_total();
  d.validate();
  return d;
}

}  // namespace nsl
