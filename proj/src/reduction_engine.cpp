#include "nsl/reduction_engine.hpp"

#include <algorithm>

namespace nsl {

namespace {

// Marked-point, edge, or vertex site; vertex sites get a fresh marked point.
struct ResolvedSite {
  CurveGraph curve;
  InsertSite site;
};

ResolvedSite resolve_site(const CurveGraph& curve, const std::string& at) {
  if (curve.has_marked_point(at))
    return {curve, {InsertSite::Kind::AtMarkedPoint, at}};
  if (curve.has_edge(at)) return {curve, {InsertSite::Kind::AtEdge, at}};
  require(curve.has_vertex(at), Errc::Domain, "site " + at + " is not a point of the curve");
  int n = 0;
  for (const auto& m : curve.marked_points())
    if (m.vertex == at) ++n;
  std::string mid = "mp@" + at + "#" + std::to_string(n);
  require(!curve.has_marked_point(mid), Errc::Domain, "marked-point id clash at " + mid);
  std::vector<MarkedPoint> ms(curve.marked_points());
  ms.push_back({mid, at});
  CurveGraph g(std::vector<Vertex>(curve.vertices()), std::vector<Edge>(curve.edges()),
               std::move(ms));
  return {std::move(g), {InsertSite::Kind::AtMarkedPoint, mid}};
}

// Attach-edge ids insert_tree will mint for this site.
std::vector<std::string> new_attach_edge_ids(const InsertSite& site) {
  if (site.kind == InsertSite::Kind::AtMarkedPoint) return {"e:" + site.id};
  return {site.id + ":a", site.id + ":b"};
}

void check_payload(const FMDatum& d, const PayloadTree& p, const InsertSite& site) {
  size_t want = site.kind == InsertSite::Kind::AtMarkedPoint ? 1 : 2;
  require(p.attach.size() == want, Errc::Certificate,
          "payload attach arity does not match the site kind");
  require(p.contact_defects.size() == want, Errc::Certificate,
          "payload needs one contact defect per attach edge");
  for (int c : p.contact_defects)
    require(0 <= c && c <= d.rank, Errc::Certificate, "contact defect out of range");
  require(p.tree.component_count() == 1, Errc::Certificate, "payload tree must be connected");
  for (const auto& v : p.tree.vertices()) {
    auto it = p.types.find(v.id);
    require(it != p.types.end() && it->second.rank() == d.rank, Errc::Certificate,
            "payload splitting data must cover every vertex at rank r");
    require(it->second.nonnegative(), Errc::Certificate,
            "payload splitting types must be nonnegative");
  }
  require(p.tree.has_vertex(p.charge_vertex), Errc::Certificate,
          "payload charge vertex must belong to the payload tree");
}

SheafOnTree payload_sheaf(const FMDatum& d, const PayloadTree& p) {
  std::map<std::string, SplittingType> types(p.types.begin(), p.types.end());
  std::map<std::string, int> defects(p.internal_defects.begin(), p.internal_defects.end());
  return SheafOnTree(p.tree, d.rank, std::move(types), std::move(defects));
}

// Grafts the payload into the datum at a resolved site: curve surgery plus
// splitting/defect bookkeeping. Torsion records and charges are the caller's
// business.
FMDatum graft(const FMDatum& d, const CurveGraph& resolved_curve, const InsertSite& site,
              const PayloadTree& p) {
  FMDatum nd = d;
  nd.curve = insert_tree(resolved_curve, site, p.tree, p.attach);
  for (const auto& v : p.tree.vertices()) {
    nd.contracted.insert(v.id);
    nd.vertex_types.emplace(v.id, p.types.at(v.id));
  }
  for (const auto& [eid, del] : p.internal_defects)
    if (del != 0) nd.edge_defects[eid] = del;
  if (site.kind == InsertSite::Kind::AtEdge) nd.edge_defects.erase(site.id);
  auto ids = new_attach_edge_ids(site);
  for (size_t i = 0; i < ids.size(); ++i)
    if (p.contact_defects[i] != 0) nd.edge_defects[ids[i]] = p.contact_defects[i];
  return nd;
}

ReductionState with_step(const ReductionState& s, FMDatum next, TraceStep step) {
  next.validate();
  ReductionState out{std::move(next), s.trace};
  out.trace.push_back(std::move(step));
  return out;
}

}  // namespace

ReductionState apply_c1(const ReductionState& s, const MoveC1& m) {
  const FMDatum& d = s.datum;
  ChargeValue before = err_charge(d);

  auto rec = std::find_if(d.vertical_torsions.begin(), d.vertical_torsions.end(),
                          [&](const TorsionRecord& t) { return t.id == m.record_id; });
  require(rec != d.vertical_torsions.end(), Errc::Domain,
          "no vertical torsion record " + m.record_id);
  for (const auto& t : d.point_torsions)
    require(t.at != rec->at, Errc::Domain, "site " + rec->at + " hosts other records");
  for (const auto& t : d.vertical_torsions)
    require(t.id == rec->id || t.at != rec->at, Errc::Domain,
            "site " + rec->at + " hosts other records");

  ResolvedSite rs = resolve_site(d.curve, rec->at);
  check_payload(d, m.payload, rs.site);
  if (rs.site.kind == InsertSite::Kind::AtEdge) {
    // The site node disappears; its flatness defect must be relocated onto
    // the new contact nodes, not dropped.
    int carried = m.payload.contact_defects[0] + m.payload.contact_defects[1];
    require(carried == d.defect_of(rs.site.id), Errc::Certificate,
            "c1 payload must carry the site defect onto the contact nodes");
  }

  ChargeDatum residual_sum;
  for (const auto& r : m.residual_points) {
    require(m.payload.tree.has_vertex(r.at), Errc::Certificate,
            "residual point record must sit on a payload vertex");
    residual_sum = residual_sum + r.charge;
  }
  if (m.residual_vertical) {
    require(m.payload.tree.has_vertex(m.residual_vertical->at), Errc::Certificate,
            "residual vertical record must sit on a payload vertex");
    residual_sum = residual_sum + m.residual_vertical->charge;
  }
  require(rec->charge.jl_beta - residual_sum.jl_beta > 0, Errc::Certificate,
          "NoDecrease: payload transfers no (J+L).beta off the vertical record");
  ChargeDatum transferred = rec->charge - residual_sum;  // ctor re-checks signs

  FMDatum nd = graft(d, rs.curve, rs.site, m.payload);
  nd.vertical_torsions.erase(
      std::remove_if(nd.vertical_torsions.begin(), nd.vertical_torsions.end(),
                     [&](const TorsionRecord& t) { return t.id == m.record_id; }),
      nd.vertical_torsions.end());
  for (const auto& r : m.residual_points) nd.point_torsions.push_back(r);
  if (m.residual_vertical) nd.vertical_torsions.push_back(*m.residual_vertical);
  nd.vertex_charges[m.payload.charge_vertex] =
      nd.vertex_charge(m.payload.charge_vertex) + transferred;

  ChargeValue after = err_charge(nd);
  require(-after.im < -before.im, Errc::Certificate,
          "NoDecrease: -Im Err did not strictly drop");
  return with_step(s, std::move(nd),
                   {"c1", rec->at, before, after,
                    "-Im " + rat_str(-before.im) + " -> " + rat_str(-after.im)});
}

ReductionState apply_c2(const ReductionState& s, const MoveC2& m) {
  const FMDatum& d = s.datum;
  ChargeValue before = err_charge(d);
  require(before.im == 0, Errc::Certificate, "PhaseError: -Im Err must be 0 for a c.2 step");
  require(before.re > 0, Errc::Certificate, "PhaseError: Err must be positive for a c.2 step");
  require(m.ker_chi >= 0, Errc::Domain, "declared ker_chi must be nonnegative");

  int site_defect = d.curve.has_edge(m.site) ? d.defect_of(m.site) : 0;
  std::vector<const TorsionRecord*> site_records;
  for (const auto& t : d.point_torsions)
    if (t.at == m.site) site_records.push_back(&t);
  require(site_defect > 0 || !site_records.empty(), Errc::Domain,
          "site " + m.site + " has neither a flatness defect nor point torsion");

  ResolvedSite rs = resolve_site(d.curve, m.site);
  check_payload(d, m.payload, rs.site);
  SheafOnTree frag = payload_sheaf(d, m.payload);
  Positivity cls = classify_positivity(frag);
  require(cls == Positivity::Positive || cls == Positivity::StrictlyPositive, Errc::Certificate,
          "NotPositivePayload: payload sheaf must be positive");

  // Split site records into migrated and absorbed.
  std::map<std::string, std::string> migrate(m.migrations.begin(), m.migrations.end());
  ChargeDatum absorbed;
  long absorbed_chi = 0;
  for (const TorsionRecord* t : site_records) {
    auto it = migrate.find(t->id);
    if (it == migrate.end()) {
      absorbed = absorbed + t->charge;
      absorbed_chi += t->charge.chi;
    } else {
      require(m.payload.tree.has_vertex(it->second), Errc::Certificate,
              "migration target must be a payload vertex");
    }
  }
  for (const auto& [rid, tgt] : migrate) {
    bool at_site = std::any_of(site_records.begin(), site_records.end(),
                               [&](const TorsionRecord* t) { return t->id == rid; });
    require(at_site, Errc::Domain, "migration of record " + rid + " not at the site");
  }

  // Round trip: collapsing the payload back must regenerate the absorbed
  // records and the site defect.
  AttachContext ctx;
  ctx.kind = rs.site.kind == InsertSite::Kind::AtEdge ? AttachKind::Node : AttachKind::SmoothPoint;
  ctx.boundary_defects = m.payload.contact_defects;
  PushforwardResult pf = pushforward_collapse(frag, ctx);
  require(pf.torsion_length == absorbed_chi, Errc::Certificate,
          "RoundTripMismatch: re-collapse torsion length != absorbed point torsion");
  if (ctx.kind == AttachKind::Node)
    require(pf.image_defect.value() == site_defect, Errc::Certificate,
            "RoundTripMismatch: re-collapse image defect != site defect");

  FMDatum nd = graft(d, rs.curve, rs.site, m.payload);
  nd.point_torsions.erase(
      std::remove_if(nd.point_torsions.begin(), nd.point_torsions.end(),
                     [&](const TorsionRecord& t) {
                       return t.at == m.site && !migrate.count(t.id);
                     }),
      nd.point_torsions.end());
  for (auto& t : nd.point_torsions) {
    auto it = migrate.find(t.id);
    if (it != migrate.end()) t.at = it->second;
  }
  nd.vertex_charges[m.payload.charge_vertex] =
      nd.vertex_charge(m.payload.charge_vertex) + absorbed;

  ChargeValue after = err_charge(nd);
  ChargeValue drop = before - after;
  long expected = m.ker_chi + degree(frag);
  require(drop.im == 0 && drop.re == expected, Errc::Certificate,
          "ArithmeticMismatch: Err dropped by " + rat_str(drop.re) + ", expected " +
              std::to_string(expected));
  require(drop.re > 0, Errc::Certificate, "ArithmeticMismatch: Err must strictly decrease");
  return with_step(s, std::move(nd),
                   {"c2", m.site, before, after,
                    "Err -" + std::to_string(expected) + " (ker_chi " +
                        std::to_string(m.ker_chi) + ", deg " + std::to_string(degree(frag)) + ")"});
}

ReductionState apply_d(const ReductionState& s, const MoveD& m) {
  const FMDatum& d = s.datum;
  ChargeValue before = err_charge(d);
  require(before.is_zero(), Errc::Certificate, "NonzeroErr: d step requires Err = 0");
  for (const auto& vid : m.target.vertices) {
    require(d.contracted.count(vid), Errc::Certificate,
            "NotAdmissible: target vertex " + vid + " is not in the contracted locus");
    require(d.is_constant_vertex(vid), Errc::Certificate,
            "NotConstant: vertex " + vid + " carries a nontrivial splitting");
  }
  require(is_admissible_tree(d.curve, m.target), Errc::Certificate,
          "NotAdmissible: target is not an admissible P^1-tree");

  int constants_before = constant_vertex_count(d);
  int genus_before = d.curve.genus();
  CollapseResult cr = collapse(d.curve, m.target);

  FMDatum nd = d;
  nd.curve = cr.graph;
  for (const auto& vid : m.target.vertices) {
    nd.contracted.erase(vid);
    nd.vertex_types.erase(vid);
    nd.vertex_charges.erase(vid);
  }
  std::erase_if(nd.edge_defects, [&](const auto& kv) { return !nd.curve.has_edge(kv.first); });

  ChargeValue after = err_charge(nd);
  require(after.is_zero(), Errc::Certificate, "d step must leave Err = 0");
  require(nd.curve.genus() == genus_before, Errc::Certificate, "d step must preserve genus");
  int constants_after = constant_vertex_count(nd);
  require(constants_after < constants_before, Errc::Certificate,
          "d step must strictly reduce the constant-component count");
  std::string site = *m.target.vertices.begin();
  return with_step(s, std::move(nd),
                   {"d", site, before, after,
                    "constants " + std::to_string(constants_before) + " -> " +
                        std::to_string(constants_after)});
}

ReductionState apply_move(const ReductionState& s, const Move& m) {
  if (std::holds_alternative<MoveC1>(m)) return apply_c1(s, std::get<MoveC1>(m));
  if (std::holds_alternative<MoveC2>(m)) return apply_c2(s, std::get<MoveC2>(m));
  return apply_d(s, std::get<MoveD>(m));
}

int constant_vertex_count(const FMDatum& d) {
  int n = 0;
  for (const auto& vid : d.contracted)
    if (d.is_constant_vertex(vid)) ++n;
  return n;
}

int collapsible_constant_count(const FMDatum& d) {
  int n = 0;
  for (const auto& vid : d.contracted)
    if (d.is_constant_vertex(vid) && d.curve.special_points(vid) < 3) ++n;
  return n;
}

Phase phase_of(const FMDatum& d) {
  ChargeValue e = err_charge(d);
  if (-e.im > 0) return Phase::C1;
  if (e.re > 0) return Phase::C2;
  if (collapsible_constant_count(d) > 0) return Phase::D;
  return Phase::Done;
}

std::string GreedyGenerator::fresh_vertex(const FMDatum& d) {
  for (;;) {
    std::string id = "u" + std::to_string(++counter_);
    if (!d.curve.has_vertex(id)) return id;
  }
}

std::optional<Move> GreedyGenerator::next(const FMDatum& d) {
  Phase ph = phase_of(d);
  if (ph == Phase::Done) return std::nullopt;

  auto single_vertex_payload = [&](const std::string& vid, int top_degree, size_t arity) {
    PayloadTree p;
    std::vector<int> parts(static_cast<size_t>(d.rank), 0);
    parts.back() = top_degree;
    p.tree = CurveGraph({{vid, 0, std::nullopt}}, {}, {});
    p.attach.assign(arity, vid);
    p.types.emplace(vid, SplittingType(parts));
    p.contact_defects.assign(arity, 0);
    p.charge_vertex = vid;
    return p;
  };

  if (ph == Phase::C1) {
    const TorsionRecord* pick = nullptr;
    for (const auto& t : d.vertical_torsions)
      if (!pick || std::make_pair(t.at, t.id) < std::make_pair(pick->at, pick->id)) pick = &t;
    MoveC1 mv;
    mv.record_id = pick->id;
    bool edge_site = d.curve.has_edge(pick->at);
    mv.payload = single_vertex_payload(fresh_vertex(d), 1, edge_site ? 2 : 1);
    if (edge_site) mv.payload.contact_defects = {d.defect_of(pick->at), 0};
    return Move{std::move(mv)};
  }

  if (ph == Phase::C2) {
    // Sites in id order: edges with defects and at-points of point torsion.
    std::set<std::string> sites;
    for (const auto& [eid, del] : d.edge_defects)
      if (del > 0) sites.insert(eid);
    for (const auto& t : d.point_torsions) sites.insert(t.at);
    const std::string site = *sites.begin();
    int site_defect = d.curve.has_edge(site) ? d.defect_of(site) : 0;
    long site_chi = 0;
    std::vector<std::string> site_record_ids;
    for (const auto& t : d.point_torsions)
      if (t.at == site) {
        site_chi += t.charge.chi;
        site_record_ids.push_back(t.id);
      }

    MoveC2 mv;
    mv.site = site;
    size_t arity = d.curve.has_edge(site) ? 2 : 1;
    std::string vid = fresh_vertex(d);
    if (arity == 2 && site_defect > 0 && site_chi > 0 && site_defect < d.rank) {
      // Mixed node site: absorb the defect, migrate the records onto the
      // bubble; later steps absorb them at their new smooth homes.
      mv.payload = single_vertex_payload(vid, site_defect, 2);
      for (const auto& rid : site_record_ids) mv.migrations.emplace_back(rid, vid);
    } else if (arity == 2) {
      int deg = site_defect == d.rank ? d.rank + static_cast<int>(site_chi) : site_defect;
      mv.payload = single_vertex_payload(vid, deg, 2);
    } else {
      mv.payload = single_vertex_payload(vid, static_cast<int>(site_chi), 1);
    }
    return Move{std::move(mv)};
  }

  // Phase D: the maximal admissible constant subtree around the smallest
  // collapsible constant vertex; single-vertex fallback when the subtree has
  // too many attachments.
  std::optional<std::string> pick;
  for (const auto& vid : d.contracted)
    if (d.is_constant_vertex(vid) && d.curve.special_points(vid) < 3)
      if (!pick || vid < *pick) pick = vid;
  Subcurve constants;
  for (const auto& vid : d.contracted)
    if (d.is_constant_vertex(vid)) constants.vertices.insert(vid);
  MoveD mv;
  mv.target.vertices = {*pick};
  for (const auto& comp : subcurve_components(d.curve, constants))
    if (comp.vertices.count(*pick) && is_admissible_tree(d.curve, comp)) mv.target = comp;
  return Move{std::move(mv)};
}

RunResult run(const FMDatum& initial, MoveSupplier& gen) {
  initial.validate();
  RunResult res;
  res.final.datum = initial;
  res.history.push_back(initial);
  const ChargeDatum want_total = initial.total_charge;
  constexpr int kStepBudget = 100000;

  for (;;) {
    Phase ph = phase_of(res.final.datum);
    if (ph == Phase::Done) break;
    std::optional<Move> mv = gen.next(res.final.datum);
    require(mv.has_value(), Errc::Stuck, "StuckState: move supplier exhausted with Err != 0");
    // Phase discipline: the supplied move kind must match the phase.
    Phase want = std::holds_alternative<MoveC1>(*mv)   ? Phase::C1
                 : std::holds_alternative<MoveC2>(*mv) ? Phase::C2
                                                       : Phase::D;
    require(want == ph, Errc::Certificate, "PhaseError: move kind does not match the phase");
    res.final = apply_move(res.final, *mv);
    require(res.final.datum.total_charge == want_total, Errc::Certificate,
            "ChargeLeak: total charge changed along the trace");
    res.history.push_back(res.final.datum);
    ++res.steps;
    require(res.steps <= kStepBudget, Errc::Certificate,
            "step budget exceeded; supplier violates the lattice decrease discipline");
  }
  return res;
}

TypeVerdict validate_semistable_type(const ReductionState& final_state,
                                     const std::vector<ChargeDatum>& destabilizers,
                                     bool strong_condition2) {
  const FMDatum& d = final_state.datum;
  require(err_charge(d).is_zero(), Errc::Domain,
          "type validation requires a flat final state (Err = 0)");

  TypeVerdict v;
  if (destabilizers.empty())
    v.stability = {Verdict::Stable, std::nullopt};  // vacuous over no declared candidates
  else
    v.stability = stability_verdict(d.total_charge, destabilizers);

  v.condition2 = true;
  for (const auto& [vid, t] : d.vertex_types) {
    if (!strong_condition2 && d.vertex_charge(vid).is_zero()) continue;
    if (!t.nonnegative()) v.condition2 = false;
  }

  v.condition3 = true;
  for (const auto& vid : d.contracted)
    if (d.is_constant_vertex(vid) && d.curve.special_points(vid) < 3) {
      v.condition3 = false;
      v.condition3_violations.push_back(vid);
    }
  std::sort(v.condition3_violations.begin(), v.condition3_violations.end());
  return v;
}

}  // namespace nsl
