#include <doctest.h>

#include "helpers.hpp"
#include "nsl/bounds_audit.hpp"
#include "nsl/state_gen.hpp"

using namespace nsl;
using namespace tst;

TEST_CASE("component bound: strict inequality against H.beta") {
  Scenario s;
  s.rank = 1;
  s.total_h_beta = 4;
  s.u_one_h_beta = {1, 1, 1};
  CHECK(check_component_bound(s).pass);
  s.u_one_h_beta = {1, 1, 1, 1};
  CHECK_FALSE(check_component_bound(s).pass);
  s.u_one_h_beta = {};
  CHECK(check_component_bound(s).pass);  // vacuous
  s.u_one_h_beta = {0};
  CHECK_THROWS_AS(check_component_bound(s), Error);
}

TEST_CASE("torsion bound: h0 arithmetic") {
  Scenario s;
  s.rank = 2;
  s.n_a = 1;
  // Fragment with h0 = 4: the documented two-component chain instance.
  std::map<std::string, SplittingType> types;
  types.emplace("v0", SplittingType({0, 1}));
  types.emplace("v1", SplittingType({0, 0}));
  s.u_a_fragment = SheafOnTree(path(2), 2, types, {{"ve0", 1}});
  s.l_torsion = 2;
  CHECK(check_torsion_bound(s).pass);  // 2 >= 4 - 2
  s.l_torsion = 1;
  CHECK_FALSE(check_torsion_bound(s).pass);
}

TEST_CASE("torsion bound: equality-or-better on an actual pendant collapse") {
  std::map<std::string, SplittingType> types;
  types.emplace("v0", SplittingType({1}));
  SheafOnTree frag(path(1), 1, types, {});
  PushforwardResult pf = pushforward_collapse(frag, {AttachKind::SmoothPoint, {0}});
  Scenario s;
  s.rank = 1;
  s.n_a = 1;
  s.u_a_fragment = frag;
  s.l_torsion = pf.torsion_length;
  CheckReport r = check_torsion_bound(s);
  CHECK(r.pass);
  CHECK(r.lhs == r.rhs);  // case (a) gives exact equality
}

TEST_CASE("delta bound") {
  Scenario s;
  s.rank = 2;
  s.core_node_count = 2;
  s.core_defects = {1, 2};
  CHECK(check_delta_bound(s).pass);  // 3 <= 4
  s.core_defects = {2, 2, 1};
  CHECK_FALSE(check_delta_bound(s).pass);
  s.core_defects = {0, 0};
  CHECK(check_delta_bound(s).pass);
  s.core_defects = {3};
  CHECK_THROWS_AS(check_delta_bound(s), Error);  // defect above rank is unconstructible
}

TEST_CASE("euler window") {
  Scenario s;
  s.rank = 2;
  s.attach_count = 1;
  s.chi_E_C0 = 5;
  s.chi_F_mod_torsion = 2;
  CHECK(check_euler_window(s).pass);  // 3 <= 4
  s.chi_F_mod_torsion = 0;
  CHECK_FALSE(check_euler_window(s).pass);  // 5 > 4
}

TEST_CASE("tree inequality: leaves outnumber branch vertices by two") {
  // Informational graph-level property used by the u_0 combinatorics.
  Rng rng(3030);
  for (int i = 0; i < 200; ++i) {
    SheafOnTree f = random_sheaf(rng, 6);
    const CurveGraph& t = f.tree();
    Subcurve all = whole(t);
    for (const auto& comp : subcurve_components(t, all)) {
      if (comp.vertices.size() < 2) continue;
      std::map<std::string, int> deg;
      for (const auto& eid : internal_edges(t, comp)) {
        deg[t.edge(eid).end0]++;
        deg[t.edge(eid).end1]++;
      }
      int leaves = 0, branches = 0;
      for (const auto& vid : comp.vertices) {
        if (deg[vid] <= 1) ++leaves;
        if (deg[vid] >= 3) ++branches;
      }
      CHECK(leaves >= branches + 2);
    }
  }
}

TEST_CASE("all four checks pass on engine-produced final states") {
  Rng rng(99887);
  for (int i = 0; i < 60; ++i) {
    FMDatum d = random_initial_state(rng);
    GreedyGenerator gen(static_cast<uint64_t>(1000 + i));
    RunResult r = run(d, gen);
    Scenario s = scenario_from_state(r.final);
    for (const auto& rep : audit_all(s)) {
      INFO(rep.name, " lhs=", rep.lhs, " rhs=", rep.rhs);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("scenario_from_state accounts intermediate states too") {
  Rng rng(112);
  for (int i = 0; i < 30; ++i) {
    FMDatum d = random_initial_state(rng);
    GreedyGenerator gen(static_cast<uint64_t>(i));
    RunResult r = run(d, gen);
    for (const auto& snap : r.history) {
      Scenario s = scenario_from_state({snap, {}});
      CHECK(check_component_bound(s).pass);
      CHECK(check_delta_bound(s).pass);
    }
  }
}
