#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsl/reduction_engine.hpp"

namespace nsl {

// Numeric summary of one boundedness scenario: the subcurve decomposition of
// the current curve into the core, the 0-dimensional bubbles (nonconstant and
// constant), and the vertical 1-dimensional bubbles, together with the
// pushforward torsion bookkeeping the inequalities consume.
struct Scenario {
  int rank = 1;
  long total_h_beta = 0;              // H . beta of the whole datum
  std::vector<long> u_one_h_beta;     // per vertical component, each >= 1
  int n_a = 0;                        // attach points of the u_a subtree
  int core_node_count = 0;            // edges of the stable core
  std::vector<int> core_defects;      // flatness defects on core nodes
  long l_torsion = 0;                 // length of F_torsion under stabilization
  long chi_E_C0 = 0;                  // chi of the core restriction
  long chi_F_mod_torsion = 0;         // chi(F / F_torsion)
  int attach_count = 0;               // |C'_0 cap C'_u|
  std::optional<SheafOnTree> u_a_fragment;  // sheaf on the nonconstant 0-dim bubbles
};

struct CheckReport {
  std::string name;
  bool pass = false;
  std::string lhs, rhs;
  std::string detail;
};

// #components(C'^(1)_u) < H.beta (strict).
CheckReport check_component_bound(const Scenario& s);
// l(F_torsion) >= h0(u_a fragment) - r * n_a.
CheckReport check_torsion_bound(const Scenario& s);
// sum of core defects <= r * core_node_count.
CheckReport check_delta_bound(const Scenario& s);
// |chi(E'|_{C'_0}) - chi(F/F_torsion)| <= 2 r |C'_0 cap C'_u|.
CheckReport check_euler_window(const Scenario& s);

std::vector<CheckReport> audit_all(const Scenario& s);

// Honest accounting over a reduction state: classifies contracted vertices by
// fragment charge and splitting, derives the pushforward torsion through
// pushforward_collapse per region, and fills the Euler bookkeeping from the
// conserved charges.
Scenario scenario_from_state(const ReductionState& state);

}  // namespace nsl
