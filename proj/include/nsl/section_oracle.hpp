#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nsl/sheaf_on_tree.hpp"

namespace nsl {

// Independent section-space computation: builds explicit polynomial section
// spaces per component, imposes the codimension-delta matching condition at
// every node, and counts solution dimensions by exact rational rank. It never
// consults the closed-form h0.

struct OracleOptions {
  enum class Gluing { Canonical, Seeded };
  Gluing gluing = Gluing::Canonical;
  uint64_t seed = 0;
};

// dim of the global-section solution space.
int h0_oracle(const SheafOnTree& f, const OracleOptions& opts = {});

// Evaluation from the computed section space to each component fiber is
// surjective at a generic point (max rank over enough sample points to be
// provably generic).
bool is_globally_generated_oracle(const SheafOnTree& f, const OracleOptions& opts = {});

// dim of sections vanishing at one generic point on each listed vertex.
int constrained_sections_oracle(const SheafOnTree& f,
                                const std::vector<std::string>& vanish_vertices,
                                const OracleOptions& opts = {});

}  // namespace nsl
