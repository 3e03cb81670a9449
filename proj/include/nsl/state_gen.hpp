#pragma once

#include "nsl/error_charge.hpp"
#include "nsl/rng.hpp"

namespace nsl {

// Seeded initial states for the reduction engine: a small stable genus-2 core,
// optional constant bubbles, flatness defects, point torsion, and vertical
// torsion. Charges are consistent by construction (total = derived).
struct GenOptions {
  int max_vertical = 3;    // number of vertical records; -Im Err stays <= max_im
  int max_im = 5;
  int max_real = 20;       // budget for defects + point torsion + vertical chi
  int jl_denominator = 1;  // vertical jl values are multiples of 1/q
  int max_rank = 3;
};

FMDatum random_initial_state(Rng& rng, const GenOptions& opt = {});

}  // namespace nsl
