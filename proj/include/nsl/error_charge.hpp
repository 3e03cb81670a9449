#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nsl/charge.hpp"
#include "nsl/curve_graph.hpp"
#include "nsl/sheaf_on_tree.hpp"

namespace nsl {

// A torsion record of the Fourier-Mukai datum, pinned to a point of the curve
// (a marked point, an edge/node, or an unspecified smooth point of a vertex).
struct TorsionRecord {
  std::string id;
  std::string at;
  ChargeDatum charge;
};

// Combinatorial Fourier-Mukai state: the current nodal curve with its
// stabilization bookkeeping, splitting-type data of the torsion-free
// relative-dimension-0 part on contracted tree regions, flatness defects at
// nodes, and the 0/1-dimensional vertical torsion records. The total charge is
// fixed at construction and conserved by every engine move.
struct FMDatum {
  CurveGraph curve;
  int rank = 1;
  std::set<std::string> contracted;                    // vertex ids of the unstable locus
  std::map<std::string, SplittingType> vertex_types;   // exactly the contracted vertices
  std::map<std::string, int> edge_defects;             // flatness defect per edge, 0..rank
  std::map<std::string, ChargeDatum> vertex_charges;   // fragment charge per contracted vertex
  std::map<std::string, long> core_chi;                // optional per-core-vertex chi bookkeeping
  ChargeDatum core_charge;                             // charge of the core tf part
  std::vector<TorsionRecord> point_torsions;           // jl = 0, chi >= 1
  std::vector<TorsionRecord> vertical_torsions;        // jl > 0
  ChargeDatum total_charge;                            // the conserved c

  void validate() const;

  int defect_of(const std::string& eid) const;
  bool is_constant_vertex(const std::string& vid) const;
  ChargeDatum vertex_charge(const std::string& vid) const;

  // Connected components of the contracted locus, smallest-id order.
  std::vector<Subcurve> contracted_regions() const;
  // The tf fragment on one region (internal edges carry their defects).
  SheafOnTree region_sheaf(const Subcurve& region) const;
  ChargeDatum region_charge(const Subcurve& region) const;

  // core + fragments + torsion records; must equal total_charge.
  ChargeDatum derived_total() const;
};

// Z(all torsion records) + total flatness defect.
ChargeValue err_charge(const FMDatum& d);

// err_charge == 0, equivalently: no torsion records and all defects zero.
bool is_flat(const FMDatum& d);

struct DefinityReport {
  bool neg_im_nonneg = false;
  bool im_zero_iff_no_vertical = false;
  bool integer_when_im_zero = false;
  bool all() const { return neg_im_nonneg && im_zero_iff_no_vertical && integer_when_im_zero; }
};

DefinityReport definity_check(const FMDatum& d);

// Every value is an integer combination of the two generators, which must be
// R-linearly independent as complex numbers.
bool lattice_membership(const std::vector<ChargeValue>& values, const ChargeValue& g1,
                        const ChargeValue& g2);

}  // namespace nsl
