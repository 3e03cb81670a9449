#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "nsl/error_charge.hpp"
#include "nsl/rng.hpp"

namespace nsl {

// Inserted bubble: a connected genus-0 tree with splitting data, internal
// defects, and the defects carried by the new attach edges.
struct PayloadTree {
  CurveGraph tree;
  std::vector<std::string> attach;              // 1 (point site) or 2 (edge site) vertices
  std::map<std::string, SplittingType> types;   // every payload vertex
  std::map<std::string, int> internal_defects;  // payload edges
  std::vector<int> contact_defects;             // one per attach edge
  std::string charge_vertex;                    // receives the transferred charge
};

// Resolve one vertical-torsion record by bubbling: the record's charge moves
// into the new tree's tf fragment, minus declared residual records.
struct MoveC1 {
  std::string record_id;
  PayloadTree payload;
  std::vector<TorsionRecord> residual_points;      // at payload vertices
  std::optional<TorsionRecord> residual_vertical;  // at a payload vertex
};

// Resolve a flatness defect and/or point torsion at a site by bubbling with a
// positive tree. Site records may be absorbed (re-collapse must regenerate
// them) or migrated onto payload vertices.
struct MoveC2 {
  std::string site;  // marked-point id, edge id, or vertex id
  PayloadTree payload;
  long ker_chi = 0;  // declared chi(Ker alpha)
  std::vector<std::pair<std::string, std::string>> migrations;  // record id -> payload vertex
};

// Collapse an admissible constant tree inside the contracted locus.
struct MoveD {
  Subcurve target;
};

using Move = std::variant<MoveC1, MoveC2, MoveD>;

struct TraceStep {
  std::string kind;  // "c1" | "c2" | "d"
  std::string site;
  ChargeValue err_before, err_after;
  std::string certificate;
};

struct ReductionState {
  FMDatum datum;
  std::vector<TraceStep> trace;
};

ReductionState apply_c1(const ReductionState& s, const MoveC1& m);
ReductionState apply_c2(const ReductionState& s, const MoveC2& m);
ReductionState apply_d(const ReductionState& s, const MoveD& m);
ReductionState apply_move(const ReductionState& s, const Move& m);

// Number of contracted constant components with fewer than three special
// points; the d-phase runs until it is zero.
int collapsible_constant_count(const FMDatum& d);
int constant_vertex_count(const FMDatum& d);

enum class Phase { C1, C2, D, Done };
Phase phase_of(const FMDatum& d);

class MoveSupplier {
 public:
  virtual ~MoveSupplier() = default;
  virtual std::optional<Move> next(const FMDatum& d) = 0;
};

// Default automation: absorbs one site per step with a single-vertex bubble,
// lowest point id first; fully deterministic for a fixed seed.
class GreedyGenerator : public MoveSupplier {
 public:
  explicit GreedyGenerator(uint64_t seed) : rng_(seed) {}
  std::optional<Move> next(const FMDatum& d) override;

 private:
  std::string fresh_vertex(const FMDatum& d);
  Rng rng_;
  int counter_ = 0;
};

struct RunResult {
  ReductionState final;
  int steps = 0;
  std::vector<FMDatum> history;  // initial state plus one snapshot per step
};

// Executes the c.1 -> c.2 -> d phases until flat and condition-(3) clean.
// Throws Stuck when the supplier runs dry with work remaining and Certificate
// on any violated move certificate or phase-discipline breach.
RunResult run(const FMDatum& initial, MoveSupplier& gen);

struct TypeVerdict {
  StabilityResult stability;                     // condition (1), vs declared candidates
  bool condition2 = false;                       // fragment nonnegativity
  bool condition3 = false;                       // >= 3 special points on constant bubbles
  std::vector<std::string> condition3_violations;
  bool accepted() const { return stability.verdict != Verdict::Unstable && condition2 && condition3; }
};

// Definition-of-type checks on a final (flat) state. With
// strong_condition2=false only vertices carrying nonzero fragment charge are
// required to be nonnegative.
TypeVerdict validate_semistable_type(const ReductionState& final_state,
                                     const std::vector<ChargeDatum>& destabilizers,
                                     bool strong_condition2 = true);

}  // namespace nsl
