#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsl/curve_graph.hpp"
#include "nsl/linalg.hpp"

namespace nsl {

// Multiset of twist degrees a_1 <= ... <= a_r of a rank-r bundle on P^1.
class SplittingType {
 public:
  explicit SplittingType(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int rank() const { return static_cast<int>(parts_.size()); }
  int degree() const;
  bool nonnegative() const { return parts_.front() >= 0; }
  bool positive_on_component() const { return nonnegative() && parts_.back() > 0; }
  bool trivial() const;  // all parts zero

  bool operator==(const SplittingType&) const = default;

 private:
  std::vector<int> parts_;  // sorted ascending, nonempty
};

enum class Positivity { NotNonnegative, Nonnegative, Positive, StrictlyPositive };
const char* to_string(Positivity p);

// Explicit gluing data across one node: codimension-delta subspace projections
// on both branches and the identification between them. Rows = r - delta.
struct EdgeGluing {
  RatMat pi_minus;  // (r-delta) x r
  RatMat pi_plus;   // (r-delta) x r
  RatMat iso;       // (r-delta) x (r-delta), invertible
};

// Splitting-type model of a nonnegative torsion-free sheaf on a P^1-tree:
// per-vertex splitting types, per-edge flatness defects 0 <= delta <= r.
// Torsion-free quotients on components are the stored splitting types; edge
// defects carry exactly the weighted-graph data.
class SheafOnTree {
 public:
  SheafOnTree(CurveGraph tree, int rank, std::map<std::string, SplittingType> vertex_types,
              std::map<std::string, int> edge_defects,
              std::map<std::string, EdgeGluing> gluing = {});

  const CurveGraph& tree() const { return tree_; }
  int rank() const { return rank_; }
  const SplittingType& type_of(const std::string& vid) const;
  int defect_of(const std::string& eid) const;
  const std::map<std::string, SplittingType>& vertex_types() const { return vertex_types_; }
  const std::map<std::string, int>& edge_defects() const { return edge_defects_; }
  const std::map<std::string, EdgeGluing>& gluing() const { return gluing_; }

  bool nonnegative() const;
  // Restriction to one connected component of the tree.
  SheafOnTree component(const Subcurve& comp) const;

 private:
  CurveGraph tree_;
  int rank_;
  std::map<std::string, SplittingType> vertex_types_;
  std::map<std::string, int> edge_defects_;
  std::map<std::string, EdgeGluing> gluing_;
};

int degree(const SheafOnTree& f);
int delta_flat_total(const SheafOnTree& f);

// r * |pi_0| + deg + delta_flat. Asserted only for nonnegative sheaves.
int h0(const SheafOnTree& f);

Positivity classify_positivity(const SheafOnTree& f);

// h0(f) - r * attach_points; may be negative, callers clamp.
int constrained_sections_lower_bound(const SheafOnTree& f, int attach_points);

enum class AttachKind { SmoothPoint, Node };

// Flatness defects of the ambient sheaf at the contact point(s) of one
// connected tree component: one value for a smooth image point, two for a
// node.
struct AttachContext {
  AttachKind kind;
  std::vector<int> boundary_defects;
};

struct PushforwardResult {
  int eta;            // deg + internal defects + boundary defects
  int torsion_length; // smooth point: eta; node: max(0, eta - r)
  std::optional<int> image_defect;  // node only: min(eta, r)
};

// Collapse arithmetic for one connected tree component carrying a nonnegative
// sheaf.
PushforwardResult pushforward_collapse(const SheafOnTree& component, const AttachContext& ctx);

// Returns -degree for a positive tree sheaf, checking the exact per-component
// identity (boundary + internal defects) - (image_defect + torsion) = -deg
// against pushforward_collapse; contexts are given per connected component in
// smallest-vertex-id order.
int delta_flat_change(const SheafOnTree& tree_part, const std::vector<AttachContext>& contexts);

}  // namespace nsl
