#include <doctest.h>

#include "helpers.hpp"
#include "nsl/error_charge.hpp"
#include "nsl/state_gen.hpp"

using namespace nsl;
using namespace tst;

namespace {

// Minimal genus-2 core with one marked point and one bridging edge to decorate.
FMDatum base_datum() {
  FMDatum d;
  d.rank = 2;
  d.curve = CurveGraph({V("c0", 1), V("c1", 1)}, {E("ce0", "c0", "c1")}, {{"m0", "c0"}});
  d.core_charge = ChargeDatum(3, Rat(0), Rat(2), 1);
  d.total_charge = d.core_charge;
  return d;
}

}  // namespace

TEST_CASE("err charge: flat datum is zero") {
  FMDatum d = base_datum();
  d.validate();
  CHECK(err_charge(d).is_zero());
  CHECK(is_flat(d));
}

TEST_CASE("err charge: point torsion plus defects is real") {
  FMDatum d = base_datum();
  d.point_torsions.push_back({"pt0", "m0", ChargeDatum(2, Rat(0), Rat(0), 0)});
  d.edge_defects["ce0"] = 2;
  d.rank = 2;
  // One more defect via a second node.
  d.curve = CurveGraph({V("c0", 1), V("c1", 1)},
                       {E("ce0", "c0", "c1"), E("ce1", "c0", "c1")}, {{"m0", "c0"}});
  d.edge_defects["ce1"] = 1;
  d.total_charge = d.derived_total();
  d.validate();
  ChargeValue e = err_charge(d);
  CHECK(e.re == 5);
  CHECK(e.im == 0);
  CHECK_FALSE(is_flat(d));
}

TEST_CASE("err charge: vertical torsion contributes the imaginary part") {
  FMDatum d = base_datum();
  d.vertical_torsions.push_back({"vt0", "m0", ChargeDatum(0, Rat(0), Rat(1), 1)});
  d.total_charge = d.derived_total();
  d.validate();
  ChargeValue e = err_charge(d);
  CHECK(e.re == 0);
  CHECK(e.im == -1);
  CHECK_FALSE(is_flat(d));
}

TEST_CASE("err = 0 iff flat, two-sided on generated data") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    FMDatum d = random_initial_state(rng);
    bool zero = err_charge(d).is_zero();
    bool structurally_flat = d.point_torsions.empty() && d.vertical_torsions.empty();
    for (const auto& [eid, del] : d.edge_defects) structurally_flat &= del == 0;
    CHECK(zero == structurally_flat);
    CHECK(zero == is_flat(d));
  }
}

TEST_CASE("err decomposes additively over the torsion / torsion-free split") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    FMDatum d = random_initial_state(rng);
    FMDatum torsion_part = d;
    torsion_part.edge_defects.clear();
    FMDatum tf_part = d;
    tf_part.point_torsions.clear();
    tf_part.vertical_torsions.clear();
    // Conservation is beside the point here; only the err arithmetic matters.
    ChargeValue whole = err_charge(d);
    CHECK(whole == err_charge(torsion_part) + err_charge(tf_part));
  }
}

TEST_CASE("definity laws") {
  FMDatum flat = base_datum();
  DefinityReport r0 = definity_check(flat);
  CHECK(r0.all());

  FMDatum with_vertical = base_datum();
  with_vertical.vertical_torsions.push_back({"vt0", "m0", ChargeDatum(1, Rat(0), Rat(2), 1)});
  with_vertical.total_charge = with_vertical.derived_total();
  DefinityReport r1 = definity_check(with_vertical);
  CHECK(r1.neg_im_nonneg);
  CHECK(r1.im_zero_iff_no_vertical);
  CHECK(-err_charge(with_vertical).im > 0);

  FMDatum real_only = base_datum();
  real_only.point_torsions.push_back({"pt0", "m0", ChargeDatum(3, Rat(0), Rat(0), 0)});
  real_only.edge_defects["ce0"] = 1;
  real_only.total_charge = real_only.derived_total();
  DefinityReport r2 = definity_check(real_only);
  CHECK(r2.all());
  CHECK(rat_is_integer(err_charge(real_only).re));

  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    FMDatum d = random_initial_state(rng);
    CHECK(definity_check(d).all());
  }
}

TEST_CASE("lattice membership") {
  ChargeValue one{Rat(1), Rat(0)};
  ChargeValue minus_i{Rat(0), Rat(-1)};
  CHECK(lattice_membership({{Rat(0), Rat(0)}}, one, minus_i));
  CHECK(lattice_membership({{Rat(3), Rat(-2)}, {Rat(-1), Rat(5)}}, one, minus_i));
  CHECK_FALSE(lattice_membership({{rat_frac(1, 2), Rat(0)}}, one, minus_i));
  // Third-integer imaginary unit.
  ChargeValue third{Rat(0), rat_frac(-1, 3)};
  CHECK(lattice_membership({{Rat(2), rat_frac(-4, 3)}}, one, third));
  CHECK_FALSE(lattice_membership({{Rat(2), rat_frac(-1, 2)}}, one, third));
  // Degenerate basis is rejected.
  CHECK_THROWS_AS(lattice_membership({}, one, ChargeValue{Rat(2), Rat(0)}), Error);
}

TEST_CASE("datum validation catches structural and conservation errors") {
  FMDatum d = base_datum();
  d.total_charge = ChargeDatum(99, Rat(0), Rat(2), 1);
  CHECK_THROWS_AS(d.validate(), Error);

  FMDatum bad_site = base_datum();
  bad_site.point_torsions.push_back({"pt0", "nowhere", ChargeDatum(1, Rat(0), Rat(0), 0)});
  bad_site.total_charge = bad_site.derived_total();
  CHECK_THROWS_AS(bad_site.validate(), Error);

  // Contracted locus must be an admissible tree of genus-0 vertices.
  FMDatum bad_contract = base_datum();
  bad_contract.contracted.insert("c0");
  bad_contract.vertex_types.emplace("c0", SplittingType({0, 0}));
  CHECK_THROWS_AS(bad_contract.validate(), Error);

  // Constant vertices carry zero charge.
  FMDatum d2 = base_datum();
  d2.curve = CurveGraph({V("c0", 1), V("c1", 1), V("t0")},
                        {E("ce0", "c0", "c1"), E("te0", "t0", "c0")}, {{"m0", "c0"}});
  d2.contracted.insert("t0");
  d2.vertex_types.emplace("t0", SplittingType({0, 0}));
  d2.vertex_charges["t0"] = ChargeDatum(1, Rat(0), Rat(0), 0);
  d2.total_charge = d2.derived_total();
  CHECK_THROWS_AS(d2.validate(), Error);
}
