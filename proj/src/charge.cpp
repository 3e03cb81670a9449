#include "nsl/charge.hpp"

#include "nsl/errors.hpp"

namespace nsl {

ChargeDatum::ChargeDatum(long chi_, Rat b, Rat jl, long h)
    : chi(chi_), b_beta(std::move(b)), jl_beta(std::move(jl)), h_beta(h) {
  require(jl_beta >= 0, Errc::Schema, "(J+L).beta must be nonnegative");
  require(h_beta >= 0, Errc::Schema, "H.beta must be nonnegative");
  require(jl_beta != 0 || h_beta == 0, Errc::Schema,
          "0-dimensional datum ((J+L).beta = 0) must have H.beta = 0");
}

ChargeDatum ChargeDatum::operator+(const ChargeDatum& o) const {
  return ChargeDatum(chi + o.chi, b_beta + o.b_beta, jl_beta + o.jl_beta, h_beta + o.h_beta);
}

ChargeDatum ChargeDatum::operator-(const ChargeDatum& o) const {
  return ChargeDatum(chi - o.chi, b_beta - o.b_beta, jl_beta - o.jl_beta, h_beta - o.h_beta);
}

ChargeDatum ChargeDatum::scaled(long k) const {
  require(k > 0, Errc::Domain, "datum scaling needs a positive integer");
  return ChargeDatum(chi * k, b_beta * k, jl_beta * k, h_beta * k);
}

ChargeValue central_charge(const ChargeDatum& d) {
  return {Rat(d.chi) - d.b_beta, -d.jl_beta};
}

bool in_H_minus(const ChargeValue& z) { return z.im < 0 || (z.im == 0 && z.re > 0); }

Rat slope(const ChargeValue& z) {
  require(z.im != 0, Errc::Domain, "ZeroImaginary: slope undefined for 0-dimensional charge");
  return -z.re / z.im;
}

bool precedes(const ChargeValue& z1, const ChargeValue& z2) {
  if (-z1.im != -z2.im) return -z1.im < -z2.im;
  return z1.re < z2.re;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::StrictlySemistable: return "StrictlySemistable";
    case Verdict::Unstable: return "Unstable";
  }
  return "?";
}

StabilityResult stability_verdict(const ChargeDatum& total,
                                  const std::vector<ChargeDatum>& subobjects) {
  require(total.jl_beta > 0, Errc::Domain,
          "stability verdict needs a 1-dimensional total datum ((J+L).beta > 0)");
  require(!subobjects.empty(), Errc::Domain, "stability verdict needs declared subobjects");
  Rat mu_total = slope(central_charge(total));

  std::optional<size_t> equal_witness;
  for (size_t i = 0; i < subobjects.size(); ++i) {
    const ChargeDatum& s = subobjects[i];
    require(!(s == total), Errc::Domain, "subobject must be proper (datum != total)");
    if (s.jl_beta == 0) {
      require(s.b_beta == 0, Errc::Domain, "0-dimensional subobject must have B.beta = 0");
      require(s.chi >= 0, Errc::Domain, "0-dimensional subobject with negative chi");
      if (s.chi == 0) continue;             // zero charge: ignored
      return {Verdict::Unstable, i};        // slope +infinity
    }
    Rat mu = slope(central_charge(s));
    if (mu > mu_total) return {Verdict::Unstable, i};
    if (mu == mu_total && !equal_witness) equal_witness = i;
  }
  if (equal_witness) return {Verdict::StrictlySemistable, equal_witness};
  return {Verdict::Stable, std::nullopt};
}

}  // namespace nsl
