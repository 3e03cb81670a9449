#pragma once

#include <optional>
#include <vector>

#include "nsl/rational.hpp"

namespace nsl {

// Exact complex value of the twisted central charge.
struct ChargeValue {
  Rat re{0}, im{0};

  ChargeValue operator+(const ChargeValue& o) const { return {re + o.re, im + o.im}; }
  ChargeValue operator-(const ChargeValue& o) const { return {re - o.re, im - o.im}; }
  bool operator==(const ChargeValue& o) const { return re == o.re && im == o.im; }
  bool is_zero() const { return re == 0 && im == 0; }
};

// Pairing vector of a 1-dimensional sheaf datum: Euler characteristic and the
// three intersection pairings against beta-tilde.
struct ChargeDatum {
  long chi = 0;
  Rat b_beta{0};    // B . beta
  Rat jl_beta{0};   // (J+L) . beta, >= 0
  long h_beta = 0;  // H . beta, >= 0

  ChargeDatum() = default;
  ChargeDatum(long chi_, Rat b, Rat jl, long h);

  ChargeDatum operator+(const ChargeDatum& o) const;
  ChargeDatum operator-(const ChargeDatum& o) const;
  ChargeDatum scaled(long k) const;
  bool operator==(const ChargeDatum& o) const = default;
  bool is_zero() const { return chi == 0 && b_beta == 0 && jl_beta == 0 && h_beta == 0; }
};

// (chi - B.beta) - i (J+L).beta
ChargeValue central_charge(const ChargeDatum& d);

// Im z < 0, or Im z = 0 with Re z > 0.
bool in_H_minus(const ChargeValue& z);

// -Re z / Im z. Undefined for Im z = 0 (0-dimensional object).
Rat slope(const ChargeValue& z);

// Lexicographic strict order on (-Im, Re).
bool precedes(const ChargeValue& z1, const ChargeValue& z2);

enum class Verdict { Stable, StrictlySemistable, Unstable };
const char* to_string(Verdict v);

struct StabilityResult {
  Verdict verdict;
  std::optional<size_t> witness;  // index into the subobject list
};

// Verdict of the total datum against an explicitly declared candidate list of
// nonzero proper subobject data. 0-dimensional candidates (jl = 0) with
// positive chi destabilize (slope +infinity); zero-charge candidates are
// ignored.
StabilityResult stability_verdict(const ChargeDatum& total,
                                  const std::vector<ChargeDatum>& subobjects);

}  // namespace nsl
