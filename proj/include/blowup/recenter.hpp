#ifndef BLOWUP_RECENTER_HPP
#define BLOWUP_RECENTER_HPP

#include <optional>
#include <string>
#include <vector>

#include "blowup/series.hpp"

namespace blowup {

// One dimension of the recentering shift b e^{s/2}: amplitude
// A^apow * Bn^bnpow * e^{taurate*tau} (or exactly zero).
struct ShiftDim {
  bool zero = false;
  int apow = 0;
  int bnpow = 0;
  Rat taurate = 0;
  auto operator<=>(const ShiftDim&) const = default;
};

// Optional structured substitution Bn = L * A^{2 theta} * e^{-theta sn}
// * sn^alpha (* psi).
struct StructuredBn {
  Rat theta;
  Rat alpha;
  bool with_psi = false;
};

struct ShiftSpec {
  ShiftDim dim1, dim2;
  std::optional<StructuredBn> structured;

  // (A*Bn*e^{tau/2}, A*e^{tau/2})
  static ShiftSpec canonical() {
    return {{false, 1, 1, Rat(1, 2)}, {false, 1, 0, Rat(1, 2)}, {}};
  }
  // (0, A): translation along the second axis only, no tau factor.
  static ShiftSpec axis2() { return {{true, 0, 0, 0}, {false, 1, 0, 0}, {}}; }
  static ShiftSpec zero() { return {{true, 0, 0, 0}, {true, 0, 0, 0}, {}}; }
};

// One entry of a recentered mode table:
//   coef * A^apow * Bn^bnpow * e^{-rate*sn} * sn^spow * (sn+tau)^taupoly
//        * e^{taurate*tau}.
// Before binding, rate/spow/apow hold only their theta/alpha-free parts and
// bnpow carries the theta (resp. alpha) multiplier. bind() substitutes the
// structured Bn: rate += theta*bnpow, spow += alpha*bnpow,
// apow += 2*theta*bnpow, coef *= L^bnpow (psi^bnpow), bnpow -> 0.
struct ScaleTerm {
  SymPoly coef;
  Rat apow = 0;
  int bnpow = 0;
  Rat rate = 0;
  Rat spow = 0;
  Rat taurate = 0;
  int taupoly = 0;

  ScaleTerm bind(const Rat& theta, const Rat& alpha, bool with_psi) const;
  // Effective sn-power for comparisons at tau = 0.
  Rat spow_at_tau0() const { return spow + taupoly; }
  std::string str() const;
  nlohmann::json to_json() const;
};

using ModeTable = std::map<ModeIndex, std::vector<ScaleTerm>>;

// Projection of the recentered series onto the given target modes. Each
// Hermite factor is translated by the per-dimension shift amplitude and
// e^{(1-k/2)s} is rewritten with s = sn + tau. If shift.structured is set,
// the returned terms are already bound.
ModeTable mode_table(const AsymSeries& series, const ShiftSpec& shift,
                     const std::vector<ModeIndex>& modes);

// mode_table over every mode of the recentered series (total degree up to
// the maximum present in the input).
ModeTable recenter(const AsymSeries& series, const ShiftSpec& shift);

// Floating-point evaluation of a table column sum (shadow testing).
double evaluate_table(const ModeTable& table,
                      const std::map<Symbol, Rat>& bindings, double A,
                      double Bn, double sn, double tau, double y1, double y2);

// Terms sharing one (rate, spow) pair after binding; candidates for a
// vanishing-sum constraint.
struct CodominanceGroup {
  Rat rate;
  Rat spow;
  std::vector<ScaleTerm> terms;
};

// Truncation remainder scale sn^spow * e^{-rate*sn}.
ScaleTerm make_floor(const Rat& rate, const Rat& spow);
// Default floor for a series truncated at grade M: sn * e^{-(M-1)/2 sn}.
ScaleTerm remainder_floor(int M);

// Binds theta/alpha into every term, keeps the ones strictly dominating the
// floor, groups by equal (rate, spow) and orders groups by dominance
// (smaller rate first; at equal rate, larger sn-power first).
std::vector<CodominanceGroup> dominance_sort(const std::vector<ScaleTerm>& column,
                                             const Rat& theta, const Rat& alpha,
                                             const ScaleTerm& floor,
                                             bool with_psi = false);

struct ConstraintResult {
  SymPoly poly;       // vanishing sum, common A- and L-powers removed
  Rat common_apow;    // A-power shared by the group (divided out)
  int common_lpow;    // L-power divided out of the sum
  std::vector<ScaleTerm> artificial;  // tau-growth beyond e^{tau/2}, excluded
  std::string justification;
};

// Sum of the group's coefficients with Bn already rewritten in L; terms whose
// tau-rate exceeds 1/2 are excluded and flagged. Throws if no term carries a
// genuine growth factor (taurate in (0, 1/2]).
ConstraintResult extract_constraint(const CodominanceGroup& group);

}  // namespace blowup

#endif
