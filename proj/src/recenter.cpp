#include "blowup/recenter.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace blowup {

namespace {

double eval_hermite(int j, double x) {
  const auto& coeffs = hermite::coefficients(j);
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + it->get_d();
  return acc;
}

auto shape_key(const ScaleTerm& t) {
  return std::tie(t.rate, t.bnpow, t.spow, t.taupoly, t.taurate, t.apow);
}

void canonicalize(std::vector<ScaleTerm>& column) {
  std::stable_sort(column.begin(), column.end(),
                   [](const ScaleTerm& x, const ScaleTerm& y) {
                     return shape_key(x) < shape_key(y);
                   });
  std::vector<ScaleTerm> merged;
  for (auto& t : column) {
    if (t.coef.is_zero()) continue;
    if (!merged.empty() && shape_key(merged.back()) == shape_key(t)) {
      merged.back().coef += t.coef;
      if (merged.back().coef.is_zero()) merged.pop_back();
    } else {
      merged.push_back(std::move(t));
    }
  }
  column = std::move(merged);
}

}  // namespace

ScaleTerm ScaleTerm::bind(const Rat& theta, const Rat& alpha,
                          bool with_psi) const {
  ScaleTerm out = *this;
  if (bnpow == 0) return out;
  if (bnpow < 0) throw std::invalid_argument("negative Bn power");
  out.rate += theta * bnpow;
  out.spow += alpha * bnpow;
  out.apow += 2 * theta * bnpow;
  SymPoly factor =
      SymPoly(Symbol::L()).pow(static_cast<unsigned>(bnpow));
  if (with_psi)
    factor *= SymPoly(Symbol::Psi()).pow(static_cast<unsigned>(bnpow));
  out.coef *= factor;
  out.bnpow = 0;
  return out;
}

std::string ScaleTerm::str() const {
  std::ostringstream out;
  out << "(" << coef.str() << ")";
  if (apow != 0) out << " A^" << rat_str(apow);
  if (bnpow != 0) out << " Bn^" << bnpow;
  if (rate != 0) out << " e^{-" << rat_str(rate) << " sn}";
  if (spow != 0) out << " sn^" << rat_str(spow);
  if (taupoly != 0) out << " (sn+tau)^" << taupoly;
  if (taurate != 0) out << " e^{" << rat_str(taurate) << " tau}";
  return out.str();
}

nlohmann::json ScaleTerm::to_json() const {
  return {{"coef", coef.to_json()},   {"apow", rat_str(apow)},
          {"bnpow", bnpow},           {"rate", rat_str(rate)},
          {"spow", rat_str(spow)},    {"taurate", rat_str(taurate)},
          {"taupoly", taupoly}};
}

ModeTable mode_table(const AsymSeries& series, const ShiftSpec& shift,
                     const std::vector<ModeIndex>& modes) {
  ModeTable table;
  for (const auto& mode : modes) table[mode];  // keep requested columns
  for (const auto& [key, coef] : series.terms()) {
    const auto& [ord, src] = key;
    for (const auto& target : modes) {
      int m1 = src.a - target.a;
      int m2 = src.b - target.b;
      if (m1 < 0 || m2 < 0) continue;
      if (shift.dim1.zero && m1 != 0) continue;
      if (shift.dim2.zero && m2 != 0) continue;
      ScaleTerm t;
      t.coef = SymPoly(Rat(binomial(src.a, m1) * binomial(src.b, m2))) * coef;
      t.apow = m1 * shift.dim1.apow + m2 * shift.dim2.apow;
      t.bnpow = m1 * shift.dim1.bnpow + m2 * shift.dim2.bnpow;
      t.rate = rat(ord.k - 2, 2);
      t.taurate = rat(2 - ord.k, 2) + m1 * shift.dim1.taurate +
                  m2 * shift.dim2.taurate;
      t.taupoly = ord.i;
      if (shift.structured)
        t = t.bind(shift.structured->theta, shift.structured->alpha,
                   shift.structured->with_psi);
      table[target].push_back(std::move(t));
    }
  }
  for (auto& [mode, column] : table) canonicalize(column);
  return table;
}

ModeTable recenter(const AsymSeries& series, const ShiftSpec& shift) {
  int max_total = 0;
  for (const auto& [key, coef] : series.terms())
    max_total = std::max(max_total, key.second.total());
  std::vector<ModeIndex> modes;
  for (int a = 0; a <= max_total; ++a)
    for (int b = 0; a + b <= max_total; ++b) modes.push_back({a, b});
  return mode_table(series, shift, modes);
}

double evaluate_table(const ModeTable& table,
                      const std::map<Symbol, Rat>& bindings, double A,
                      double Bn, double sn, double tau, double y1, double y2) {
  double acc = 0.0;
  for (const auto& [mode, column] : table) {
    double hh = eval_hermite(mode.a, y1) * eval_hermite(mode.b, y2);
    for (const auto& t : column) {
      SymPoly bound = t.coef.substitute(bindings);
      if (!bound.is_constant())
        throw std::invalid_argument("unbound symbols in table coefficient");
      acc += bound.constant_value().get_d() * std::pow(A, t.apow.get_d()) *
             std::pow(Bn, t.bnpow) * std::exp(-t.rate.get_d() * sn) *
             std::pow(sn, t.spow.get_d()) * std::pow(sn + tau, t.taupoly) *
             std::exp(t.taurate.get_d() * tau) * hh;
    }
  }
  return acc;
}

ScaleTerm make_floor(const Rat& rate, const Rat& spow) {
  ScaleTerm f;
  f.coef = SymPoly(Rat(1));
  f.rate = rate;
  f.spow = spow;
  return f;
}

ScaleTerm remainder_floor(int M) { return make_floor(rat(M - 1, 2), 1); }

std::vector<CodominanceGroup> dominance_sort(
    const std::vector<ScaleTerm>& column, const Rat& theta, const Rat& alpha,
    const ScaleTerm& floor, bool with_psi) {
  std::map<std::pair<Rat, Rat>, std::vector<ScaleTerm>> grouped;
  Rat floor_rate = floor.rate;
  Rat floor_spow = floor.spow_at_tau0();
  for (const auto& raw : column) {
    ScaleTerm t = raw.bind(theta, alpha, with_psi);
    Rat spow0 = t.spow_at_tau0();
    bool dominates_floor =
        t.rate < floor_rate || (t.rate == floor_rate && spow0 > floor_spow);
    if (!dominates_floor) continue;
    // dominance order: smaller decay rate first, then larger sn-power
    grouped[{t.rate, -spow0}].push_back(std::move(t));
  }
  std::vector<CodominanceGroup> out;
  for (auto& [key, terms] : grouped)
    out.push_back({key.first, -key.second, std::move(terms)});
  return out;
}

ConstraintResult extract_constraint(const CodominanceGroup& group) {
  ConstraintResult res;
  bool have_apow = false;
  for (const auto& t : group.terms) {
    if (t.taurate > Rat(1, 2)) {
      res.artificial.push_back(t);
      continue;
    }
    if (t.taurate <= 0) {
      res.artificial.push_back(t);
      continue;
    }
    if (t.bnpow != 0)
      throw std::invalid_argument("constraint extraction needs bound terms");
    if (!have_apow) {
      res.common_apow = t.apow;
      have_apow = true;
    } else if (t.apow != res.common_apow) {
      throw std::invalid_argument(
          "codominance group mixes distinct A-powers");
    }
    res.poly += t.coef;
  }
  if (!have_apow)
    throw std::invalid_argument(
        "no growth-factor term in group: no constraint extractable");
  res.common_lpow = res.poly.min_power(Symbol::L());
  if (res.common_lpow > 0)
    res.poly = res.poly.divided_by(Symbol::L(), res.common_lpow);
  int ppow = res.poly.min_power(Symbol::Psi());
  if (ppow > 0) res.poly = res.poly.divided_by(Symbol::Psi(), ppow);
  res.justification =
      "growth factor e^{tau/2} on the dominant group forces its coefficient "
      "sum to vanish (contradiction with the uniform bound otherwise)";
  return res;
}

}  // namespace blowup
