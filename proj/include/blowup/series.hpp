#ifndef BLOWUP_SERIES_HPP
#define BLOWUP_SERIES_HPP

#include <map>
#include <string>

#include "blowup/hermite.hpp"
#include "blowup/sympoly.hpp"

namespace blowup {

// Hermite mode h_a(y1) h_b(y2); eigenvalue of the linearized flow is
// 1 - (a+b)/2.
struct ModeIndex {
  int a = 0;
  int b = 0;
  auto operator<=>(const ModeIndex&) const = default;
  int total() const { return a + b; }
  Rat eigenvalue() const { return rat(2 - a - b, 2); }
};

// Scale s^i e^{(1-k/2)s}; k counts exponential half-powers, i the secular
// power of s produced by resonances.
struct OrderIndex {
  int k = 0;
  int i = 0;
  auto operator<=>(const OrderIndex&) const = default;
  Rat exp_rate() const { return rat(2 - k, 2); }
};

// Finite formal series sum coeff * s^i e^{(1-k/2)s} h_a(y1) h_b(y2),
// truncated at exponential grade M. Pure value type.
class AsymSeries {
 public:
  using Key = std::pair<OrderIndex, ModeIndex>;

  explicit AsymSeries(int truncation_order = 0) : order_(truncation_order) {}

  int truncation_order() const { return order_; }
  bool empty() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Key, SymPoly>& terms() const { return terms_; }

  const SymPoly& coefficient(const OrderIndex& o, const ModeIndex& m) const;
  // Adds into the canonical map, dropping grades beyond M and zero results.
  void accumulate(const OrderIndex& o, const ModeIndex& m, const SymPoly& c);

  AsymSeries operator-() const;
  AsymSeries& operator+=(const AsymSeries& o);  // requires equal orders
  friend AsymSeries operator+(AsymSeries a, const AsymSeries& b) {
    return a += b;
  }
  bool operator==(const AsymSeries&) const = default;

  // Jet product: grades combine as k1+k2-2, s-powers add, Hermite factors
  // linearize per dimension; terms beyond the truncation order are dropped.
  friend AsymSeries multiply(const AsymSeries& u, const AsymSeries& v);

  // Residual of the flow: R(u) = d_s u - L u - u^2, truncated at M.
  friend AsymSeries apply_flow_residual(const AsymSeries& u);

  // All (k,i) coefficients of a given mode.
  std::map<OrderIndex, SymPoly> project(const ModeIndex& mode) const;

  // Floating-point evaluation at concrete constants (test/diagnostic only;
  // all symbols must be bound).
  double evaluate(const std::map<Symbol, Rat>& bindings, double y1, double y2,
                  double s) const;
  // Value of one mode coefficient function at time s.
  double evaluate_mode(const ModeIndex& mode,
                       const std::map<Symbol, Rat>& bindings, double s) const;

  std::string str() const;
  nlohmann::json to_json() const;
  static AsymSeries from_json(const nlohmann::json&);

 private:
  int order_;
  std::map<Key, SymPoly> terms_;
};

}  // namespace blowup

#endif
