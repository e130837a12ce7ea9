#ifndef BLOWUP_SYMPOLY_HPP
#define BLOWUP_SYMPOLY_HPP

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "blowup/rational.hpp"
#include "vendor_json_fwd.hpp"

namespace blowup {

// Named symbolic constant. The symbol universe is closed: Taylor
// coefficients C[k,j], the recentering amplitude A, the regime constant L
// and the refinement limit psi.
struct Symbol {
  enum class Kind : uint8_t { C, A, L, Psi };

  Kind kind = Kind::A;
  int k = 0;  // C only
  int j = 0;  // C only

  static Symbol C(int k, int j);
  static Symbol A() { return Symbol{Kind::A, 0, 0}; }
  static Symbol L() { return Symbol{Kind::L, 0, 0}; }
  static Symbol Psi() { return Symbol{Kind::Psi, 0, 0}; }

  auto operator<=>(const Symbol&) const = default;

  std::string name() const;               // "C[4,0]", "A", "L", "psi"
  static Symbol parse(const std::string&);
};

// Exponent vector, sorted by symbol; no zero exponents stored.
using Monomial = std::map<Symbol, int>;

// Sparse multivariate polynomial over the exact rationals. Canonical form:
// map keyed by exponent vector, no zero coefficients.
class SymPoly {
 public:
  SymPoly() = default;
  SymPoly(long value) : SymPoly(Rat(value)) {}  // NOLINT(runtime/explicit)
  SymPoly(const Rat& value);                    // NOLINT(runtime/explicit)
  SymPoly(const Symbol& s);                     // NOLINT(runtime/explicit)

  static SymPoly monomial(const Monomial& m, const Rat& coef);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Requires is_constant().
  Rat constant_value() const;

  SymPoly operator-() const;
  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  SymPoly& operator*=(const SymPoly& o) { return *this = *this * o; }
  SymPoly& operator*=(const Rat& c);
  bool operator==(const SymPoly&) const = default;

  SymPoly pow(unsigned e) const;

  // Replaces each bound symbol by its value; unbound symbols remain.
  SymPoly substitute(const std::map<Symbol, Rat>& bindings) const;

  int degree_in(const Symbol& s) const;
  // Smallest exponent of s over all monomials (content power); 0 if zero poly.
  int min_power(const Symbol& s) const;
  // Divides every monomial by s^e; requires min_power(s) >= e.
  SymPoly divided_by(const Symbol& s, int e) const;
  // Coefficient of s^e, as a polynomial in the remaining symbols.
  SymPoly coefficient_of(const Symbol& s, int e) const;
  bool contains(const Symbol& s) const { return degree_in(s) > 0; }

  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  std::string str() const;
  nlohmann::json to_json() const;
  static SymPoly from_json(const nlohmann::json&);

 private:
  std::map<Monomial, Rat> terms_;
};

}  // namespace blowup

#endif
