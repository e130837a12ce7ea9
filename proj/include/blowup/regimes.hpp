#ifndef BLOWUP_REGIMES_HPP
#define BLOWUP_REGIMES_HPP

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blowup/expander.hpp"
#include "blowup/recenter.hpp"

namespace blowup {

// The order-m form sum_j C[m,j] x1^{m-j} x2^j with exact rational
// coefficients (index j = power of x2).
struct FormSpec {
  int m = 4;
  std::vector<Rat> coeffs;  // size m+1
};

struct FormValidation {
  bool nonpositive = false;
  // Real zero directions (x1, x2) of the form, scaled to integers.
  std::vector<std::pair<mpz_class, mpz_class>> degenerate_directions;
};

// Decides nonpositivity of the form on the plane (exact sign analysis of the
// dehomogenized univariate polynomial) and lists its real zero directions.
// Throws on the all-zero form.
FormValidation validate_form(const FormSpec& form);

struct ExponentSets {
  std::set<Rat> E1, E2, E3;
  // max secular s-power per grade, from the expansion's resonance bookkeeping
  std::map<int, int> resonance_powers;
};

// Candidate-exponent enumeration for even m >= 6: E1/E2 collect the decay-rate
// crossing values (k'-k)/(2[(k-j)-(k'-j')]) over the stated index ranges,
// clipped to [0,(m-2)/(2(m-1))] and [(m-2)/(2(m-1)),1/2]; E3 collects the
// secular-power crossings (i'-i)/[(k-j)-(k'-j')] up to grade 2m-2.
ExponentSets exponent_sets(int m);

enum class RegimeOrigin { subquadratic_excluded, quadratic, power_law };
enum class RootStatus { symbolic, positive_root, no_positive_root };

struct RegimeResult {
  Rat beta;   // a_{n,1} ~ L a_{n,2}^beta |log a_{n,2}|^alpha
  Rat alpha;
  SymPoly constraint;  // polynomial in L whose vanishing defines L
  RegimeOrigin origin = RegimeOrigin::power_law;
  std::string note;
  RootStatus root_status = RootStatus::symbolic;
  std::optional<Rat> root;  // exact positive root when rational
  double root_approx = 0.0;
};

struct RegimeConfig {
  Rat delta0 = Rat(1, 100);       // growth threshold of the exclusion argument
  std::optional<int> M_override;  // truncation override for the searches
  std::map<Symbol, Rat> bindings;  // concrete values for C[k,j]
};

using ExpansionProvider = std::function<AsymSeries(const Seed&, int)>;
ExpansionProvider default_provider();

// One step of the dominance cascade: at fixed (theta, alpha), repeatedly zero
// the free constant of any singleton dominant group on the expanding columns;
// fail on a protected (grade-m form coefficient) singleton; succeed when a
// dominant group yields a >= 2-monomial constraint.
struct CascadeOutcome {
  bool success = false;
  SymPoly constraint;
  std::set<std::pair<int, int>> zeroed;  // deductions made along the way
  std::string note;
};
CascadeOutcome run_cascade(const AsymSeries& series, int m, const Rat& theta,
                           const Rat& alpha, const ScaleTerm& floor,
                           const std::map<Symbol, Rat>& bindings);

// The m=4 classification: superquadratic power-law branch (beta = 3/2),
// quadratic branch (beta = 2, constraint depending on the cancelation chain)
// and the unconstrained subquadratic marker.
std::vector<RegimeResult> regime_search_m4(const ExpansionProvider& provider,
                                           const RegimeConfig& config);

// The m >= 6 search over theta in (E1 u E2) n (0,1/2) and alpha in {0} u E3,
// plus the quadratic and subquadratic markers.
std::vector<RegimeResult> regime_search_general(
    int m, const ExpansionProvider& provider, const RegimeConfig& config);

// The four named m=4 constraint stages, generically (no bindings):
// quadratic linear, quadratic second chain, quadratic cubic, superquadratic.
struct M4Stage {
  std::string name;
  SymPoly constraint;
};
std::vector<M4Stage> m4_constraint_stages(const ExpansionProvider& provider);

}  // namespace blowup

#endif
