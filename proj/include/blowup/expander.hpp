#ifndef BLOWUP_EXPANDER_HPP
#define BLOWUP_EXPANDER_HPP

#include <set>
#include <utility>
#include <vector>

#include "blowup/series.hpp"

namespace blowup {

// Leading data for the iterative expansion: profile order m (even, >= 4),
// the grade-m coefficients, and the set of free constants pinned to zero by
// cancelation results fed in from the regime pipeline.
struct Seed {
  int m = 4;
  // j -> coefficient of h_{m-j}(y1) h_j(y2); defaults to the symbol C[m,j]
  // when absent and not zeroed.
  std::map<int, SymPoly> leading;
  // (k,j) pairs whose free constants are constrained to 0.
  std::set<std::pair<int, int>> zero_set;

  bool zeroed(int k, int j) const { return zero_set.count({k, j}) != 0; }
};

// Particular solution of one mode ODE x' = lambda x + (sum c_i s^i) e^{mu s}.
struct ModeODESolution {
  std::vector<std::pair<int, SymPoly>> particular;  // (s-power, coefficient)
  bool resonant = false;
};

// Exact integration of the mode ODE. Non-resonant (mu != lambda): downward
// recursion a_p = (c_p - (p+1) a_{p+1})/(mu - lambda). Resonant: each
// c_i s^i integrates to c_i s^{i+1}/(i+1).
ModeODESolution ode_particular(const Rat& lambda,
                               const std::vector<std::pair<int, SymPoly>>& forcing,
                               const Rat& mu);

// Iterative expansion to grade M: per grade, project the quadratic forcing
// onto each mode, solve the mode ODE with lambda = 1-(a+b)/2 and
// mu = 1-k/2 (resonant exactly when a+b = k), then append the homogeneous
// free constants C[k,j] not pinned by the zero set.
AsymSeries expand(const Seed& seed, int M);

}  // namespace blowup

#endif
