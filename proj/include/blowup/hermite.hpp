#ifndef BLOWUP_HERMITE_HPP
#define BLOWUP_HERMITE_HPP

#include <map>
#include <vector>

#include "blowup/rational.hpp"
#include "blowup/sympoly.hpp"

namespace blowup {

// One-dimensional calculus of the rescaled Hermite polynomials h_j under the
// Gaussian weight rho(xi) = exp(-xi^2/4)/sqrt(4 pi):
//
//   h_j(xi) = sum_{i=0}^{[j/2]} j!/(i!(j-2i)!) (-1)^i xi^{j-2i},
//   int h_l h_j rho = 2^j j! delta_{lj}.
//
// All values are exact rationals; results are memoized up to a degree cap
// (default 64, overridable via BLOWUPLAB_DEGREE_CAP) since the series
// expander calls them densely. The memo tables are write-once and the
// functions are safe to call concurrently.
namespace hermite {

// Dense coefficient list, index = monomial degree in xi.
using DensePoly = std::vector<Rat>;

int degree_cap();

// Monomial coefficients of h_j, lowest degree first; degree exactly j,
// parity of the polynomial equals the parity of j.
const DensePoly& coefficients(int j);

// Squared weighted norm ||h_j||^2 = 2^j j!.
Rat norm_sq(int j);

// Linearization h_a h_b = sum_n c_n h_n; keys n = a+b-2r for
// 0 <= r <= min(a,b), with c_{a+b-2r} = r! binom(a,r) binom(b,r) 2^r.
const std::map<int, Rat>& product(int a, int b);

// Triple-product constant gamma_{l,m,n} = int h_l h_m k_n rho with
// k_n = h_n/||h_n||^2; zero when any index is negative.
Rat gamma(int l, int m, int n);

// Expansion of h_j(xi + shift) in the h basis:
// { j-m -> binom(j,m) shift^m, m = 0..j }.
std::map<int, SymPoly> translate(int j, const SymPoly& shift);

// Moment of the 1-D weight: int xi^n rho(xi) dxi, i.e. (n-1)!! 2^{n/2} for
// even n and 0 for odd n. Exact integration oracle used by the tests.
Rat weight_moment(int n);

}  // namespace hermite
}  // namespace blowup

#endif
