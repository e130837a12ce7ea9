#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blowup/expander.hpp"

using namespace blowup;

namespace {

// Substitute x(s) = sum a_p s^p e^{mu s} back into x' = lambda x + f and
// return the coefficients of the defect, which must all vanish.
std::vector<SymPoly> ode_defect(
    const Rat& lambda, const Rat& mu,
    const std::vector<std::pair<int, SymPoly>>& forcing,
    const std::vector<std::pair<int, SymPoly>>& particular) {
  int top = 0;
  for (const auto& [p, c] : particular) top = std::max(top, p);
  for (const auto& [p, c] : forcing) top = std::max(top, p);
  std::vector<SymPoly> a(static_cast<std::size_t>(top) + 2), defect(
      static_cast<std::size_t>(top) + 1);
  for (const auto& [p, c] : particular) a[static_cast<std::size_t>(p)] += c;
  for (int p = 0; p <= top; ++p) {
    defect[static_cast<std::size_t>(p)] =
        SymPoly(mu - lambda) * a[static_cast<std::size_t>(p)] +
        SymPoly(Rat(p + 1)) * a[static_cast<std::size_t>(p) + 1];
  }
  for (const auto& [p, c] : forcing)
    defect[static_cast<std::size_t>(p)] -= c;
  return defect;
}

}  // namespace

TEST_CASE("non-resonant mode ODE solution satisfies the equation") {
  SymPoly c0(Symbol::C(4, 0)), c1(Symbol::C(5, 3)), c2(rat(7, 3));
  std::vector<std::pair<int, SymPoly>> forcing{{0, c0}, {1, c1}, {3, c2}};
  auto sol = ode_particular(rat(1, 2), forcing, rat(-3, 2));
  CHECK_FALSE(sol.resonant);
  for (const SymPoly& d :
       ode_defect(rat(1, 2), rat(-3, 2), forcing, sol.particular))
    CHECK(d.is_zero());
}

TEST_CASE("constant forcing divides by the spectral gap") {
  auto sol = ode_particular(Rat(1), {{0, SymPoly(6)}}, Rat(-2));
  REQUIRE(sol.particular.size() == 1);
  CHECK(sol.particular[0].first == 0);
  CHECK(sol.particular[0].second == SymPoly(-2));  // 6 / (-2 - 1)
}

TEST_CASE("resonant forcing integrates to secular powers") {
  SymPoly c0(Symbol::C(4, 0)), c2(3);
  auto sol = ode_particular(Rat(-1), {{0, c0}, {2, c2}}, Rat(-1));
  CHECK(sol.resonant);
  REQUIRE(sol.particular.size() == 2);
  CHECK(sol.particular[0] == std::pair<int, SymPoly>{1, c0});
  CHECK(sol.particular[1] == std::pair<int, SymPoly>{3, SymPoly(1)});
}

TEST_CASE("single-direction seed reproduces the first quadratic correction") {
  Seed seed;
  seed.m = 4;
  seed.leading[0] = SymPoly(Symbol::C(4, 0));
  for (int j = 0; j <= 5; ++j) seed.zero_set.insert({5, j});
  for (int j = 0; j <= 6; ++j) seed.zero_set.insert({6, j});
  AsymSeries s = expand(seed, 6);

  SymPoly c2 = SymPoly(Symbol::C(4, 0)) * SymPoly(Symbol::C(4, 0));
  CHECK(s.coefficient({4, 0}, {4, 0}) == SymPoly(Symbol::C(4, 0)));
  // h_4^2 = 384 h_0 + 768 h_2 + 288 h_4 + 32 h_6 + h_8, each mode solved
  // against the grade-6 rate e^{-2s}.
  CHECK(s.coefficient({6, 0}, {0, 0}) == c2 * SymPoly(-128));
  CHECK(s.coefficient({6, 0}, {2, 0}) == c2 * SymPoly(-384));
  CHECK(s.coefficient({6, 0}, {4, 0}) == c2 * SymPoly(-288));
  CHECK(s.coefficient({6, 1}, {6, 0}) == c2 * SymPoly(32));  // resonant
  CHECK(s.coefficient({6, 0}, {8, 0}) == c2);
  CHECK(s.term_count() == 6);
}

TEST_CASE("first forced grade is secular only at resonant modes") {
  // At grade 2m-2 the quadratic forcing carries no s-powers yet, so a
  // secular term there can only come from the resonant mode ODE (a+b = k).
  // Beyond that grade, polynomial forcing spreads s-powers to non-resonant
  // modes too.
  for (int m : {4, 6}) {
    AsymSeries s = expand(Seed{m, {}, {}}, 2 * m - 2);
    bool found = false;
    for (const auto& [key, c] : s.terms())
      if (key.first.i > 0) {
        CHECK(key.second.total() == key.first.k);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("expansion solves the flow to its truncation order") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Seed seed;
    seed.m = 4 + 2 * static_cast<int>(rng() % 2);
    int M = seed.m + 1 + static_cast<int>(rng() % 5);
    if (rng() % 2)
      for (int j = 0; j <= seed.m; ++j)
        if (rng() % 2)
          seed.leading[j] = SymPoly(rat(static_cast<long>(rng() % 9) - 4));
    bool any = false;
    for (const auto& [j, c] : seed.leading) any = any || !c.is_zero();
    if (!seed.leading.empty() && !any) seed.leading.clear();
    for (int k = seed.m + 1; k <= M; ++k)
      for (int j = 0; j <= k; ++j)
        if (rng() % 3 == 0) seed.zero_set.insert({k, j});
    CHECK(apply_flow_residual(expand(seed, M)).empty());
  }
}

TEST_CASE("seed validation") {
  Seed odd;
  odd.m = 5;
  CHECK_THROWS(expand(odd, 8));
  Seed low;
  low.m = 4;
  CHECK_THROWS(expand(low, 3));
  Seed empty_seed;
  empty_seed.m = 4;
  for (int j = 0; j <= 4; ++j) empty_seed.zero_set.insert({4, j});
  CHECK_THROWS(expand(empty_seed, 6));
}
