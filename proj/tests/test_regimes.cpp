#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "blowup/regimes.hpp"

using namespace blowup;

namespace {

SymPoly sym(const char* name) { return SymPoly(Symbol::parse(name)); }

std::set<std::pair<Rat, Rat>> exponent_pairs(
    const std::vector<RegimeResult>& regimes) {
  std::set<std::pair<Rat, Rat>> out;
  for (const auto& r : regimes)
    if (r.origin != RegimeOrigin::subquadratic_excluded)
      out.insert({r.beta, r.alpha});
  return out;
}

}  // namespace

TEST_CASE("form validation: sign and degenerate directions") {
  FormValidation v1 = validate_form({4, {-1, 0, 0, 0, 0}});
  CHECK(v1.nonpositive);
  REQUIRE(v1.degenerate_directions.size() == 1);
  CHECK(v1.degenerate_directions[0].first == 0);
  CHECK(v1.degenerate_directions[0].second != 0);

  FormValidation v2 = validate_form({4, {-1, 2, -1, 0, 0}});
  CHECK(v2.nonpositive);
  REQUIRE(v2.degenerate_directions.size() == 2);
  bool axis = false, diagonal = false;
  for (const auto& d : v2.degenerate_directions) {
    if (d.first == 0) axis = true;
    if (d.first == d.second && d.first != 0) diagonal = true;
  }
  CHECK(axis);
  CHECK(diagonal);

  CHECK_FALSE(validate_form({4, {1, 0, 0, 0, 0}}).nonpositive);
  CHECK_THROWS(validate_form({4, {0, 0, 0, 0, 0}}));
}

TEST_CASE("candidate exponent enumeration for m = 6") {
  ExponentSets sets = exponent_sets(6);
  CHECK(sets.E1.count(rat(1, 6)) == 1);
  std::set<Rat> both;
  both.insert(sets.E1.begin(), sets.E1.end());
  both.insert(sets.E2.begin(), sets.E2.end());
  for (const Rat& v : {rat(1, 6), rat(1, 4), rat(1, 3)})
    CHECK(both.count(v) == 1);
  // window split at (m-2)/(2(m-1)) = 2/5
  for (const Rat& v : sets.E1) {
    CHECK(v >= 0);
    CHECK(v <= rat(2, 5));
  }
  for (const Rat& v : sets.E2) {
    CHECK(v >= rat(2, 5));
    CHECK(v <= rat(1, 2));
  }
  // secular-power crossings may be negative; only the window is unbounded
  CHECK_FALSE(sets.E3.empty());

  CHECK_THROWS(exponent_sets(4));
  CHECK_THROWS(exponent_sets(7));
}

TEST_CASE("order-4 cancelation chain constraints") {
  auto stages = m4_constraint_stages(default_provider());
  REQUIRE(stages.size() == 4);
  SymPoly L = sym("L");

  CHECK(stages[0].name == "quadratic-linear");
  CHECK(stages[0].constraint == SymPoly(2) * sym("C[4,2]") * L + sym("C[5,4]"));

  CHECK(stages[1].name == "quadratic-second");
  CHECK(stages[1].constraint == SymPoly(2) * sym("C[5,3]") * L + sym("C[6,5]"));

  CHECK(stages[2].name == "quadratic-cubic");
  CHECK(stages[2].constraint ==
        SymPoly(4) * sym("C[4,0]") * L * L * L +
            SymPoly(3) * sym("C[5,2]") * L * L +
            SymPoly(2) * sym("C[6,4]") * L + sym("C[7,6]"));

  CHECK(stages[3].name == "superquadratic");
  CHECK(stages[3].constraint ==
        SymPoly(4) * sym("C[4,0]") * L * L + SymPoly(2) * sym("C[5,3]"));
}

TEST_CASE("order-4 regimes, generic coefficients") {
  auto regimes = regime_search_m4(default_provider(), {});
  CHECK(exponent_pairs(regimes) ==
        std::set<std::pair<Rat, Rat>>{{rat(3, 2), 0}, {Rat(2), 0}});
  bool sub = false;
  for (const auto& r : regimes) {
    if (r.origin == RegimeOrigin::subquadratic_excluded) {
      sub = true;
      continue;
    }
    CHECK(r.root_status == RootStatus::symbolic);
    CHECK_FALSE(r.constraint.is_zero());
    if (r.beta == 2) CHECK(r.origin == RegimeOrigin::quadratic);
    if (r.beta == rat(3, 2)) CHECK(r.origin == RegimeOrigin::power_law);
  }
  CHECK(sub);
}

TEST_CASE("order-4 superquadratic branch under concrete coefficients") {
  RegimeConfig cfg;
  cfg.bindings = {{Symbol::C(4, 0), Rat(-1)}, {Symbol::C(5, 3), Rat(2)}};
  auto regimes = regime_search_m4(default_provider(), cfg);
  const RegimeResult* super = nullptr;
  for (const auto& r : regimes)
    if (r.beta == rat(3, 2)) super = &r;
  REQUIRE(super);
  CHECK(super->root_status == RootStatus::positive_root);
  REQUIRE(super->root.has_value());
  CHECK(*super->root == 1);  // L^2 = -C[5,3] / (2 C[4,0]) = 1

  cfg.bindings[Symbol::C(5, 3)] = Rat(-2);
  regimes = regime_search_m4(default_provider(), cfg);
  super = nullptr;
  for (const auto& r : regimes)
    if (r.beta == rat(3, 2)) super = &r;
  REQUIRE(super);
  CHECK(super->root_status == RootStatus::no_positive_root);
}

TEST_CASE("order-6 regimes") {
  auto regimes = regime_search_general(6, default_provider(), {});
  std::set<std::pair<Rat, Rat>> power;
  const RegimeResult* quad = nullptr;
  for (const auto& r : regimes) {
    if (r.origin == RegimeOrigin::power_law) power.insert({r.beta, r.alpha});
    if (r.origin == RegimeOrigin::quadratic) quad = &r;
  }
  CHECK(power == std::set<std::pair<Rat, Rat>>{
                     {rat(4, 3), 0}, {rat(3, 2), 0}, {rat(5, 3), 0}});
  REQUIRE(quad);
  CHECK(quad->constraint ==
        SymPoly(2) * sym("C[6,4]") * sym("L") + sym("C[7,6]"));
}

TEST_CASE("insufficient truncation override is a domain error") {
  RegimeConfig cfg;
  cfg.M_override = 7;
  CHECK_THROWS(regime_search_general(6, default_provider(), cfg));
}
