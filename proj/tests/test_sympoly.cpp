#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blowup/sympoly.hpp"

using namespace blowup;

namespace {

SymPoly random_poly(std::mt19937& rng) {
  std::vector<Symbol> pool{Symbol::C(4, 0), Symbol::C(5, 3), Symbol::A(),
                           Symbol::L()};
  SymPoly p;
  int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (const Symbol& s : pool)
      if (rng() % 2) m[s] = 1 + static_cast<int>(rng() % 3);
    long num = static_cast<long>(rng() % 19) - 9;
    long den = 1 + static_cast<long>(rng() % 9);
    p += SymPoly::monomial(m, rat(num, den));
  }
  return p;
}

}  // namespace

TEST_CASE("symbol names round-trip") {
  for (const Symbol& s : {Symbol::C(4, 0), Symbol::C(12, 7), Symbol::A(),
                          Symbol::L(), Symbol::Psi()})
    CHECK(Symbol::parse(s.name()) == s);
  CHECK(Symbol::C(4, 0).name() == "C[4,0]");
  CHECK(Symbol::Psi().name() == "psi");
  CHECK_THROWS(Symbol::parse("C[4"));
  CHECK_THROWS(Symbol::parse("Q"));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    SymPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == SymPoly());
    CHECK(a + (-a) == SymPoly());
    CHECK(a * SymPoly(1) == a);
    CHECK(a * SymPoly(0) == SymPoly());
  }
}

TEST_CASE("canonical form stores no zero coefficients") {
  SymPoly a = SymPoly(Symbol::A()) - SymPoly(Symbol::A());
  CHECK(a.is_zero());
  CHECK(a.term_count() == 0);
  SymPoly one(1);
  CHECK(one.is_constant());
  CHECK(one.constant_value() == 1);
  CHECK_FALSE(SymPoly(Symbol::A()).is_constant());
}

TEST_CASE("substitute binds symbols and keeps the rest") {
  SymPoly p = SymPoly(Symbol::C(4, 0)) * SymPoly(Symbol::L()) +
              SymPoly(Symbol::A());
  SymPoly q = p.substitute({{Symbol::C(4, 0), rat(-2)}});
  CHECK(q == SymPoly(Symbol::L()) * SymPoly(rat(-2)) + SymPoly(Symbol::A()));
  SymPoly r = q.substitute({{Symbol::L(), rat(1, 2)}, {Symbol::A(), rat(3)}});
  CHECK(r.is_constant());
  CHECK(r.constant_value() == rat(2));
}

TEST_CASE("power content and coefficient extraction") {
  Symbol L = Symbol::L();
  SymPoly p = SymPoly(Symbol::C(4, 2)) * SymPoly(L) * SymPoly(L) +
              SymPoly(Symbol::C(5, 4)) * SymPoly(L);
  CHECK(p.degree_in(L) == 2);
  CHECK(p.min_power(L) == 1);
  CHECK(p.divided_by(L, 1) ==
        SymPoly(Symbol::C(4, 2)) * SymPoly(L) + SymPoly(Symbol::C(5, 4)));
  CHECK(p.coefficient_of(L, 2) == SymPoly(Symbol::C(4, 2)));
  CHECK(p.coefficient_of(L, 0).is_zero());
  CHECK(p.contains(L));
  CHECK_FALSE(p.contains(Symbol::A()));
}

TEST_CASE("pow matches repeated multiplication") {
  std::mt19937 rng(11);
  SymPoly p = random_poly(rng);
  SymPoly q(1);
  for (unsigned e = 0; e <= 4; ++e) {
    CHECK(p.pow(e) == q);
    q = q * p;
  }
}

TEST_CASE("JSON round-trip") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    SymPoly p = random_poly(rng);
    CHECK(SymPoly::from_json(p.to_json()) == p);
  }
  CHECK(SymPoly::from_json(SymPoly().to_json()).is_zero());
}
