#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blowup/recenter.hpp"

using namespace blowup;

namespace {

AsymSeries random_series(std::mt19937& rng, int M) {
  AsymSeries s(M);
  int terms = 1 + static_cast<int>(rng() % 5);
  for (int t = 0; t < terms; ++t) {
    int k = 4 + static_cast<int>(rng() % (M - 3));
    int i = static_cast<int>(rng() % 2);
    int a = static_cast<int>(rng() % 5);
    int b = static_cast<int>(rng() % 4);
    long num = static_cast<long>(rng() % 19) - 9;
    long den = 1 + static_cast<long>(rng() % 9);
    s.accumulate({k, i}, {a, b}, SymPoly(rat(num, den)));
  }
  return s;
}

const ScaleTerm* find_term(const ModeTable& table, const ModeIndex& mode,
                           int bnpow) {
  auto it = table.find(mode);
  if (it == table.end()) return nullptr;
  for (const auto& t : it->second)
    if (t.bnpow == bnpow) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("canonical shift projects one leading term") {
  AsymSeries u(6);
  u.accumulate({4, 0}, {4, 0}, SymPoly(Symbol::C(4, 0)));
  ModeTable table =
      mode_table(u, ShiftSpec::canonical(), {{0, 0}, {2, 0}, {4, 0}});

  const ScaleTerm* full = find_term(table, {4, 0}, 0);
  REQUIRE(full);
  CHECK(full->coef == SymPoly(Symbol::C(4, 0)));
  CHECK(full->apow == 0);
  CHECK(full->rate == 1);
  CHECK(full->taurate == -1);
  CHECK(full->taupoly == 0);

  const ScaleTerm* mid = find_term(table, {2, 0}, 2);
  REQUIRE(mid);
  CHECK(mid->coef == SymPoly(Symbol::C(4, 0)) * SymPoly(6));
  CHECK(mid->apow == 2);
  CHECK(mid->rate == 1);
  CHECK(mid->taurate == 0);  // -1 + 2 * (1/2)

  const ScaleTerm* low = find_term(table, {0, 0}, 4);
  REQUIRE(low);
  CHECK(low->coef == SymPoly(Symbol::C(4, 0)));
  CHECK(low->apow == 4);
  CHECK(low->taurate == 1);  // -1 + 4 * (1/2)
}

TEST_CASE("axis-restricted shift keeps only aligned demotions") {
  AsymSeries u(6);
  u.accumulate({5, 0}, {3, 2}, SymPoly(Symbol::C(5, 2)));
  ModeTable table = mode_table(u, ShiftSpec::axis2(), {{3, 0}, {1, 2}, {3, 1}});
  // demotion along axis 1 is forbidden: dim1 is the zero shift
  CHECK(table.at({1, 2}).empty());
  const ScaleTerm* t = find_term(table, {3, 0}, 0);
  REQUIRE(t);
  CHECK(t->coef == SymPoly(Symbol::C(5, 2)));  // binom(2,2)
  CHECK(t->apow == 2);
  CHECK(t->rate == rat(3, 2));
  CHECK(t->taurate == rat(-3, 2));  // axis2 carries no tau factor
  const ScaleTerm* t1 = find_term(table, {3, 1}, 0);
  REQUIRE(t1);
  CHECK(t1->coef == SymPoly(Symbol::C(5, 2)) * SymPoly(2));  // binom(2,1)
  CHECK(t1->apow == 1);
}

TEST_CASE("bind substitutes the structured amplitude") {
  ScaleTerm t;
  t.coef = SymPoly(Symbol::C(4, 2));
  t.bnpow = 2;
  t.rate = 1;
  t.spow = 0;
  t.apow = 1;
  ScaleTerm b = t.bind(rat(1, 4), Rat(1), false);
  CHECK(b.bnpow == 0);
  CHECK(b.rate == rat(3, 2));  // 1 + 2 * 1/4
  CHECK(b.spow == 2);          // 0 + 2 * 1
  CHECK(b.apow == 2);          // 1 + 2 * 2 * 1/4
  CHECK(b.coef == SymPoly(Symbol::C(4, 2)) *
                      SymPoly(Symbol::L()) * SymPoly(Symbol::L()));
  ScaleTerm p = t.bind(rat(1, 4), Rat(1), true);
  CHECK(p.coef.contains(Symbol::Psi()));
  ScaleTerm untouched = make_floor(Rat(2), Rat(0)).bind(Rat(1), Rat(1), false);
  CHECK(untouched.rate == 2);
}

TEST_CASE("numeric shadow: table equals the series at the shifted point") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  ShiftSpec shift = ShiftSpec::canonical();
  for (int trial = 0; trial < 8; ++trial) {
    AsymSeries u = random_series(rng, 9);
    ModeTable table = recenter(u, shift);
    for (int pt = 0; pt < 3; ++pt) {
      double A = 0.3 + 0.2 * pt, Bn = 0.7, sn = 1.1 + 0.3 * pt,
             tau = 0.4 * pt - 0.2;
      double y1 = unif(rng), y2 = unif(rng);
      double sig1 = A * Bn * std::exp(tau / 2);
      double sig2 = A * std::exp(tau / 2);
      double want = u.evaluate({}, y1 + sig1, y2 + sig2, sn + tau);
      double got = evaluate_table(table, {}, A, Bn, sn, tau, y1, y2);
      CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("dominance sort filters by the floor and orders groups") {
  auto term = [](const Rat& rate, const Rat& spow, int taupoly, int bnpow) {
    ScaleTerm t;
    t.coef = SymPoly(1);
    t.rate = rate;
    t.spow = spow;
    t.taupoly = taupoly;
    t.bnpow = bnpow;
    return t;
  };
  std::vector<ScaleTerm> column{
      term(Rat(1), Rat(0), 0, 0),       // group (1, 0)
      term(Rat(1), Rat(3), 0, 0),       // group (1, 3), ahead of (1, 0)
      term(rat(3, 2), Rat(0), 2, 0),    // spow at tau=0 is 2: above floor
      term(rat(3, 2), Rat(1), 0, 0),    // ties the floor: dropped
      term(Rat(2), Rat(5), 0, 0),       // decays past the floor: dropped
      term(Rat(1), Rat(1), 0, 2),       // binds to rate 3/2, spow 3
  };
  ScaleTerm floor = make_floor(rat(3, 2), Rat(1));
  auto groups = dominance_sort(column, rat(1, 4), Rat(1), floor);
  REQUIRE(groups.size() == 4);
  CHECK(groups[0].rate == 1);
  CHECK(groups[0].spow == 3);
  CHECK(groups[1].rate == 1);
  CHECK(groups[1].spow == 0);
  CHECK(groups[2].rate == rat(3, 2));
  CHECK(groups[2].spow == 3);  // the bound Bn^2 term
  CHECK(groups[2].terms[0].coef.contains(Symbol::L()));
  CHECK(groups[3].rate == rat(3, 2));
  CHECK(groups[3].spow == 2);
}

TEST_CASE("constraint extraction sums genuine growth terms") {
  SymPoly L(Symbol::L());
  auto term = [](SymPoly coef, const Rat& apow, const Rat& taurate) {
    ScaleTerm t;
    t.coef = std::move(coef);
    t.apow = apow;
    t.taurate = taurate;
    return t;
  };
  CodominanceGroup group;
  group.rate = rat(3, 2);
  group.spow = 1;
  group.terms = {
      term(SymPoly(Symbol::C(4, 2)) * SymPoly(2) * L * L, Rat(1), rat(1, 2)),
      term(SymPoly(Symbol::C(5, 4)) * L, Rat(1), rat(1, 2)),
      term(SymPoly(Symbol::C(4, 0)) * SymPoly(Symbol::C(4, 0)), Rat(1),
           rat(3, 2)),  // overshoots e^{tau/2}: artificial
      term(SymPoly(7), Rat(1), Rat(-1)),  // decaying in tau: no constraint
  };
  ConstraintResult res = extract_constraint(group);
  CHECK(res.poly ==
        SymPoly(Symbol::C(4, 2)) * SymPoly(2) * L + SymPoly(Symbol::C(5, 4)));
  CHECK(res.common_lpow == 1);
  CHECK(res.common_apow == 1);
  CHECK(res.artificial.size() == 2);
  CHECK_FALSE(res.poly.contains(Symbol::A()));

  CodominanceGroup mixed = group;
  mixed.terms[1].apow = 2;
  CHECK_THROWS(extract_constraint(mixed));

  CodominanceGroup hollow;
  hollow.terms = {term(SymPoly(1), Rat(0), Rat(-1))};
  CHECK_THROWS(extract_constraint(hollow));

  CodominanceGroup unbound = group;
  unbound.terms[0].bnpow = 1;
  CHECK_THROWS(extract_constraint(unbound));
}

TEST_CASE("remainder floor of a truncated series") {
  ScaleTerm f6 = remainder_floor(6);
  CHECK(f6.rate == rat(5, 2));
  CHECK(f6.spow == 1);
  CHECK(remainder_floor(8).rate == rat(7, 2));
}

TEST_CASE("structured shift returns bound columns") {
  AsymSeries u(6);
  u.accumulate({4, 0}, {4, 0}, SymPoly(Symbol::C(4, 0)));
  ShiftSpec shift = ShiftSpec::canonical();
  shift.structured = StructuredBn{rat(1, 4), Rat(0), false};
  ModeTable table = mode_table(u, shift, {{2, 0}});
  REQUIRE(table.at({2, 0}).size() == 1);
  const ScaleTerm& t = table.at({2, 0})[0];
  CHECK(t.bnpow == 0);
  CHECK(t.rate == rat(3, 2));  // 1 + 2 * 1/4
  CHECK(t.apow == 3);          // 2 + 2 * 2 * 1/4
  CHECK(t.coef.contains(Symbol::L()));
}
