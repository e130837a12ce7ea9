#include "blowup/goldens.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "blowup/galerkin.hpp"
#include "blowup/regimes.hpp"

namespace blowup {

namespace {

SymPoly C(int k, int j) { return SymPoly(Symbol::C(k, j)); }

SymPoly mul(SymPoly p, const Rat& c) {
  p *= c;
  return p;
}

// Image of one source term coef * s^isec * e^{(1-k/2)s} h_a h_b under the
// canonical recentering shift, at target mode (c,d). Mirrors the closed form
// the table module implements, for use as frozen expected values.
ScaleTerm table_entry(int k, int isec, const SymPoly& coef, int a, int b,
                      int c, int d) {
  int m1 = a - c, m2 = b - d;
  ScaleTerm t;
  t.coef = mul(coef, Rat(binomial(a, m1) * binomial(b, m2)));
  t.apow = m1 + m2;
  t.bnpow = m1;
  t.rate = rat(k - 2, 2);
  t.spow = 0;
  t.taupoly = isec;
  t.taurate = rat(2 - k, 2) + rat(m1 + m2, 2);
  return t;
}

bool has_entry(const ModeTable& tbl, const ModeIndex& mode,
               const ScaleTerm& e) {
  auto it = tbl.find(mode);
  if (it == tbl.end()) return false;
  for (const ScaleTerm& t : it->second)
    if (t.coef == e.coef && t.apow == e.apow && t.bnpow == e.bnpow &&
        t.rate == e.rate && t.spow == e.spow && t.taurate == e.taurate &&
        t.taupoly == e.taupoly)
      return true;
  return false;
}

struct Failure {
  std::ostringstream msg;
  bool any = false;

  void operator()(const std::string& what) {
    if (any) msg << "; ";
    msg << what;
    any = true;
  }
};

// --- 1. golden expansion m=4, grade 6 -------------------------------------

GoldenResult check_taylor_grade6() {
  GoldenResult r{"m=4 grade-6 golden expansion", false, "", 0};
  Seed seed{4, {{0, C(4, 0)}}, {}};
  for (int j = 0; j <= 5; ++j) seed.zero_set.insert({5, j});
  AsymSeries got = expand(seed, 6);

  AsymSeries want(6);
  SymPoly c2 = C(4, 0) * C(4, 0);
  want.accumulate({4, 0}, {4, 0}, C(4, 0));
  want.accumulate({6, 0}, {0, 0}, mul(c2, rat(-384, 3)));
  want.accumulate({6, 0}, {2, 0}, mul(c2, rat(-768, 2)));
  want.accumulate({6, 0}, {4, 0}, mul(c2, Rat(-288)));
  want.accumulate({6, 1}, {6, 0}, mul(c2, Rat(32)));
  want.accumulate({6, 0}, {8, 0}, c2);
  for (int j = 0; j <= 6; ++j) want.accumulate({6, 0}, {6 - j, j}, C(6, j));

  r.passed = (got == want);
  r.detail = r.passed ? "exact match, " + std::to_string(got.term_count()) +
                            " terms"
                      : "series mismatch:\n" + got.str();
  return r;
}

// --- 2. grade-7 cross-term families ---------------------------------------

GoldenResult check_taylor_grade7() {
  GoldenResult r{"m=4 grade-7 cross-term families", false, "", 0};
  AsymSeries s7 = expand(Seed{4, {{0, C(4, 0)}}, {}}, 7);
  Failure fail;

  if (hermite::gamma(4, 5, 1) != 1920) fail("gamma(4,5,1) != 1920");
  if (hermite::gamma(4, 4, 0) != 384) fail("gamma(4,4,0) != 384");

  for (int j = 0; j <= 5; ++j) {
    SymPoly cc = C(4, 0) * C(5, j);
    auto family = [&](int i, int mode_a, const Rat& factor, int n) {
      if (mode_a < 0) return;
      SymPoly want = mul(cc, factor * hermite::gamma(4, 5 - j, n));
      const SymPoly& got = s7.coefficient({7, i}, {mode_a, j});
      if (!(got == want)) {
        std::ostringstream o;
        o << "mode (" << mode_a << "," << j << ") i=" << i << ": got "
          << got.str() << ", want " << want.str();
        fail(o.str());
      }
    };
    family(0, 1 - j, Rat(-2, 3), 1 - j);
    family(0, 3 - j, Rat(-1), 3 - j);
    family(0, 5 - j, Rat(-2), 5 - j);
    family(1, 7 - j, Rat(2), 7 - j);
    family(0, 9 - j, Rat(2), 9 - j);
    if (hermite::gamma(4, 5 - j, 9 - j) != 1)
      fail("top linearization coefficient != 1 at j=" + std::to_string(j));
  }
  r.passed = !fail.any;
  r.detail = r.passed ? "five families, j = 0..5" : fail.msg.str();
  return r;
}

// --- 3. randomized residual property --------------------------------------

GoldenResult check_residual_property() {
  GoldenResult r{"flow residual vanishes for randomized seeds", false, "", 0};
  std::mt19937 rng(20240817);
  Failure fail;
  for (int trial = 0; trial < 50; ++trial) {
    int m = (trial % 2 == 0) ? 4 : 6;
    int M = m + static_cast<int>(rng() % (m + 4));  // m <= M <= 2m+3
    Seed seed;
    seed.m = m;
    for (int j = 0; j <= m; ++j) {
      if (rng() % 3 == 0) continue;
      long num = static_cast<long>(rng() % 19) - 9;
      long den = 1 + static_cast<long>(rng() % 9);
      seed.leading[j] = SymPoly(rat(num, den));
    }
    for (int k = m + 1; k <= M; ++k)
      for (int j = 0; j <= k; ++j)
        if (rng() % 3 == 0) seed.zero_set.insert({k, j});
    AsymSeries residual = apply_flow_residual(expand(seed, M));
    if (!residual.empty()) {
      std::ostringstream o;
      o << "trial " << trial << " (m=" << m << ", M=" << M << "): "
        << residual.term_count() << " residual terms";
      fail(o.str());
      break;
    }
  }
  r.passed = !fail.any;
  r.detail = r.passed ? "50 seeds, m in {4,6}" : fail.msg.str();
  return r;
}

// --- 4. recentered table fidelity -----------------------------------------

GoldenResult check_table_fidelity() {
  GoldenResult r{"recentered projection tables", false, "", 0};
  Failure fail;
  const std::vector<ModeIndex> cols{{0, 0}, {1, 0}, {0, 1}};
  auto expect = [&](const ModeTable& tbl, const char* tag, int k, int isec,
                    const SymPoly& coef, int a, int b, int c, int d) {
    if (a - c < 0 || b - d < 0) return;
    ScaleTerm e = table_entry(k, isec, coef, a, b, c, d);
    if (!has_entry(tbl, {c, d}, e))
      fail(std::string(tag) + ": missing entry at (" + std::to_string(c) +
           "," + std::to_string(d) + "): " + e.str());
  };

  {  // first table: free grade-4/5 coefficients, all three projections
    AsymSeries s = expand(Seed{4, {}, {}}, 5);
    ModeTable tbl = mode_table(s, ShiftSpec::canonical(), cols);
    for (int i = 0; i <= 4; ++i) {
      expect(tbl, "C4i", 4, 0, C(4, i), 4 - i, i, 0, 0);
      expect(tbl, "C4i", 4, 0, C(4, i), 4 - i, i, 1, 0);
      if (i >= 1) expect(tbl, "C4i", 4, 0, C(4, i), 4 - i, i, 0, 1);
    }
    for (int i = 0; i <= 5; ++i) {
      expect(tbl, "C5i", 5, 0, C(5, i), 5 - i, i, 0, 0);
      expect(tbl, "C5i", 5, 0, C(5, i), 5 - i, i, 1, 0);
      if (i >= 1) expect(tbl, "C5i", 5, 0, C(5, i), 5 - i, i, 0, 1);
    }
  }

  {  // second table: the grade-6 expansion seeded by C[4,0] alone
    AsymSeries s = expand(Seed{4, {{0, C(4, 0)}}, {}}, 6);
    ModeTable tbl = mode_table(s, ShiftSpec::canonical(), cols);
    SymPoly c2 = C(4, 0) * C(4, 0);
    expect(tbl, "g440", 6, 0, mul(c2, rat(-384, 3)), 0, 0, 0, 0);
    expect(tbl, "g442", 6, 0, mul(c2, rat(-768, 2)), 2, 0, 0, 0);
    expect(tbl, "g442", 6, 0, mul(c2, rat(-768, 2)), 2, 0, 1, 0);
    expect(tbl, "C40", 4, 0, C(4, 0), 4, 0, 0, 0);
    expect(tbl, "C40", 4, 0, C(4, 0), 4, 0, 1, 0);
    expect(tbl, "g444", 6, 0, mul(c2, Rat(-288)), 4, 0, 0, 0);
    expect(tbl, "g444", 6, 0, mul(c2, Rat(-288)), 4, 0, 1, 0);
    for (int i = 0; i <= 5; ++i) {
      expect(tbl, "C5i", 5, 0, C(5, i), 5 - i, i, 0, 0);
      expect(tbl, "C5i", 5, 0, C(5, i), 5 - i, i, 1, 0);
      if (i >= 1) expect(tbl, "C5i", 5, 0, C(5, i), 5 - i, i, 0, 1);
    }
    expect(tbl, "g446", 6, 1, mul(c2, Rat(32)), 6, 0, 0, 0);
    expect(tbl, "g446", 6, 1, mul(c2, Rat(32)), 6, 0, 1, 0);
    for (int i = 0; i <= 6; ++i) {
      expect(tbl, "C6i", 6, 0, C(6, i), 6 - i, i, 0, 0);
      expect(tbl, "C6i", 6, 0, C(6, i), 6 - i, i, 1, 0);
      if (i >= 1) expect(tbl, "C6i", 6, 0, C(6, i), 6 - i, i, 0, 1);
    }
    expect(tbl, "C40^2 h8", 6, 0, c2, 8, 0, 0, 0);
    expect(tbl, "C40^2 h8", 6, 0, c2, 8, 0, 1, 0);
  }

  {  // third table: the grade-7 rows (free C[7,i] and the secular cross row)
    AsymSeries s = expand(Seed{4, {{0, C(4, 0)}}, {}}, 7);
    ModeTable tbl = mode_table(s, ShiftSpec::canonical(), cols);
    for (int i = 0; i <= 7; ++i) {
      expect(tbl, "C7i", 7, 0, C(7, i), 7 - i, i, 0, 0);
      expect(tbl, "C7i", 7, 0, C(7, i), 7 - i, i, 1, 0);
      if (i >= 1) expect(tbl, "C7i", 7, 0, C(7, i), 7 - i, i, 0, 1);
    }
    for (int i = 0; i <= 4; ++i) {  // gamma(4,5-i,7-i) = 8(5-i), zero at i=5
      SymPoly coef =
          mul(C(4, 0) * C(5, i), 2 * hermite::gamma(4, 5 - i, 7 - i));
      expect(tbl, "C40C5i secular", 7, 1, coef, 7 - i, i, 0, 0);
      expect(tbl, "C40C5i secular", 7, 1, coef, 7 - i, i, 1, 0);
      if (i >= 1) expect(tbl, "C40C5i secular", 7, 1, coef, 7 - i, i, 0, 1);
    }
  }

  {  // axis-2 translation of the top grade-5 coefficient onto h_0 h_0
    AsymSeries s(5);
    s.accumulate({5, 0}, {0, 5}, C(5, 5));
    ModeTable tbl = mode_table(s, ShiftSpec::axis2(), {{0, 0}});
    bool found = false;
    for (const ScaleTerm& t : tbl[{0, 0}])
      if (t.coef == C(5, 5) && t.apow == 5 && t.bnpow == 0 &&
          t.rate == Rat(3, 2) && t.taupoly == 0 && t.spow == 0)
        found = true;
    if (!found) fail("axis-2 shift: C[5,5] A^5 e^{-3/2 s} entry missing");
  }

  r.passed = !fail.any;
  r.detail = r.passed ? "three tables + axis-2 projection" : fail.msg.str();
  return r;
}

// --- 5. constraint extraction stages --------------------------------------

GoldenResult check_constraint_stages() {
  GoldenResult r{"m=4 constraint stages", false, "", 0};
  SymPoly L(Symbol::L());
  std::vector<SymPoly> want{
      mul(C(4, 2) * L, 2) + C(5, 4),
      mul(C(5, 3) * L, 2) + C(6, 5),
      mul(C(4, 0) * L * L * L, 4) + mul(C(5, 2) * L * L, 3) +
          mul(C(6, 4) * L, 2) + C(7, 6),
      mul(C(4, 0) * L * L, 4) + mul(C(5, 3), 2),
  };
  auto stages = m4_constraint_stages(default_provider());
  Failure fail;
  if (stages.size() != want.size()) fail("unexpected stage count");
  for (std::size_t i = 0; i < stages.size() && i < want.size(); ++i)
    if (!(stages[i].constraint == want[i]))
      fail(stages[i].name + ": got " + stages[i].constraint.str() +
           ", want " + want[i].str());
  r.passed = !fail.any;
  r.detail = r.passed ? "four stages exact" : fail.msg.str();
  return r;
}

// --- 6. m=4 regime classification -----------------------------------------

GoldenResult check_regimes_m4() {
  GoldenResult r{"m=4 regime classification", false, "", 0};
  Failure fail;
  auto provider = default_provider();

  auto results = regime_search_m4(provider, RegimeConfig{});
  std::set<std::pair<Rat, Rat>> got;
  for (const auto& res : results) {
    if (res.origin == RegimeOrigin::subquadratic_excluded) continue;
    got.insert({res.beta, res.alpha});
  }
  std::set<std::pair<Rat, Rat>> want{{Rat(3, 2), 0}, {Rat(2), 0}};
  if (got != want) fail("beta/alpha set mismatch");

  // The superquadratic root L0 = sqrt(-C[5,3]/(2 C[4,0])): positive exactly
  // when C[5,3] and C[4,0] have opposite signs.
  auto superquad = [&](const Rat& c53) {
    RegimeConfig cfg;
    cfg.bindings = {{Symbol::C(4, 0), Rat(-1)}, {Symbol::C(5, 3), c53}};
    for (const auto& res : regime_search_m4(provider, cfg))
      if (res.origin == RegimeOrigin::power_law) return res;
    return RegimeResult{};
  };
  RegimeResult pos = superquad(Rat(2));
  if (pos.root_status != RootStatus::positive_root || !pos.root ||
      *pos.root != 1)
    fail("C[5,3]=2, C[4,0]=-1 should give L0=1");
  RegimeResult neg = superquad(Rat(-2));
  if (neg.root_status != RootStatus::no_positive_root)
    fail("C[5,3]=-2, C[4,0]=-1 should have no positive root");

  r.passed = !fail.any;
  r.detail = r.passed ? "beta in {3/2,2}, alpha=0; root logic exact"
                      : fail.msg.str();
  return r;
}

// --- 7. m=6 regime set ----------------------------------------------------

GoldenResult check_regimes_m6() {
  GoldenResult r{"m=6 regime set", false, "", 0};
  Failure fail;

  ExponentSets sets = exponent_sets(6);
  std::set<Rat> all = sets.E1;
  all.insert(sets.E2.begin(), sets.E2.end());
  for (const Rat& v : {Rat(1, 6), Rat(1, 4), Rat(1, 3)})
    if (!all.count(v)) fail("candidate exponent " + rat_str(v) + " missing");

  auto results = regime_search_general(6, default_provider(), RegimeConfig{});
  std::set<Rat> betas;
  for (const auto& res : results) {
    if (res.origin != RegimeOrigin::power_law) continue;
    betas.insert(res.beta);
    if (res.alpha != 0)
      fail("nonzero alpha at beta " + rat_str(res.beta));
  }
  std::set<Rat> want{Rat(4, 3), Rat(3, 2), Rat(5, 3)};
  if (betas != want) {
    std::string list;
    for (const Rat& b : betas) list += rat_str(b) + " ";
    fail("power-law beta set {" + list + "} != {4/3, 3/2, 5/3}");
  }

  r.passed = !fail.any;
  r.detail = r.passed ? "beta set {4/3,3/2,5/3}, alpha=0" : fail.msg.str();
  return r;
}

// --- 8. Hermite kernel ----------------------------------------------------

GoldenResult check_hermite_kernel() {
  GoldenResult r{"Hermite kernel identities", false, "", 0};
  Failure fail;

  auto dense_mul = [](const hermite::DensePoly& p, const hermite::DensePoly& q) {
    hermite::DensePoly out(p.size() + q.size() - 1, Rat(0));
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
  };
  auto integrate_poly = [](const hermite::DensePoly& p) {
    Rat acc = 0;
    for (std::size_t n = 0; n < p.size(); ++n)
      acc += p[n] * hermite::weight_moment(static_cast<int>(n));
    return acc;
  };

  for (int l = 0; l <= 12 && !fail.any; ++l)
    for (int j = 0; j <= 12; ++j) {
      Rat ip = integrate_poly(
          dense_mul(hermite::coefficients(l), hermite::coefficients(j)));
      Rat want = (l == j) ? hermite::norm_sq(j) : Rat(0);
      if (ip != want) {
        fail("orthogonality fails at (" + std::to_string(l) + "," +
             std::to_string(j) + ")");
        break;
      }
    }

  for (int a = 0; a <= 10 && !fail.any; ++a)
    for (int b = 0; b <= 10; ++b) {
      // closed-form linearization vs direct polynomial multiplication
      hermite::DensePoly direct =
          dense_mul(hermite::coefficients(a), hermite::coefficients(b));
      hermite::DensePoly recon(direct.size(), Rat(0));
      for (const auto& [n, c] : hermite::product(a, b)) {
        const auto& hn = hermite::coefficients(n);
        for (std::size_t i = 0; i < hn.size(); ++i) recon[i] += c * hn[i];
      }
      if (recon != direct) {
        fail("product linearization fails at (" + std::to_string(a) + "," +
             std::to_string(b) + ")");
        break;
      }
    }

  for (int j = 1; j <= 12 && !fail.any; ++j) {
    const auto& hj = hermite::coefficients(j);
    const auto& hjm = hermite::coefficients(j - 1);
    hermite::DensePoly d(hj.size() > 1 ? hj.size() - 1 : 1, Rat(0));
    for (std::size_t i = 1; i < hj.size(); ++i) d[i - 1] = hj[i] * Rat(i);
    hermite::DensePoly want(d.size(), Rat(0));
    for (std::size_t i = 0; i < hjm.size(); ++i) want[i] = hjm[i] * Rat(j);
    if (d != want) fail("derivative identity fails at j=" + std::to_string(j));
  }

  r.passed = !fail.any;
  r.detail = r.passed ? "orthogonality, linearization, derivative"
                      : fail.msg.str();
  return r;
}

// --- 9. Galerkin numerics -------------------------------------------------

GoldenResult check_galerkin() {
  GoldenResult r{"Galerkin integrator checks", false, "", 0};
  Failure fail;

  {  // D=0 scalar Riccati v' = v + v^2: blow-up at ln(1 + 1/v0)
    TruncatedState st;
    st.degree = 0;
    st.values[{0, 0}] = 0.1;
    Trajectory traj = integrate(st, 10.0, 1e-4, false);
    double sstar = std::log(11.0);
    if (!traj.blown_up) fail("Riccati trajectory did not blow up");
    else if (std::abs(traj.blowup_time - sstar) >= 1e-4) {
      std::ostringstream o;
      o << "blow-up time error " << std::abs(traj.blowup_time - sstar);
      fail(o.str());
    }
  }

  {  // fourth-order convergence on the closed-form solution over [0,1]
    auto final_value = [](double h) {
      TruncatedState st;
      st.degree = 0;
      st.values[{0, 0}] = 0.1;
      Trajectory traj = integrate(st, 1.0, h, false);
      return traj.states.back().value({0, 0});
    };
    double exact = 0.1 * std::exp(1.0) / (1.1 - 0.1 * std::exp(1.0));
    double e1 = std::abs(final_value(1e-2) - exact);
    double e2 = std::abs(final_value(5e-3) - exact);
    double ratio = e1 / e2;
    if (!(ratio >= 12.0 && ratio <= 20.0)) {
      std::ostringstream o;
      o << "step-halving error ratio " << ratio << " outside [12,20]";
      fail(o.str());
    }
  }

  {  // D=8 trajectory against the grade-6 series in its decayed window
    Seed seed{4, {{0, SymPoly(Rat(-1, 1000))}}, {}};
    for (int j = 0; j <= 5; ++j) seed.zero_set.insert({5, j});
    for (int j = 0; j <= 6; ++j) seed.zero_set.insert({6, j});
    AsymSeries series = expand(seed, 6);
    const double s0 = 20.0;
    TruncatedState st;
    st.degree = 8;
    st.s = s0;
    for (const auto& [key, coef] : series.terms())
      st.values[key.second] = series.evaluate_mode(key.second, {}, s0);
    Trajectory traj = integrate(st, s0 + 5.0, 1e-3, true);
    if (traj.blown_up) fail("decaying trajectory tripped the overflow guard");
    double worst = 0.0;
    ModeIndex worst_mode{};
    for (const auto& [mode, dev] : compare_with_expansion(traj, series, {}))
      if (dev > worst) {
        worst = dev;
        worst_mode = mode;
      }
    if (worst >= 1e-3) {
      std::ostringstream o;
      o << "relative deviation " << worst << " at mode (" << worst_mode.a
        << "," << worst_mode.b << ")";
      fail(o.str());
    }
  }

  r.passed = !fail.any;
  r.detail = r.passed ? "Riccati time, RK4 order, series tracking"
                      : fail.msg.str();
  return r;
}

}  // namespace

std::vector<GoldenResult> run_golden_suite() {
  using Clock = std::chrono::steady_clock;
  std::vector<GoldenResult (*)()> checks{
      check_taylor_grade6,     check_taylor_grade7, check_residual_property,
      check_table_fidelity,    check_constraint_stages,
      check_regimes_m4,        check_regimes_m6,    check_hermite_kernel,
      check_galerkin,
  };
  std::vector<GoldenResult> out;
  for (auto* check : checks) {
    auto t0 = Clock::now();
    GoldenResult res = check();
    res.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0)
                 .count();
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace blowup
