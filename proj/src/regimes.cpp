#include "blowup/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blowup {

namespace {

// ---- univariate polynomial helpers (ascending coefficients) ----

using UPoly = std::vector<Rat>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly deriv(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(i));
  trim(d);
  return d;
}

UPoly rem(UPoly a, const UPoly& b) {
  trim(a);
  while (deg(a) >= deg(b) && !a.empty()) {
    Rat q = a.back() / b.back();
    int shift = deg(a) - deg(b);
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] -= q * b[i];
    trim(a);
  }
  return a;
}

UPoly divexact(UPoly a, const UPoly& b) {
  trim(a);
  UPoly q(a.size(), Rat(0));
  while (deg(a) >= deg(b) && !a.empty()) {
    Rat c = a.back() / b.back();
    int shift = deg(a) - deg(b);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] -= c * b[i];
    trim(a);
  }
  q.resize(q.empty() ? 0 : q.size());
  trim(q);
  return q;
}

UPoly poly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rat lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// squarefree decomposition (Yun): f = prod factors[i].first ^ factors[i].second
std::vector<std::pair<UPoly, int>> squarefree_factors(UPoly f) {
  trim(f);
  std::vector<std::pair<UPoly, int>> out;
  if (deg(f) < 1) return out;
  UPoly fp = deriv(f);
  UPoly g = poly_gcd(f, fp);
  if (deg(g) < 1) {
    out.emplace_back(f, 1);
    return out;
  }
  UPoly w = divexact(f, g);
  UPoly y = divexact(fp, g);
  UPoly z = y;
  {
    UPoly wp = deriv(w);
    z.resize(std::max(z.size(), wp.size()), Rat(0));
    for (std::size_t i = 0; i < wp.size(); ++i) z[i] -= wp[i];
    trim(z);
  }
  int i = 1;
  while (deg(w) > 0) {
    UPoly p = z.empty() ? w : poly_gcd(w, z);
    if (deg(p) > 0) out.emplace_back(p, i);
    w = divexact(w, p.empty() ? w : p);
    if (z.empty()) break;
    y = divexact(z, p.empty() ? z : p);
    z = y;
    UPoly wp = deriv(w);
    z.resize(std::max(z.size(), wp.size()), Rat(0));
    for (std::size_t k = 0; k < wp.size(); ++k) z[k] -= wp[k];
    trim(z);
    ++i;
  }
  return out;
}

int sign_at_plus_inf(const UPoly& p) { return sgn(p.back()); }
int sign_at_minus_inf(const UPoly& p) {
  int s = sgn(p.back());
  return deg(p) % 2 ? -s : s;
}

// number of distinct real roots of a squarefree polynomial (Sturm)
int real_root_count(const UPoly& p) {
  if (deg(p) < 1) return 0;
  std::vector<UPoly> chain{p, deriv(p)};
  while (deg(chain.back()) >= 1) {
    UPoly r = rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto variations = [&](auto sign_of) {
    int v = 0, prev = 0;
    for (const auto& q : chain) {
      if (q.empty()) continue;
      int s = sign_of(q);
      if (s != 0 && prev != 0 && s != prev) ++v;
      if (s != 0) prev = s;
    }
    return v;
  };
  return variations([](const UPoly& q) { return sign_at_minus_inf(q); }) -
         variations([](const UPoly& q) { return sign_at_plus_inf(q); });
}

// q(t) <= 0 for all real t?
bool nonpositive_everywhere(const UPoly& q) {
  UPoly p = q;
  trim(p);
  if (p.empty()) return true;
  if (deg(p) % 2 != 0) return false;
  if (p.back() > 0) return false;
  if (deg(p) == 0) return p[0] < 0 || p[0] == 0;
  for (const auto& [factor, mult] : squarefree_factors(p))
    if (mult % 2 == 1 && real_root_count(factor) > 0) return false;
  return true;
}

Rat eval_upoly(const UPoly& p, const Rat& t) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<mpz_class> divisors(const mpz_class& n0) {
  mpz_class n = abs(n0);
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      mpz_class q = n / d;
      if (q != d) out.push_back(q);
    }
  }
  return out;
}

// exact rational roots of q, each as reduced p/s
std::vector<Rat> rational_roots(const UPoly& q) {
  UPoly p = q;
  trim(p);
  std::vector<Rat> roots;
  if (deg(p) < 1) return roots;
  std::size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  if (low > 0) roots.push_back(Rat(0));
  UPoly core(p.begin() + low, p.end());
  if (deg(core) < 1) return roots;
  // clear denominators
  mpz_class den = 1;
  for (const auto& c : core) den = lcm(den, c.get_den());
  std::vector<mpz_class> zc;
  for (const auto& c : core) {
    Rat v = c * Rat(den);
    zc.push_back(v.get_num());
  }
  for (const auto& num : divisors(zc.front()))
    for (const auto& d : divisors(zc.back()))
      for (int s : {1, -1}) {
        Rat cand(s * num, d);
        cand.canonicalize();
        if (eval_upoly(core, cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  return roots;
}

Rat ceil_rat(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rat(q);
}

std::map<Symbol, Rat> with_zeros(const std::map<Symbol, Rat>& bindings,
                                 const std::set<std::pair<int, int>>& zeroed) {
  std::map<Symbol, Rat> sub = bindings;
  for (const auto& [k, j] : zeroed) sub[Symbol::C(k, j)] = 0;
  return sub;
}

std::optional<Rat> bound_value(const std::map<Symbol, Rat>& bindings, int k,
                               int j) {
  auto it = bindings.find(Symbol::C(k, j));
  if (it == bindings.end()) return std::nullopt;
  return it->second;
}

bool bound_zero(const std::map<Symbol, Rat>& bindings, int k, int j) {
  auto v = bound_value(bindings, k, j);
  return v && *v == 0;
}

bool bound_nonzero(const std::map<Symbol, Rat>& bindings, int k, int j) {
  auto v = bound_value(bindings, k, j);
  return v && *v != 0;
}

// closed-form positive root for linear / biquadratic constraints in L
void attach_root(RegimeResult& r, const std::map<Symbol, Rat>& bindings) {
  if (r.constraint.is_zero()) return;
  SymPoly p = r.constraint.substitute(bindings);
  Symbol L = Symbol::L();
  for (const auto& [mono, coef] : p.terms())
    for (const auto& [sym, e] : mono)
      if (!(sym == L)) return;  // still symbolic
  int d = p.degree_in(L);
  Rat a, c;
  if (d == 1) {
    a = p.coefficient_of(L, 1).constant_value();
    c = p.coefficient_of(L, 0).constant_value();
    Rat root = -c / a;
    if (root > 0) {
      r.root_status = RootStatus::positive_root;
      r.root = root;
      r.root_approx = root.get_d();
    } else {
      r.root_status = RootStatus::no_positive_root;
    }
    return;
  }
  if (d == 2 && p.coefficient_of(L, 1).is_zero()) {
    a = p.coefficient_of(L, 2).constant_value();
    c = p.coefficient_of(L, 0).constant_value();
    Rat sq = -c / a;
    if (sq > 0) {
      r.root_status = RootStatus::positive_root;
      mpz_class n = sq.get_num(), dn = sq.get_den();
      if (mpz_perfect_square_p(n.get_mpz_t()) &&
          mpz_perfect_square_p(dn.get_mpz_t())) {
        r.root = Rat(sqrt(n), sqrt(dn));
        r.root_approx = r.root->get_d();
      } else {
        r.root_approx = std::sqrt(sq.get_d());
      }
    } else {
      r.root_status = RootStatus::no_positive_root;
    }
  }
}

std::set<Rat> crossing_values(int klo, int khi, const Rat& lo, const Rat& hi) {
  std::set<Rat> out;
  for (int k = klo; k <= khi; ++k)
    for (int kp = klo; kp <= khi; ++kp)
      for (int j = 0; j <= k - 1; ++j)
        for (int jp = 0; jp <= kp - 1; ++jp) {
          if (k == kp && j == jp) continue;
          int diff = (k - j) - (kp - jp);
          if (diff == 0) continue;
          Rat v(kp - k, 2 * diff);
          v.canonicalize();
          if (v >= lo && v <= hi) out.insert(v);
        }
  return out;
}

}  // namespace

FormValidation validate_form(const FormSpec& form) {
  if (static_cast<int>(form.coeffs.size()) != form.m + 1)
    throw std::invalid_argument("form needs m+1 coefficients");
  bool all_zero = true;
  for (const auto& c : form.coeffs)
    if (c != 0) all_zero = false;
  if (all_zero) throw std::invalid_argument("all-zero form");

  FormValidation out;
  UPoly q(form.coeffs.begin(), form.coeffs.end());
  out.nonpositive = nonpositive_everywhere(q);

  auto integer_pair = [](const Rat& x, const Rat& y) {
    mpz_class den = lcm(x.get_den(), y.get_den());
    Rat xs = x * Rat(den), ys = y * Rat(den);
    return std::make_pair(xs.get_num(), ys.get_num());
  };
  if (form.coeffs[form.m] == 0)
    out.degenerate_directions.emplace_back(0, 1);
  if (form.m == 4 && form.coeffs[3] == 0 && form.coeffs[4] == 0) {
    const Rat &c0 = form.coeffs[0], &c1 = form.coeffs[1], &c2 = form.coeffs[2];
    if (c2 != 0 && c1 * c1 - 4 * c0 * c2 == 0)
      out.degenerate_directions.push_back(integer_pair(-2 * c2, c1));
  } else {
    for (const auto& t : rational_roots(q))
      out.degenerate_directions.push_back(integer_pair(1, t));
  }
  return out;
}

ExponentSets exponent_sets(int m) {
  if (m < 6 || m % 2 != 0)
    throw std::invalid_argument("exponent sets need even m >= 6");
  ExponentSets out;
  Rat split(m - 2, 2 * (m - 1));
  out.E1 = crossing_values(m, 2 * m - 3, Rat(0), split);
  out.E2 = crossing_values(m, 2 * m - 2, split, Rat(1, 2));

  int M = 2 * m - 2;  // ceil((2*theta+1)(m-1)) maximized over theta in [0,1/2]
  AsymSeries series = expand(Seed{m, {}, {}}, M);
  for (const auto& [key, coef] : series.terms()) {
    auto& imax = out.resonance_powers[key.first.k];
    imax = std::max(imax, key.first.i);
  }
  for (int k = m; k <= M; ++k) out.resonance_powers.try_emplace(k, 0);

  auto ik = [&](int k) { return out.resonance_powers.at(k); };
  for (int k = m; k <= M; ++k)
    for (int kp = m; kp <= M; ++kp)
      for (int j = 0; j <= k - 1; ++j)
        for (int jp = 0; jp <= kp - 1; ++jp) {
          int diff = (k - j) - (kp - jp);
          if (diff == 0) continue;
          for (int i = 0; i <= ik(k); ++i)
            for (int ip = 0; ip <= ik(kp); ++ip) {
              if (k == kp && j == jp && i == ip) continue;
              Rat v(ip - i, diff);
              v.canonicalize();
              out.E3.insert(v);
            }
        }
  return out;
}

ExpansionProvider default_provider() {
  return [](const Seed& seed, int M) { return expand(seed, M); };
}

CascadeOutcome run_cascade(const AsymSeries& series, int m, const Rat& theta,
                           const Rat& alpha, const ScaleTerm& floor,
                           const std::map<Symbol, Rat>& bindings) {
  CascadeOutcome out;
  const std::vector<ModeIndex> columns{{1, 0}, {0, 1}};
  ModeTable table = mode_table(series, ShiftSpec::canonical(), columns);
  // only entries carrying the genuine growth factor e^{tau/2} participate
  for (auto& [mode, column] : table) {
    std::vector<ScaleTerm> kept;
    for (auto& t : column)
      if (t.taurate == Rat(1, 2)) kept.push_back(std::move(t));
    column = std::move(kept);
  }

  for (int iteration = 0; iteration < 200; ++iteration) {
    auto sub = with_zeros(bindings, out.zeroed);
    bool acted = false;
    // first resolve every singleton dominant group (free-constant deduction
    // or protected-coefficient contradiction), over all expanding columns
    for (const auto& mode : columns) {
      std::vector<ScaleTerm> col;
      for (const auto& t : table[mode]) {
        ScaleTerm r = t;
        r.coef = r.coef.substitute(sub);
        if (!r.coef.is_zero()) col.push_back(std::move(r));
      }
      auto groups = dominance_sort(col, theta, alpha, floor);
      for (const auto& group : groups) {
        ConstraintResult cons = extract_constraint(group);
        if (cons.poly.is_zero()) continue;  // cancels identically
        if (cons.poly.term_count() >= 2) break;  // candidate constraint
        // singleton: a lone dominant monomial must vanish
        const Monomial& mono = cons.poly.terms().begin()->first;
        std::vector<Symbol> free_c;
        for (const auto& [sym, e] : mono) {
          if (sym.kind != Symbol::Kind::C) continue;
          if (sym.k == m || bindings.count(sym)) {
            out.note = "dominant singleton with protected coefficient " +
                       sym.name();
            return out;
          }
          free_c.push_back(sym);
        }
        if (free_c.size() != 1) {
          out.note = "dominant singleton without a unique free constant";
          return out;
        }
        out.zeroed.insert({free_c[0].k, free_c[0].j});
        acted = true;
        break;
      }
      if (acted) break;
    }
    if (acted) continue;
    // stable: take the first column whose dominant group constrains L
    for (const auto& mode : columns) {
      std::vector<ScaleTerm> col;
      for (const auto& t : table[mode]) {
        ScaleTerm r = t;
        r.coef = r.coef.substitute(sub);
        if (!r.coef.is_zero()) col.push_back(std::move(r));
      }
      auto groups = dominance_sort(col, theta, alpha, floor);
      for (const auto& group : groups) {
        ConstraintResult cons = extract_constraint(group);
        if (cons.poly.is_zero()) continue;
        if (cons.poly.term_count() >= 2) {
          out.success = true;
          out.constraint = cons.poly;
          return out;
        }
        break;  // singleton would have been handled above
      }
      if (out.success) break;
    }
    out.note = "no codominant group above the remainder floor";
    return out;
  }
  out.note = "cascade did not stabilize";
  return out;
}

namespace {

const std::set<std::pair<int, int>> kM4Base{{4, 4}, {4, 3}, {5, 5}};
const std::set<std::pair<int, int>> kM4Super{{4, 4}, {4, 3}, {5, 5},
                                             {4, 2}, {4, 1}, {5, 4}};

std::set<std::pair<int, int>> plus(std::set<std::pair<int, int>> z,
                                   std::initializer_list<std::pair<int, int>> e) {
  z.insert(e.begin(), e.end());
  return z;
}

RegimeResult subquadratic_marker() {
  RegimeResult r;
  r.beta = 2;
  r.alpha = 0;
  r.origin = RegimeOrigin::subquadratic_excluded;
  r.note = "a_{n,1} = o(a_{n,2}^2): unconstrained";
  return r;
}

void sort_results(std::vector<RegimeResult>& out) {
  std::stable_sort(out.begin(), out.end(),
                   [](const RegimeResult& x, const RegimeResult& y) {
                     if (x.beta != y.beta) return x.beta < y.beta;
                     if (x.alpha != y.alpha) return x.alpha < y.alpha;
                     return static_cast<int>(x.origin) <
                            static_cast<int>(y.origin);
                   });
}

}  // namespace

std::vector<RegimeResult> regime_search_m4(const ExpansionProvider& provider,
                                           const RegimeConfig& config) {
  const auto& B = config.bindings;
  {
    bool full = true;
    std::vector<Rat> coeffs;
    for (int j = 0; j <= 4; ++j) {
      auto v = bound_value(B, 4, j);
      if (!v) {
        full = false;
        break;
      }
      coeffs.push_back(*v);
    }
    if (full && !validate_form({4, coeffs}).nonpositive)
      throw std::domain_error("form validation failure: not nonpositive");
  }

  std::vector<RegimeResult> out;
  out.push_back(subquadratic_marker());

  {  // quadratic branch: cancelation chain decides the stage
    std::set<std::pair<int, int>> z = kM4Base;
    int M = 5;
    std::string note = "quadratic branch, leading stage";
    if (bound_zero(B, 4, 2)) {
      z = plus(z, {{4, 2}, {4, 1}, {5, 4}});
      M = 6;
      note = "quadratic branch, second cancelation stage";
      if (bound_zero(B, 5, 3)) {
        z = plus(z, {{5, 3}, {6, 5}, {6, 6}});
        M = 7;
        note = "quadratic branch, cubic stage";
      }
    }
    AsymSeries series = provider(Seed{4, {}, z}, M);
    CascadeOutcome res =
        run_cascade(series, 4, Rat(1, 2), Rat(0), remainder_floor(M), B);
    RegimeResult r;
    r.beta = 2;
    r.alpha = 0;
    r.origin = RegimeOrigin::quadratic;
    r.constraint = res.constraint;
    r.note = res.success ? note : res.note;
    attach_root(r, B);
    out.push_back(std::move(r));
  }

  if (!bound_nonzero(B, 4, 2) && !bound_nonzero(B, 4, 1)) {
    // power-law (superquadratic) branch
    int M = config.M_override.value_or(5);
    AsymSeries series = provider(Seed{4, {}, kM4Super}, M);
    for (const Rat& theta : crossing_values(4, 6, Rat(0), Rat(1, 2))) {
      if (theta <= 0 || theta >= Rat(1, 2)) continue;
      CascadeOutcome res =
          run_cascade(series, 4, theta, Rat(0), remainder_floor(M), B);
      if (!res.success) continue;
      RegimeResult r;
      r.beta = 2 * theta + 1;
      r.alpha = 0;
      r.origin = RegimeOrigin::power_law;
      r.constraint = res.constraint;
      r.note = "superquadratic branch (positive root requires C[5,3] > 0)";
      attach_root(r, B);
      out.push_back(std::move(r));
    }
  }
  sort_results(out);
  return out;
}

std::vector<RegimeResult> regime_search_general(
    int m, const ExpansionProvider& provider, const RegimeConfig& config) {
  if (m < 6 || m % 2 != 0)
    throw std::invalid_argument("general search needs even m >= 6");
  const auto& B = config.bindings;
  {
    bool full = true;
    std::vector<Rat> coeffs;
    for (int j = 0; j <= m; ++j) {
      auto v = bound_value(B, m, j);
      if (!v) {
        full = false;
        break;
      }
      coeffs.push_back(*v);
    }
    if (full && !validate_form({m, coeffs}).nonpositive)
      throw std::domain_error("form validation failure: not nonpositive");
  }

  std::vector<RegimeResult> out;
  out.push_back(subquadratic_marker());

  std::set<std::pair<int, int>> base{{m, m}, {m, m - 1}, {m + 1, m + 1}};

  {  // quadratic branch
    int M = config.M_override.value_or(2 * m - 2);
    AsymSeries series = provider(Seed{m, {}, base}, M);
    CascadeOutcome res =
        run_cascade(series, m, Rat(1, 2), Rat(0), remainder_floor(M), B);
    RegimeResult r;
    r.beta = 2;
    r.alpha = 0;
    r.origin = RegimeOrigin::quadratic;
    r.constraint = res.constraint;
    r.note = res.success ? "quadratic branch" : res.note;
    attach_root(r, B);
    out.push_back(std::move(r));
  }

  if (!bound_nonzero(B, m, m - 2) && !bound_nonzero(B, m, m - 3)) {
    auto zp = plus(base, {{m, m - 2}, {m, m - 3}});
    ExponentSets sets = exponent_sets(m);
    std::set<Rat> thetas = sets.E1;
    thetas.insert(sets.E2.begin(), sets.E2.end());
    std::vector<Rat> alphas{Rat(0)};
    for (const Rat& a : sets.E3)
      if (a != 0) alphas.push_back(a);

    std::map<int, AsymSeries> cache;
    for (const Rat& theta : thetas) {
      if (theta <= 0 || theta >= Rat(1, 2)) continue;
      Rat needed = ceil_rat((2 * theta + 1) * Rat(m - 1));
      int M = static_cast<int>(needed.get_num().get_si());
      if (config.M_override) {
        if (*config.M_override < M) {
          std::ostringstream msg;
          msg << "truncation order insufficient: need M=" << M;
          throw std::domain_error(msg.str());
        }
        M = *config.M_override;
      }
      auto it = cache.find(M);
      if (it == cache.end())
        it = cache.emplace(M, provider(Seed{m, {}, zp}, M)).first;
      for (const Rat& alpha : alphas) {
        CascadeOutcome res =
            run_cascade(it->second, m, theta, alpha, remainder_floor(M), B);
        if (!res.success) continue;
        RegimeResult r;
        r.beta = 2 * theta + 1;
        r.alpha = alpha;
        r.origin = RegimeOrigin::power_law;
        r.constraint = res.constraint;
        attach_root(r, B);
        out.push_back(std::move(r));
      }
    }
  }
  sort_results(out);
  return out;
}

std::vector<M4Stage> m4_constraint_stages(const ExpansionProvider& provider) {
  std::vector<M4Stage> out;
  std::map<Symbol, Rat> none;
  auto stage = [&](const std::string& name,
                   const std::set<std::pair<int, int>>& z, int M,
                   const Rat& theta) {
    AsymSeries series = provider(Seed{4, {}, z}, M);
    CascadeOutcome res =
        run_cascade(series, 4, theta, Rat(0), remainder_floor(M), none);
    out.push_back({name, res.constraint});
  };
  stage("quadratic-linear", kM4Base, 5, Rat(1, 2));
  stage("quadratic-second", plus(kM4Base, {{4, 2}, {4, 1}, {5, 4}}), 6,
        Rat(1, 2));
  stage("quadratic-cubic",
        plus(kM4Base, {{4, 2}, {4, 1}, {5, 4}, {5, 3}, {6, 5}, {6, 6}}), 7,
        Rat(1, 2));
  stage("superquadratic", kM4Super, 5, Rat(1, 4));
  return out;
}

}  // namespace blowup
