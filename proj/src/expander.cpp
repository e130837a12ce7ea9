#include "blowup/expander.hpp"

#include <stdexcept>

namespace blowup {

ModeODESolution ode_particular(
    const Rat& lambda, const std::vector<std::pair<int, SymPoly>>& forcing,
    const Rat& mu) {
  ModeODESolution sol;
  if (forcing.empty()) return sol;
  if (mu == lambda) {
    sol.resonant = true;
    for (const auto& [i, c] : forcing)
      sol.particular.emplace_back(i + 1, SymPoly(Rat(1, i + 1)) * c);
    return sol;
  }
  int top = 0;
  for (const auto& [i, c] : forcing) top = std::max(top, i);
  std::vector<SymPoly> c_by_pow(static_cast<std::size_t>(top) + 1);
  for (const auto& [i, c] : forcing) c_by_pow[static_cast<std::size_t>(i)] += c;
  // a_p = (c_p - (p+1) a_{p+1}) / (mu - lambda), from the top power down
  Rat inv_gap = Rat(1) / (mu - lambda);
  std::vector<SymPoly> a(static_cast<std::size_t>(top) + 1);
  for (int p = top; p >= 0; --p) {
    SymPoly rhs = c_by_pow[static_cast<std::size_t>(p)];
    if (p < top)
      rhs -= SymPoly(Rat(p + 1)) * a[static_cast<std::size_t>(p) + 1];
    a[static_cast<std::size_t>(p)] = SymPoly(inv_gap) * rhs;
  }
  for (int p = 0; p <= top; ++p)
    if (!a[static_cast<std::size_t>(p)].is_zero())
      sol.particular.emplace_back(p, a[static_cast<std::size_t>(p)]);
  return sol;
}

AsymSeries expand(const Seed& seed, int M) {
  if (seed.m < 4 || seed.m % 2 != 0)
    throw std::invalid_argument("seed order must be even and >= 4");
  if (M < seed.m)
    throw std::invalid_argument("truncation order below seed order");

  AsymSeries series(M);
  bool any = false;
  for (int j = 0; j <= seed.m; ++j) {
    SymPoly c;
    if (auto it = seed.leading.find(j); it != seed.leading.end())
      c = it->second;
    else if (seed.leading.empty() && !seed.zeroed(seed.m, j))
      c = SymPoly(Symbol::C(seed.m, j));
    if (c.is_zero()) continue;
    any = true;
    series.accumulate({seed.m, 0}, {seed.m - j, j}, c);
  }
  if (!any) throw std::invalid_argument("seed has no nonzero coefficient");

  for (int k = seed.m + 1; k <= M; ++k) {
    // Quadratic forcing at grade k from pairs k1+k2-2 = k; symmetric pair
    // enumeration with off-diagonal doubling.
    std::map<ModeIndex, std::vector<std::pair<int, SymPoly>>> forcing;
    auto add_pairs = [&](int k1, int k2, const Rat& factor) {
      for (const auto& [key1, c1] : series.terms()) {
        if (key1.first.k != k1) continue;
        for (const auto& [key2, c2] : series.terms()) {
          if (key2.first.k != k2) continue;
          SymPoly coef = SymPoly(factor) * c1 * c2;
          int i = key1.first.i + key2.first.i;
          const auto& lin1 = hermite::product(key1.second.a, key2.second.a);
          const auto& lin2 = hermite::product(key1.second.b, key2.second.b);
          for (const auto& [a, w1] : lin1)
            for (const auto& [b, w2] : lin2)
              forcing[{a, b}].emplace_back(i, SymPoly(w1 * w2) * coef);
        }
      }
    };
    for (int k1 = seed.m; 2 * k1 <= k + 2; ++k1) {
      int k2 = k + 2 - k1;
      if (k2 < k1 || k2 >= k) continue;
      add_pairs(k1, k2, k1 == k2 ? Rat(1) : Rat(2));
    }

    Rat mu = rat(2 - k, 2);
    for (const auto& [mode, terms] : forcing) {
      ModeODESolution sol = ode_particular(mode.eigenvalue(), terms, mu);
      for (const auto& [i, c] : sol.particular)
        series.accumulate({k, i}, mode, c);
    }
    for (int j = 0; j <= k; ++j)
      if (!seed.zeroed(k, j))
        series.accumulate({k, 0}, {k - j, j}, SymPoly(Symbol::C(k, j)));
  }
  return series;
}

}  // namespace blowup
