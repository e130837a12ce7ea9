#include "blowup/galerkin.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace blowup {

namespace {

constexpr double kOverflowGuard = 1e6;

std::vector<ModeIndex> modes_up_to(int D) {
  std::vector<ModeIndex> modes;
  for (int t = 0; t <= D; ++t)
    for (int a = t; a >= 0; --a) modes.push_back({a, t - a});  // graded-lex
  return modes;
}

}  // namespace

CouplingTensor coupling_tensor(int D) {
  if (D < 0) throw std::invalid_argument("negative truncation degree");
  CouplingTensor t;
  t.degree = D;
  auto modes = modes_up_to(D);
  for (const auto& target : modes)
    for (std::size_t i = 0; i < modes.size(); ++i)
      for (std::size_t j = i; j < modes.size(); ++j) {
        const auto& s1 = modes[i];
        const auto& s2 = modes[j];
        if ((s1.a + s2.a - target.a) % 2 != 0 ||
            (s1.b + s2.b - target.b) % 2 != 0)
          continue;
        Rat w = hermite::gamma(s1.a, s2.a, target.a) *
                hermite::gamma(s1.b, s2.b, target.b);
        if (w != 0) t.entries.push_back({target, s1, s2, w});
      }
  return t;
}

Rat coupling_entry(const CouplingTensor& t, const ModeIndex& target,
                   const ModeIndex& s1, const ModeIndex& s2) {
  ModeIndex lo = s1, hi = s2;
  if (hi < lo) std::swap(lo, hi);
  for (const auto& e : t.entries)
    if (e.target == target && e.src1 == lo && e.src2 == hi) return e.weight;
  return 0;
}

Rhs make_rhs(int D) {
  Rhs rhs;
  rhs.degree = D;
  rhs.modes = modes_up_to(D);
  for (std::size_t i = 0; i < rhs.modes.size(); ++i)
    rhs.index[rhs.modes[i]] = static_cast<int>(i);
  for (const auto& m : rhs.modes)
    rhs.lambda.push_back(m.eigenvalue().get_d());
  CouplingTensor tensor = coupling_tensor(D);
  for (const auto& e : tensor.entries) {
    // off-diagonal pairs enter v^2 twice
    double w = e.weight.get_d() * (e.src1 == e.src2 ? 1.0 : 2.0);
    rhs.quad.push_back(
        {rhs.index.at(e.target), rhs.index.at(e.src1), rhs.index.at(e.src2), w});
  }
  return rhs;
}

void eval_rhs_serial(const Rhs& rhs, const std::vector<double>& v,
                     std::vector<double>& out) {
  out.assign(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = rhs.lambda[i] * v[i];
  for (const auto& q : rhs.quad)
    out[q.target] += q.weight * v[q.src1] * v[q.src2];
}

void eval_rhs_parallel(const Rhs& rhs, const std::vector<double>& v,
                       std::vector<double>& out) {
  out.assign(v.size(), 0.0);
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const auto m = static_cast<std::ptrdiff_t>(rhs.quad.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = rhs.lambda[i] * v[i];
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < m; ++k) {
    const auto& q = rhs.quad[k];
    double contrib = q.weight * v[q.src1] * v[q.src2];
#pragma omp atomic
    out[q.target] += contrib;
  }
}

Trajectory integrate(const TruncatedState& state0, double s1, double step,
                     bool use_parallel) {
  if (step <= 0) throw std::invalid_argument("nonpositive step");
  if (s1 <= state0.s) throw std::invalid_argument("horizon before start");

  Rhs rhs = make_rhs(state0.degree);
  const std::size_t n = rhs.modes.size();
  std::vector<double> v(n, 0.0);
  for (const auto& [mode, val] : state0.values) {
    auto it = rhs.index.find(mode);
    if (it == rhs.index.end())
      throw std::invalid_argument("initial mode beyond truncation degree");
    v[static_cast<std::size_t>(it->second)] = val;
  }

  auto eval = [&](const std::vector<double>& x, std::vector<double>& out) {
    if (use_parallel)
      eval_rhs_parallel(rhs, x, out);
    else
      eval_rhs_serial(rhs, x, out);
  };

  Trajectory traj;
  traj.step = step;
  auto snapshot = [&](double s) {
    TruncatedState st;
    st.degree = state0.degree;
    st.s = s;
    for (std::size_t i = 0; i < n; ++i) st.values[rhs.modes[i]] = v[i];
    traj.states.push_back(std::move(st));
  };

  double s = state0.s;
  snapshot(s);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  while (s < s1 - 0.5 * step) {
    eval(v, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * step * k1[i];
    eval(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * step * k2[i];
    eval(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = v[i] + step * k3[i];
    eval(tmp, k4);
    bool overflow = false;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += step / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      if (!std::isfinite(v[i]) || std::abs(v[i]) > kOverflowGuard)
        overflow = true;
    }
    if (overflow) {
      traj.blown_up = true;
      traj.blowup_time = s;  // last time before the guard tripped
      return traj;
    }
    s += step;
    snapshot(s);
  }
  return traj;
}

bool blowup_monitor(const TruncatedState& state) {
  return state.value({0, 0}) > 0.0;
}

std::map<ModeIndex, double> compare_with_expansion(
    const Trajectory& traj, const AsymSeries& series,
    const std::map<Symbol, Rat>& bindings) {
  std::set<ModeIndex> modes;
  for (const auto& [key, coef] : series.terms()) modes.insert(key.second);
  std::map<ModeIndex, double> out;
  for (const auto& mode : modes) out[mode] = 0.0;
  for (const auto& state : traj.states) {
    for (const auto& mode : modes) {
      double predicted = series.evaluate_mode(mode, bindings, state.s);
      double actual = state.value(mode);
      double denom = std::max(std::abs(predicted), 1e-12);
      out[mode] = std::max(out[mode], std::abs(actual - predicted) / denom);
    }
  }
  return out;
}

}  // namespace blowup
