#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "blowup/galerkin.hpp"

using namespace blowup;

TEST_CASE("coupling tensor entries match the structure constants") {
  CouplingTensor t = coupling_tensor(8);
  CHECK(coupling_entry(t, {0, 0}, {4, 0}, {4, 0}) == 384);
  CHECK(coupling_entry(t, {2, 2}, {4, 2}, {4, 0}) == 768);  // 768 * gamma(2,0,2)
  CHECK(coupling_entry(t, {8, 0}, {4, 0}, {4, 0}) == 1);
  CHECK(coupling_entry(t, {1, 0}, {4, 0}, {4, 0}) == 0);  // parity
  CHECK(coupling_entry(t, {0, 0}, {3, 0}, {3, 0}) == 48);
  // argument order must not matter
  CHECK(coupling_entry(t, {2, 2}, {4, 0}, {4, 2}) ==
        coupling_entry(t, {2, 2}, {4, 2}, {4, 0}));
  CHECK_THROWS(coupling_tensor(-1));
}

TEST_CASE("quadratic term with off-diagonal doubling") {
  Rhs rhs = make_rhs(6);
  std::vector<double> v(rhs.modes.size(), 0.0), out;
  double x = 0.3, y = -0.2;
  v[static_cast<std::size_t>(rhs.index.at({4, 0}))] = x;
  v[static_cast<std::size_t>(rhs.index.at({2, 0}))] = y;
  eval_rhs_serial(rhs, v, out);
  // target (2,0): 768 x^2 (diag) + 8 y^2 (diag) + 2*48 xy (off-diag pair)
  double want20 = 768 * x * x + 8 * y * y + 96 * x * y + 0.0 * y;
  CHECK(out[static_cast<std::size_t>(rhs.index.at({2, 0}))] ==
        doctest::Approx(want20).epsilon(1e-13));
  // target (0,0): linear part is empty here, quadratic 384 x^2 + 8 y^2 + 0 xy
  double want00 = 384 * x * x + 8 * y * y;
  CHECK(out[static_cast<std::size_t>(rhs.index.at({0, 0}))] ==
        doctest::Approx(want00).epsilon(1e-13));
  // pure linear mode: (1,0) has eigenvalue 1/2 and no even-parity forcing
  v.assign(v.size(), 0.0);
  v[static_cast<std::size_t>(rhs.index.at({1, 0}))] = 0.5;
  eval_rhs_serial(rhs, v, out);
  CHECK(out[static_cast<std::size_t>(rhs.index.at({1, 0}))] ==
        doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("parallel kernel agrees with the serial reference") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int D : {4, 8, 12}) {
    Rhs rhs = make_rhs(D);
    std::vector<double> v(rhs.modes.size()), a, b;
    for (double& x : v) x = unif(rng);
    eval_rhs_serial(rhs, v, a);
    eval_rhs_parallel(rhs, v, b);
    for (std::size_t i = 0; i < v.size(); ++i) {
      double scale = std::max(1.0, std::abs(a[i]));
      CHECK(std::abs(a[i] - b[i]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("small data follows the linear decay rate") {
  TruncatedState init;
  init.degree = 4;
  init.s = 0.0;
  init.values[{3, 0}] = 1e-8;
  Trajectory traj = integrate(init, 2.0, 1e-3, false);
  CHECK_FALSE(traj.blown_up);
  const TruncatedState& last = traj.states.back();
  CHECK(last.s == doctest::Approx(2.0).epsilon(1e-9));
  double want = 1e-8 * std::exp(-0.5 * last.s);
  CHECK(last.value({3, 0}) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("scalar mode reproduces the logistic blow-up time") {
  TruncatedState init;
  init.degree = 0;
  init.s = 0.0;
  init.values[{0, 0}] = 0.1;
  CHECK(blowup_monitor(init));
  Trajectory traj = integrate(init, 5.0, 1e-3, false);
  CHECK(traj.blown_up);
  // v' = v + v^2, v(0) = 0.1 blows up at s = log(11)
  CHECK(std::abs(traj.blowup_time - std::log(11.0)) < 5e-3);
  TruncatedState cooling;
  cooling.values[{0, 0}] = -0.1;
  CHECK_FALSE(blowup_monitor(cooling));
}

TEST_CASE("trajectory tracks a decaying eigenmode bound") {
  AsymSeries series(3);
  series.accumulate({3, 0}, {3, 0}, SymPoly(rat(1, 1000000)));
  TruncatedState init;
  init.degree = 4;
  init.s = 0.0;
  init.values[{3, 0}] = 1e-6;
  Trajectory traj = integrate(init, 3.0, 1e-3, true);
  auto dev = compare_with_expansion(traj, series, {});
  REQUIRE(dev.count({3, 0}) == 1);
  CHECK(dev.at({3, 0}) < 1e-6);
}

TEST_CASE("argument validation") {
  TruncatedState init;
  init.degree = 2;
  init.s = 1.0;
  init.values[{1, 0}] = 0.1;
  CHECK_THROWS(integrate(init, 2.0, 0.0));
  CHECK_THROWS(integrate(init, 0.5, 1e-2));
  init.values[{5, 0}] = 0.1;  // beyond the truncation degree
  CHECK_THROWS(integrate(init, 2.0, 1e-2));
}
