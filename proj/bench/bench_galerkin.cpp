// Timing comparison of the serial and OpenMP quadratic-RHS kernels.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "blowup/galerkin.hpp"

using namespace blowup;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const Rhs& rhs, const std::vector<double>& v, int reps,
               bool parallel) {
  std::vector<double> out;
  // warm-up
  if (parallel)
    eval_rhs_parallel(rhs, v, out);
  else
    eval_rhs_serial(rhs, v, out);
  auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) {
    if (parallel)
      eval_rhs_parallel(rhs, v, out);
    else
      eval_rhs_serial(rhs, v, out);
  }
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
             .count() /
         reps;
}

}  // namespace

int main() {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%8s %10s %12s %14s %14s %8s\n", "degree", "modes", "couplings",
              "serial(ms)", "parallel(ms)", "speedup");
  for (int D : {8, 16, 24, 32}) {
    Rhs rhs = make_rhs(D);
    std::vector<double> v(rhs.modes.size());
    for (double& x : v) x = unif(rng);
    int reps = D <= 16 ? 2000 : 200;
    double serial = time_ms(rhs, v, reps, false);
    double parallel = time_ms(rhs, v, reps, true);
    std::printf("%8d %10zu %12zu %14.4f %14.4f %8.2f\n", D, rhs.modes.size(),
                rhs.quad.size(), serial, parallel, serial / parallel);
  }
  return 0;
}
