#ifndef BLOWUP_GALERKIN_HPP
#define BLOWUP_GALERKIN_HPP

#include <vector>

#include "blowup/series.hpp"

namespace blowup {

// Mode coefficients v_{a,b} (total degree <= D) at similarity time s.
struct TruncatedState {
  int degree = 0;
  double s = 0.0;
  std::map<ModeIndex, double> values;

  double value(const ModeIndex& m) const {
    auto it = values.find(m);
    return it == values.end() ? 0.0 : it->second;
  }
};

// Sparse symmetric quadratic coupling: entry for target (c,d) and source
// pair {(a1,b1),(a2,b2)} equals gamma(a1,a2,c) * gamma(b1,b2,d).
struct CouplingTensor {
  int degree = 0;
  struct Entry {
    ModeIndex target, src1, src2;
    Rat weight;
  };
  std::vector<Entry> entries;
};

CouplingTensor coupling_tensor(int D);
Rat coupling_entry(const CouplingTensor& t, const ModeIndex& target,
                   const ModeIndex& s1, const ModeIndex& s2);

struct Trajectory {
  std::vector<TruncatedState> states;
  bool blown_up = false;
  double blowup_time = 0.0;  // last time before the overflow guard tripped
  double step = 0.0;         // reported uncertainty of blowup_time
};

// Fixed-step classical RK4 on v'_{c,d} = (1-(c+d)/2) v_{c,d} + sum Q v v,
// aborting cleanly once any |v| exceeds the overflow guard (1e6).
// use_parallel routes the quadratic term through the OpenMP kernel.
Trajectory integrate(const TruncatedState& state0, double s1, double step,
                     bool use_parallel = true);

// Quadratic RHS evaluation, exposed for the kernel benchmark/tests.
// modes lists the state layout; q holds (target index, src1, src2, weight)
// in flattened form prepared by make_rhs.
struct Rhs {
  int degree = 0;
  std::vector<ModeIndex> modes;
  std::map<ModeIndex, int> index;
  std::vector<double> lambda;  // per-mode eigenvalue 1-(a+b)/2
  struct QEntry {
    int target, src1, src2;
    double weight;
  };
  std::vector<QEntry> quad;
};
Rhs make_rhs(int D);
void eval_rhs_serial(const Rhs& rhs, const std::vector<double>& v,
                     std::vector<double>& out);
void eval_rhs_parallel(const Rhs& rhs, const std::vector<double>& v,
                       std::vector<double>& out);

// Blow-up criterion: mean of w against the Gaussian weight exceeds the
// steady state, i.e. v_{0,0} > 0 strictly.
bool blowup_monitor(const TruncatedState& state);

// Per-mode max relative deviation between the trajectory and the bound
// series, with absolute floor 1e-12 against division by ~0.
std::map<ModeIndex, double> compare_with_expansion(
    const Trajectory& traj, const AsymSeries& series,
    const std::map<Symbol, Rat>& bindings);

}  // namespace blowup

#endif
