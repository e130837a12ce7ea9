#include "blowup/hermite.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace blowup::hermite {

namespace {

std::mutex memo_mutex;

void check_degree(int j) {
  if (j < 0) throw std::invalid_argument("hermite degree must be nonnegative");
  if (j > degree_cap())
    throw std::invalid_argument("hermite degree exceeds cap " +
                                std::to_string(degree_cap()));
}

}  // namespace

int degree_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("BLOWUPLAB_DEGREE_CAP")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 64;
  }();
  return cap;
}

const DensePoly& coefficients(int j) {
  check_degree(j);
  static std::map<int, DensePoly> memo;
  std::lock_guard lock(memo_mutex);
  auto it = memo.find(j);
  if (it != memo.end()) return it->second;

  DensePoly p(static_cast<std::size_t>(j) + 1, Rat(0));
  for (int i = 0; 2 * i <= j; ++i) {
    mpz_class c = factorial(j) / (factorial(i) * factorial(j - 2 * i));
    if (i % 2) c = -c;
    p[static_cast<std::size_t>(j - 2 * i)] = Rat(c);
  }
  return memo.emplace(j, std::move(p)).first->second;
}

Rat norm_sq(int j) {
  check_degree(j);
  return Rat(pow2(static_cast<unsigned>(j)) * factorial(j));
}

const std::map<int, Rat>& product(int a, int b) {
  check_degree(a);
  check_degree(b);
  static std::map<std::pair<int, int>, std::map<int, Rat>> memo;
  if (a > b) std::swap(a, b);
  std::lock_guard lock(memo_mutex);
  auto it = memo.find({a, b});
  if (it != memo.end()) return it->second;

  std::map<int, Rat> expansion;
  for (int r = 0; r <= a; ++r) {
    mpz_class c = factorial(r) * binomial(a, r) * binomial(b, r) *
                  pow2(static_cast<unsigned>(r));
    expansion[a + b - 2 * r] = Rat(c);
  }
  return memo.emplace(std::make_pair(a, b), std::move(expansion)).first->second;
}

Rat gamma(int l, int m, int n) {
  if (l < 0 || m < 0 || n < 0) return 0;
  const auto& exp = product(l, m);
  auto it = exp.find(n);
  return it == exp.end() ? Rat(0) : it->second;
}

std::map<int, SymPoly> translate(int j, const SymPoly& shift) {
  check_degree(j);
  std::map<int, SymPoly> out;
  SymPoly shift_pow(Rat(1));
  for (int m = 0; m <= j; ++m) {
    out[j - m] = SymPoly(Rat(binomial(j, m))) * shift_pow;
    if (m < j) shift_pow *= shift;
  }
  return out;
}

Rat weight_moment(int n) {
  if (n < 0) throw std::invalid_argument("negative moment");
  if (n % 2) return 0;
  // (2k-1)!! 2^k for n = 2k
  mpz_class r = 1;
  for (int i = 1; i < n; i += 2) r *= i;
  return Rat(r * pow2(static_cast<unsigned>(n / 2)));
}

}  // namespace blowup::hermite
