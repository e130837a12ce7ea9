#include "blowup/series.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blowup {

namespace {

double eval_hermite(int j, double x) {
  const auto& coeffs = hermite::coefficients(j);
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * x + it->get_d();
  return acc;
}

}  // namespace

const SymPoly& AsymSeries::coefficient(const OrderIndex& o,
                                       const ModeIndex& m) const {
  static const SymPoly zero;
  auto it = terms_.find({o, m});
  return it == terms_.end() ? zero : it->second;
}

void AsymSeries::accumulate(const OrderIndex& o, const ModeIndex& m,
                            const SymPoly& c) {
  if (o.k > order_ || c.is_zero()) return;
  if (o.i < 0 || m.a < 0 || m.b < 0)
    throw std::invalid_argument("negative series index");
  Key key{o, m};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AsymSeries AsymSeries::operator-() const {
  AsymSeries r(order_);
  for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
  return r;
}

AsymSeries& AsymSeries::operator+=(const AsymSeries& o) {
  if (order_ != o.order_)
    throw std::invalid_argument("mismatched truncation orders");
  for (const auto& [key, c] : o.terms_)
    accumulate(key.first, key.second, c);
  return *this;
}

AsymSeries multiply(const AsymSeries& u, const AsymSeries& v) {
  if (u.order_ != v.order_)
    throw std::invalid_argument("mismatched truncation orders");
  AsymSeries r(u.order_);
  for (const auto& [ku, cu] : u.terms_) {
    for (const auto& [kv, cv] : v.terms_) {
      // e^{(1-k1/2)s} e^{(1-k2/2)s} = e^{(1-(k1+k2-2)/2)s}
      int k = ku.first.k + kv.first.k - 2;
      if (k > r.order_) continue;
      int i = ku.first.i + kv.first.i;
      SymPoly coef = cu * cv;
      const auto& lin1 = hermite::product(ku.second.a, kv.second.a);
      const auto& lin2 = hermite::product(ku.second.b, kv.second.b);
      for (const auto& [a, w1] : lin1)
        for (const auto& [b, w2] : lin2)
          r.accumulate({k, i}, {a, b}, SymPoly(w1 * w2) * coef);
    }
  }
  return r;
}

AsymSeries apply_flow_residual(const AsymSeries& u) {
  AsymSeries r(u.order_);
  for (const auto& [key, c] : u.terms_) {
    const auto& [ord, mode] = key;
    // d_s(s^i e^{mu s}) = mu s^i e^{mu s} + i s^{i-1} e^{mu s}
    Rat mu = ord.exp_rate();
    r.accumulate(ord, mode, SymPoly(mu - mode.eigenvalue()) * c);
    if (ord.i > 0)
      r.accumulate({ord.k, ord.i - 1}, mode, SymPoly(Rat(ord.i)) * c);
  }
  AsymSeries sq = multiply(u, u);
  for (const auto& [key, c] : sq.terms_)
    r.accumulate(key.first, key.second, -c);
  return r;
}

std::map<OrderIndex, SymPoly> AsymSeries::project(const ModeIndex& mode) const {
  std::map<OrderIndex, SymPoly> out;
  for (const auto& [key, c] : terms_)
    if (key.second == mode) out.emplace(key.first, c);
  return out;
}

double AsymSeries::evaluate(const std::map<Symbol, Rat>& bindings, double y1,
                            double y2, double s) const {
  double acc = 0.0;
  for (const auto& [key, c] : terms_) {
    SymPoly bound = c.substitute(bindings);
    if (!bound.is_constant()) throw std::invalid_argument("unbound symbols");
    double coef = bound.constant_value().get_d();
    const auto& [ord, mode] = key;
    acc += coef * std::pow(s, ord.i) *
           std::exp(ord.exp_rate().get_d() * s) * eval_hermite(mode.a, y1) *
           eval_hermite(mode.b, y2);
  }
  return acc;
}

double AsymSeries::evaluate_mode(const ModeIndex& mode,
                                 const std::map<Symbol, Rat>& bindings,
                                 double s) const {
  double acc = 0.0;
  for (const auto& [ord, c] : project(mode)) {
    SymPoly bound = c.substitute(bindings);
    if (!bound.is_constant()) throw std::invalid_argument("unbound symbols");
    acc += bound.constant_value().get_d() * std::pow(s, ord.i) *
           std::exp(ord.exp_rate().get_d() * s);
  }
  return acc;
}

std::string AsymSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    const auto& [ord, mode] = key;
    if (!first) out << "\n+ ";
    first = false;
    out << "(" << c.str() << ")";
    if (ord.i == 1)
      out << " * s";
    else if (ord.i > 1)
      out << " * s^" << ord.i;
    Rat mu = ord.exp_rate();
    if (mu != 0) out << " * e^{" << rat_str(mu) << " s}";
    out << " * h" << mode.a << "(y1)h" << mode.b << "(y2)";
  }
  return out.str();
}

nlohmann::json AsymSeries::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [key, c] : terms_) {
    const auto& [ord, mode] = key;
    arr.push_back({{"k", ord.k},
                   {"i", ord.i},
                   {"a", mode.a},
                   {"b", mode.b},
                   {"coef", c.to_json()}});
  }
  return nlohmann::json{{"M", order_}, {"terms", arr}};
}

AsymSeries AsymSeries::from_json(const nlohmann::json& j) {
  AsymSeries s(j.at("M").get<int>());
  for (const auto& t : j.at("terms"))
    s.accumulate({t.at("k").get<int>(), t.at("i").get<int>()},
                 {t.at("a").get<int>(), t.at("b").get<int>()},
                 SymPoly::from_json(t.at("coef")));
  return s;
}

}  // namespace blowup
