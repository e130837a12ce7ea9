#include "blowup/sympoly.hpp"

#include <sstream>
#include <stdexcept>

namespace blowup {

Symbol Symbol::C(int k, int j) {
  if (k < 2 || j < 0 || j > k)
    throw std::invalid_argument("Symbol::C requires k >= 2 and 0 <= j <= k");
  return Symbol{Kind::C, k, j};
}

std::string Symbol::name() const {
  switch (kind) {
    case Kind::C:
      return "C[" + std::to_string(k) + "," + std::to_string(j) + "]";
    case Kind::A:
      return "A";
    case Kind::L:
      return "L";
    case Kind::Psi:
      return "psi";
  }
  return "?";
}

Symbol Symbol::parse(const std::string& s) {
  if (s == "A") return A();
  if (s == "L") return L();
  if (s == "psi") return Psi();
  if (s.size() >= 6 && s.rfind("C[", 0) == 0 && s.back() == ']') {
    auto comma = s.find(',');
    if (comma != std::string::npos) {
      int k = std::stoi(s.substr(2, comma - 2));
      int j = std::stoi(s.substr(comma + 1, s.size() - comma - 2));
      return C(k, j);
    }
  }
  throw std::invalid_argument("bad symbol: '" + s + "'");
}

SymPoly::SymPoly(const Rat& value) {
  if (value != 0) terms_[{}] = value;
}

SymPoly::SymPoly(const Symbol& s) { terms_[{{s, 1}}] = 1; }

SymPoly SymPoly::monomial(const Monomial& m, const Rat& coef) {
  SymPoly p;
  if (coef != 0) {
    Monomial clean;
    for (const auto& [sym, e] : m)
      if (e != 0) clean[sym] = e;
    p.terms_[clean] = coef;
  }
  return p;
}

bool SymPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat SymPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("SymPoly is not constant");
  return terms_.begin()->second;
}

SymPoly SymPoly::operator-() const {
  SymPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) { return *this += -o; }

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (const auto& [sym, e] : mb) {
        int& slot = m[sym];
        slot += e;
        if (slot == 0) m.erase(sym);
      }
      auto it = r.terms_.find(m);
      if (it == r.terms_.end()) {
        r.terms_.emplace(std::move(m), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

SymPoly& SymPoly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

SymPoly SymPoly::pow(unsigned e) const {
  SymPoly r(Rat(1));
  SymPoly b = *this;
  for (unsigned k = e; k; k >>= 1) {
    if (k & 1) r *= b;
    if (k > 1) b *= b;
  }
  return r;
}

SymPoly SymPoly::substitute(const std::map<Symbol, Rat>& bindings) const {
  SymPoly r;
  for (const auto& [m, c] : terms_) {
    Rat coef = c;
    Monomial rest;
    for (const auto& [sym, e] : m) {
      auto it = bindings.find(sym);
      if (it == bindings.end())
        rest[sym] = e;
      else
        coef *= rat_pow(it->second, static_cast<unsigned>(e));
    }
    r += monomial(rest, coef);
  }
  return r;
}

int SymPoly::degree_in(const Symbol& s) const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(s);
    if (it != m.end() && it->second > d) d = it->second;
  }
  return d;
}

int SymPoly::min_power(const Symbol& s) const {
  if (terms_.empty()) return 0;
  int d = -1;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(s);
    int e = it == m.end() ? 0 : it->second;
    if (d < 0 || e < d) d = e;
  }
  return d;
}

SymPoly SymPoly::divided_by(const Symbol& s, int e) const {
  SymPoly r;
  for (const auto& [m, c] : terms_) {
    Monomial q = m;
    auto it = q.find(s);
    int have = it == q.end() ? 0 : it->second;
    if (have < e) throw std::logic_error("divided_by: exponent deficit");
    if (have == e) {
      if (it != q.end()) q.erase(it);
    } else {
      it->second = have - e;
    }
    r.terms_[q] = c;
  }
  return r;
}

SymPoly SymPoly::coefficient_of(const Symbol& s, int e) const {
  SymPoly r;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(s);
    int have = it == m.end() ? 0 : it->second;
    if (have != e) continue;
    Monomial q = m;
    if (it != m.end()) q.erase(s);
    r += monomial(q, c);
  }
  return r;
}

std::string SymPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat coef = c;
    if (first) {
      if (coef < 0) {
        out << "-";
        coef = -coef;
      }
    } else {
      out << (coef < 0 ? " - " : " + ");
      if (coef < 0) coef = -coef;
    }
    first = false;
    bool printed = false;
    if (coef != 1 || m.empty()) {
      out << rat_str(coef);
      printed = true;
    }
    for (const auto& [sym, e] : m) {
      if (printed) out << "*";
      out << sym.name();
      if (e != 1) out << "^" << e;
      printed = true;
    }
  }
  return out.str();
}

nlohmann::json SymPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json pows = nlohmann::json::object();
    for (const auto& [sym, e] : m) pows[sym.name()] = e;
    arr.push_back({{"coef", rat_str(c)}, {"pows", pows}});
  }
  return nlohmann::json{{"terms", arr}};
}

SymPoly SymPoly::from_json(const nlohmann::json& j) {
  SymPoly p;
  for (const auto& t : j.at("terms")) {
    Monomial m;
    for (const auto& [name, e] : t.at("pows").items())
      m[Symbol::parse(name)] = e.get<int>();
    p += monomial(m, rat_parse(t.at("coef").get<std::string>()));
  }
  return p;
}

}  // namespace blowup
