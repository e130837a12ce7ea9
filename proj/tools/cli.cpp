// Command-line surface over the expansion/recentering/regime/Galerkin
// pipeline. All symbolic outputs are exact rationals ("p/q"); floating point
// appears only in the galerkin CSV.
#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blowup/galerkin.hpp"
#include "blowup/goldens.hpp"
#include "blowup/regimes.hpp"

namespace {

using namespace blowup;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// one factor list like "A*Bn*e(tau/2)", or "0" for a disabled dimension
ShiftDim parse_shift_dim(const std::string& spec) {
  ShiftDim dim;
  if (spec == "0") {
    dim.zero = true;
    return dim;
  }
  for (const std::string& tok : split(spec, '*')) {
    if (tok.size() > 2 && tok.front() == 'e' && tok[1] == '(' &&
        tok.back() == ')') {
      std::string inner = tok.substr(2, tok.size() - 3);
      auto pos = inner.find("tau");
      if (pos == std::string::npos)
        throw std::invalid_argument("shift exponent must mention tau: " + tok);
      std::string pre = inner.substr(0, pos);
      std::string post = inner.substr(pos + 3);
      Rat rate = 1;
      if (pre == "-")
        rate = -1;
      else if (!pre.empty())
        rate = rat_parse(pre);
      if (!post.empty()) {
        if (post.front() != '/')
          throw std::invalid_argument("bad shift exponent: " + tok);
        rate /= rat_parse(post.substr(1));
      }
      dim.taurate += rate;
      continue;
    }
    std::string base = tok;
    int exp = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      base = tok.substr(0, caret);
      exp = std::stoi(tok.substr(caret + 1));
    }
    if (base == "A")
      dim.apow += exp;
    else if (base == "Bn")
      dim.bnpow += exp;
    else
      throw std::invalid_argument("unknown shift factor: " + tok);
  }
  return dim;
}

ShiftSpec parse_shift(const std::string& spec) {
  auto dims = split(spec, ',');
  if (dims.size() != 2)
    throw std::invalid_argument("shift needs two comma-separated dimensions");
  ShiftSpec out;
  out.dim1 = parse_shift_dim(dims[0]);
  out.dim2 = parse_shift_dim(dims[1]);
  return out;
}

ModeIndex parse_mode(const std::string& tok) {
  if (auto colon = tok.find(':'); colon != std::string::npos)
    return {std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))};
  if (tok.size() == 2 && std::isdigit(static_cast<unsigned char>(tok[0])) &&
      std::isdigit(static_cast<unsigned char>(tok[1])))
    return {tok[0] - '0', tok[1] - '0'};
  throw std::invalid_argument("bad mode '" + tok + "' (use e.g. 10 or 1:0)");
}

// comma-split that ignores the comma inside C[k,j]
std::vector<std::string> split_bindings(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::map<Symbol, Rat> parse_bindings(const std::string& spec) {
  std::map<Symbol, Rat> out;
  if (spec.empty()) return out;
  for (const std::string& item : split_bindings(spec)) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("binding needs NAME=VALUE: " + item);
    out[Symbol::parse(item.substr(0, eq))] = rat_parse(item.substr(eq + 1));
  }
  return out;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

int run_paper_check() {
  int failures = 0;
  for (const auto& res : run_golden_suite()) {
    std::cout << (res.passed ? "PASS  " : "FAIL  ") << res.name << " ("
              << static_cast<long>(res.ms) << " ms)";
    if (!res.passed) std::cout << " -- " << res.detail;
    std::cout << "\n";
    if (!res.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

const char* origin_name(RegimeOrigin o) {
  switch (o) {
    case RegimeOrigin::subquadratic_excluded: return "subquadratic";
    case RegimeOrigin::quadratic: return "quadratic";
    default: return "power-law";
  }
}

const char* root_status_name(RootStatus s) {
  switch (s) {
    case RootStatus::positive_root: return "positive-root";
    case RootStatus::no_positive_root: return "no-positive-root";
    default: return "symbolic";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact asymptotic-expansion calculus with a numerical "
               "Galerkin cross-check"};
  app.require_subcommand(0, 1);

  bool paper_check = false;
  int threads = 0;
  app.add_flag("--paper-check", paper_check,
               "run the built-in golden suite and print a pass/fail table");
  app.add_option("--threads", threads, "OpenMP thread count hint");

  auto* cmd_hermite =
      app.add_subcommand("hermite", "coefficient list of h_j, lowest first");
  int herm_j = 0;
  bool herm_json = false;
  cmd_hermite->add_option("j", herm_j, "degree")->required();
  cmd_hermite->add_flag("--json", herm_json);

  auto* cmd_gamma = app.add_subcommand(
      "gamma", "triple-product structure constant gamma_{l,m,n}");
  int g_l = 0, g_m = 0, g_n = 0;
  cmd_gamma->add_option("l", g_l)->required();
  cmd_gamma->add_option("m", g_m)->required();
  cmd_gamma->add_option("n", g_n)->required();

  auto* cmd_expand =
      app.add_subcommand("expand", "iterative expansion to a given grade");
  int ex_m = 4, ex_order = 0;
  std::string ex_seed, ex_zero, ex_format = "text";
  cmd_expand->add_option("--m", ex_m, "profile order (even, >= 4)");
  cmd_expand->add_option("--seed", ex_seed,
                         "leading coefficients, e.g. C[4,0] or C[4,0]=-1/2");
  cmd_expand->add_option("--zero", ex_zero,
                         "free constants pinned to zero, e.g. C[5,3],C[5,4]");
  cmd_expand->add_option("--order", ex_order, "truncation grade M")
      ->required();
  cmd_expand->add_option("--format", ex_format)
      ->check(CLI::IsMember({"text", "json"}));

  auto* cmd_table = app.add_subcommand(
      "recenter-table", "projection table of a recentered series");
  std::string rt_series, rt_shift = "A*Bn*e(tau/2),A*e(tau/2)";
  std::string rt_modes = "00,10,01", rt_theta, rt_alpha = "0";
  bool rt_psi = false, rt_json = false;
  cmd_table->add_option("--series", rt_series, "series JSON file")->required();
  cmd_table->add_option("--shift", rt_shift, "per-dimension shift amplitudes");
  cmd_table->add_option("--modes", rt_modes, "target modes, e.g. 00,10,01");
  cmd_table->add_option("--theta", rt_theta,
                        "bind Bn = L A^{2 theta} e^{-theta sn} sn^alpha");
  cmd_table->add_option("--alpha", rt_alpha, "secular power in the binding");
  cmd_table->add_flag("--psi", rt_psi, "carry the refinement factor psi");
  cmd_table->add_flag("--json", rt_json);

  auto* cmd_sets =
      app.add_subcommand("exponent-sets", "candidate exponent sets E1,E2,E3");
  int es_m = 6;
  bool es_json = false;
  cmd_sets->add_option("--m", es_m)->required();
  cmd_sets->add_flag("--json", es_json);

  auto* cmd_regimes =
      app.add_subcommand("regimes", "admissible (beta, alpha, L) regimes");
  int rg_m = 4;
  std::string rg_bind;
  bool rg_json = false;
  cmd_regimes->add_option("--m", rg_m)->required();
  cmd_regimes->add_option("--bind", rg_bind,
                          "coefficient bindings, e.g. C[5,3]=-2,C[4,0]=-1");
  cmd_regimes->add_flag("--json", rg_json);

  auto* cmd_galerkin =
      app.add_subcommand("galerkin", "truncated mode system, RK4 trajectory");
  int ga_degree = 8;
  std::string ga_init, ga_expect;
  double ga_until = 5.0, ga_step = 1e-3;
  bool ga_serial = false;
  cmd_galerkin->add_option("--degree", ga_degree, "truncation degree D");
  cmd_galerkin->add_option("--init", ga_init, "initial state JSON file")
      ->required();
  cmd_galerkin->add_option("--until", ga_until, "final time");
  cmd_galerkin->add_option("--step", ga_step, "RK4 step");
  cmd_galerkin->add_option("--expect", ga_expect,
                           "series JSON to compare the trajectory against");
  cmd_galerkin->add_flag("--serial", ga_serial,
                         "use the serial reference kernel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (paper_check) return run_paper_check();
    if (app.get_subcommands().empty()) {
      std::cerr << "a subcommand is required (see --help)\n";
      return 2;
    }

    if (cmd_hermite->parsed()) {
      const auto& coeffs = hermite::coefficients(herm_j);
      if (herm_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : coeffs) arr.push_back(rat_str(c));
        std::cout << nlohmann::json{{"j", herm_j}, {"coefficients", arr}}
                  << "\n";
      } else {
        for (std::size_t i = 0; i < coeffs.size(); ++i)
          std::cout << (i ? "," : "") << rat_str(coeffs[i]);
        std::cout << "\n";
      }
      return 0;
    }

    if (cmd_gamma->parsed()) {
      std::cout << rat_str(hermite::gamma(g_l, g_m, g_n)) << "\n";
      return 0;
    }

    if (cmd_expand->parsed()) {
      Seed seed;
      seed.m = ex_m;
      if (!ex_seed.empty())
        for (const std::string& item : split(ex_seed, ',')) {
          auto eq = item.find('=');
          Symbol sym = Symbol::parse(item.substr(0, eq));
          if (sym.kind != Symbol::Kind::C || sym.k != ex_m)
            throw std::domain_error("seed must use grade-m coefficients: " +
                                    item);
          seed.leading[sym.j] = (eq == std::string::npos)
                                    ? SymPoly(sym)
                                    : SymPoly(rat_parse(item.substr(eq + 1)));
        }
      if (!ex_zero.empty())
        for (const std::string& item : split(ex_zero, ',')) {
          Symbol sym = Symbol::parse(item);
          if (sym.kind != Symbol::Kind::C)
            throw std::domain_error("zero list must name C[k,j] constants");
          seed.zero_set.insert({sym.k, sym.j});
        }
      AsymSeries series = expand(seed, ex_order);
      if (ex_format == "json")
        std::cout << series.to_json().dump(2) << "\n";
      else
        std::cout << series.str() << "\n";
      return 0;
    }

    if (cmd_table->parsed()) {
      AsymSeries series = AsymSeries::from_json(load_json(rt_series));
      ShiftSpec shift = parse_shift(rt_shift);
      if (!rt_theta.empty())
        shift.structured =
            StructuredBn{rat_parse(rt_theta), rat_parse(rt_alpha), rt_psi};
      std::vector<ModeIndex> modes;
      for (const std::string& tok : split(rt_modes, ','))
        modes.push_back(parse_mode(tok));
      ModeTable table = mode_table(series, shift, modes);
      if (rt_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& mode : modes) {
          nlohmann::json terms = nlohmann::json::array();
          for (const auto& t : table[mode]) terms.push_back(t.to_json());
          arr.push_back(
              {{"a", mode.a}, {"b", mode.b}, {"terms", std::move(terms)}});
        }
        std::cout << nlohmann::json{{"modes", arr}}.dump(2) << "\n";
      } else {
        for (const auto& mode : modes) {
          std::cout << "mode (" << mode.a << "," << mode.b << "):\n";
          for (const auto& t : table[mode]) std::cout << "  " << t.str() << "\n";
        }
      }
      return 0;
    }

    if (cmd_sets->parsed()) {
      ExponentSets sets = exponent_sets(es_m);
      auto list = [](const std::set<Rat>& s) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Rat& v : s) arr.push_back(rat_str(v));
        return arr;
      };
      if (es_json) {
        nlohmann::json powers;
        for (const auto& [k, i] : sets.resonance_powers)
          powers[std::to_string(k)] = i;
        std::cout << nlohmann::json{{"E1", list(sets.E1)},
                                    {"E2", list(sets.E2)},
                                    {"E3", list(sets.E3)},
                                    {"resonance_powers", powers}}
                         .dump(2)
                  << "\n";
      } else {
        auto line = [](const char* name, const std::set<Rat>& s) {
          std::cout << name << ":";
          for (const Rat& v : s) std::cout << " " << rat_str(v);
          std::cout << "\n";
        };
        line("E1", sets.E1);
        line("E2", sets.E2);
        line("E3", sets.E3);
      }
      return 0;
    }

    if (cmd_regimes->parsed()) {
      RegimeConfig cfg;
      cfg.bindings = parse_bindings(rg_bind);
      auto results = (rg_m == 4)
                         ? regime_search_m4(default_provider(), cfg)
                         : regime_search_general(rg_m, default_provider(), cfg);
      if (rg_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) {
          nlohmann::json item{{"beta", rat_str(r.beta)},
                              {"alpha", rat_str(r.alpha)},
                              {"origin", origin_name(r.origin)},
                              {"constraint", r.constraint.to_json()},
                              {"root_status", root_status_name(r.root_status)},
                              {"note", r.note}};
          if (r.root) item["root"] = rat_str(*r.root);
          arr.push_back(std::move(item));
        }
        std::cout << nlohmann::json{{"regimes", arr}}.dump(2) << "\n";
      } else {
        for (const auto& r : results) {
          std::cout << "beta=" << rat_str(r.beta) << " alpha="
                    << rat_str(r.alpha) << " origin=" << origin_name(r.origin);
          if (!r.constraint.is_zero())
            std::cout << " constraint=" << r.constraint.str();
          if (r.root_status != RootStatus::symbolic) {
            std::cout << " root_status=" << root_status_name(r.root_status);
            if (r.root)
              std::cout << " root=" << rat_str(*r.root);
            else if (r.root_status == RootStatus::positive_root)
              std::cout << " root~=" << r.root_approx;
          }
          if (!r.note.empty()) std::cout << "  # " << r.note;
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (cmd_galerkin->parsed()) {
      nlohmann::json init = load_json(ga_init);
      TruncatedState state;
      state.degree = init.value("degree", ga_degree);
      if (init.contains("s")) {
        const auto& s = init.at("s");
        state.s = s.is_string() ? rat_parse(s.get<std::string>()).get_d()
                                : s.get<double>();
      }
      for (const auto& v : init.at("values")) {
        const auto& val = v.at("value");
        state.values[{v.at("a").get<int>(), v.at("b").get<int>()}] =
            val.is_string() ? rat_parse(val.get<std::string>()).get_d()
                            : val.get<double>();
      }
      state.degree = ga_degree;
      Trajectory traj = integrate(state, ga_until, ga_step, !ga_serial);

      Rhs rhs = make_rhs(ga_degree);
      std::cout << "s";
      for (const auto& mode : rhs.modes)
        std::cout << ",v" << mode.a << "_" << mode.b;
      std::cout << "\n";
      char buf[32];
      for (const auto& st : traj.states) {
        std::snprintf(buf, sizeof buf, "%.12g", st.s);
        std::cout << buf;
        for (const auto& mode : rhs.modes) {
          std::snprintf(buf, sizeof buf, "%.12g", st.value(mode));
          std::cout << "," << buf;
        }
        std::cout << "\n";
      }
      if (traj.blown_up) {
        std::snprintf(buf, sizeof buf, "%.12g", traj.blowup_time);
        std::cout << "# blowup_time " << buf << " +- " << traj.step << "\n";
      }
      if (!ga_expect.empty()) {
        AsymSeries series = AsymSeries::from_json(load_json(ga_expect));
        for (const auto& [mode, dev] :
             compare_with_expansion(traj, series, {})) {
          std::snprintf(buf, sizeof buf, "%.6g", dev);
          std::cout << "# deviation " << mode.a << " " << mode.b << " " << buf
                    << "\n";
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
