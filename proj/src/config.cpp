#include "psido/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "default_config.hpp"

namespace psido {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) fail(where, "missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(where + "." + key, e.what());
  }
}

double positive(double v, const std::string& where) {
  if (!(v > 0.0)) fail(where, "must be positive");
  return v;
}

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(where, "expected a number or a [re, im] pair");
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "matrix must be a non-empty array of rows");
  const int k = static_cast<int>(j.size());
  Matrix m(k, k);
  for (int r = 0; r < k; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != k) fail(where, "matrix must be square");
    for (int c = 0; c < k; ++c) m(r, c) = parse_complex(j[r][c], where);
  }
  return m;
}

// {"trig": [[n, re, im], ...], "matrix": [[...]]}: sum_n (re + i im) e^{inx} M.
TrigLoop parse_loop_term(const json& j, int k, const std::string& where, const std::set<std::string>& extra = {}) {
  std::set<std::string> allowed{"trig", "matrix"};
  allowed.insert(extra.begin(), extra.end());
  check_keys(j, where, allowed);
  Matrix M = Matrix::Identity(k, k);
  if (j.contains("matrix")) {
    M = parse_matrix(j["matrix"], where + ".matrix");
    if (M.rows() != k) fail(where + ".matrix", "size does not match the symbol's k = " + std::to_string(k));
  }
  if (!j.contains("trig") || !j["trig"].is_array()) fail(where, "missing 'trig' coefficient list");
  TrigLoop loop(k);
  for (const auto& c : j["trig"]) {
    if (!c.is_array() || c.size() != 3 || !c[0].is_number_integer()) fail(where + ".trig", "entries are [n, re, im]");
    loop += TrigLoop::monomial(c[0].get<int>(), Complex(c[1].get<double>(), c[2].get<double>()) * M);
  }
  return loop;
}

TrigLoop parse_loop(const json& j, int k, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty list of loop terms");
  TrigLoop loop(k);
  for (std::size_t i = 0; i < j.size(); ++i) loop += parse_loop_term(j[i], k, where + "[" + std::to_string(i) + "]");
  return loop;
}

Profile parse_factor(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind")) fail(where, "profile factor needs a 'kind'");
  const std::string kind = get<std::string>(j, "kind", where);
  Profile p;
  try {
    switch (profile_kind_from_string(kind)) {
      case ProfileKind::PositiveSide:
        check_keys(j, where, {"kind"});
        return Profile::positive_side();
      case ProfileKind::NegativeSide:
        check_keys(j, where, {"kind"});
        return Profile::negative_side();
      case ProfileKind::Bump:
        check_keys(j, where, {"kind", "radius", "scale"});
        p = Profile::bump(get<double>(j, "radius", where));
        break;
      case ProfileKind::Step:
        check_keys(j, where, {"kind", "lo", "hi", "scale"});
        p = Profile::step(get<double>(j, "lo", where), get<double>(j, "hi", where));
        break;
      case ProfileKind::Rational:
        check_keys(j, where, {"kind", "scale"});
        p = Profile::rational();
        break;
      case ProfileKind::RationalZero:
        check_keys(j, where, {"kind", "scale"});
        p = Profile::rational_zero();
        break;
      case ProfileKind::Gamma:
        check_keys(j, where, {"kind", "s", "i", "scale"});
        p = Profile::gamma(get<double>(j, "s", where), get<int>(j, "i", where));
        break;
    }
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  if (j.contains("scale")) p = p.dilate(positive(get<double>(j, "scale", where), where + ".scale"));
  return p;
}

Profile parse_profile_json(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "profile must be a list of factors");
  Profile p = Profile::one();
  for (std::size_t i = 0; i < j.size(); ++i) p = p * parse_factor(j[i], where + "[" + std::to_string(i) + "]");
  return p;
}

// Matrix size: explicit "k", else the first matrix found, else the default.
int infer_k(const json& j, int default_k) {
  if (j.contains("k")) return j["k"].get<int>();
  for (const char* key : {"terms", "plus", "minus", "fiber_constant"}) {
    if (!j.contains(key) || !j[key].is_array()) continue;
    for (const auto& t : j[key]) {
      if (t.is_object() && t.contains("matrix") && t["matrix"].is_array()) return static_cast<int>(t["matrix"].size());
    }
  }
  return default_k;
}

SymbolExpr parse_symbol_json(const json& j, int default_k, const std::string& where) {
  if (!j.is_object()) fail(where, "symbol must be an object");
  const std::string cls_name = get<std::string>(j, "class", where);
  SymbolClass cls;
  try {
    cls = symbol_class_from_string(cls_name);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  const int k = infer_k(j, default_k);
  if (k < 1) fail(where, "k must be >= 1");
  try {
    if (cls == SymbolClass::HomogeneousZero) {
      if (j.contains("fiber_constant")) {
        check_keys(j, where, {"class", "k", "fiber_constant"});
        return SymbolExpr::fiber_constant(parse_loop(j["fiber_constant"], k, where + ".fiber_constant"));
      }
      check_keys(j, where, {"class", "k", "plus", "minus"});
      if (!j.contains("plus") || !j.contains("minus")) fail(where, "homogeneous symbol needs 'plus' and 'minus'");
      return SymbolExpr::homogeneous(parse_loop(j["plus"], k, where + ".plus"),
                                     parse_loop(j["minus"], k, where + ".minus"));
    }
    check_keys(j, where, {"class", "k", "terms"});
    if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) fail(where, "needs a non-empty 'terms' list");
    std::vector<SymbolTerm> terms;
    for (std::size_t i = 0; i < j["terms"].size(); ++i) {
      const std::string w = where + ".terms[" + std::to_string(i) + "]";
      const json& t = j["terms"][i];
      TrigLoop loop = parse_loop_term(t, k, w, {"profile"});
      Profile p = t.contains("profile") ? parse_profile_json(t["profile"], w + ".profile") : Profile::one();
      terms.push_back({std::move(loop), std::move(p)});
    }
    return SymbolExpr(k, cls, std::move(terms));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

std::vector<double> positive_list(const json& j, const std::string& key, const std::string& where) {
  auto v = get<std::vector<double>>(j, key, where);
  if (v.empty()) fail(where + "." + key, "must not be empty");
  for (double x : v) positive(x, where + "." + key);
  return v;
}

const std::string& known_symbol(const ExperimentConfig& c, const std::string& name, const std::string& where) {
  if (!c.symbols.count(name)) fail(where, "unknown symbol '" + name + "'");
  return name;
}

void parse_tolerances(const json& j, Tolerances& t) {
  const std::string w = "tolerances";
  check_keys(j, w,
             {"tol_compact", "eps_rank", "slope_max", "ratio_max", "t0_factor", "equ2_zero", "exact", "zero",
              "higson_tol", "round_window"});
  t.tol_compact = positive(get<double>(j, "tol_compact", w), w + ".tol_compact");
  t.eps_rank = positive(get<double>(j, "eps_rank", w), w + ".eps_rank");
  t.slope_max = get<double>(j, "slope_max", w);
  t.ratio_max = positive(get<double>(j, "ratio_max", w), w + ".ratio_max");
  t.t0_factor = positive(get<double>(j, "t0_factor", w), w + ".t0_factor");
  t.equ2_zero = positive(get<double>(j, "equ2_zero", w), w + ".equ2_zero");
  t.exact = get<double>(j, "exact", w);
  t.zero = get<double>(j, "zero", w);
  if (t.exact < 0.0 || t.zero < 0.0) fail(w, "exact and zero tolerances must be >= 0");
  t.higson_tol = positive(get<double>(j, "higson_tol", w), w + ".higson_tol");
  t.round_window = positive(get<double>(j, "round_window", w), w + ".round_window");
  if (t.round_window >= 0.5) fail(w + ".round_window", "must be < 0.5");
}

std::vector<ChCase> parse_cases(const json& j, const ExperimentConfig& c, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list");
  std::vector<ChCase> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    check_keys(j[i], w, {"name", "f", "symbol", "unit"});
    ChCase cs;
    cs.name = get<std::string>(j[i], "name", w);
    if (!names.insert(cs.name).second) fail(w, "duplicate case name '" + cs.name + "'");
    cs.f = parse_profile_json(j[i].at("f"), w + ".f");
    cs.symbol = known_symbol(c, get<std::string>(j[i], "symbol", w), w);
    if (j[i].contains("unit")) cs.unit = get<std::string>(j[i], "unit", w);
    if (cs.unit != "rational" && cs.unit != "exponential") fail(w + ".unit", "must be 'rational' or 'exponential'");
    out.push_back(std::move(cs));
  }
  return out;
}

TestVectorSpec parse_vector(const json& j, const std::string& w) {
  check_keys(j, w, {"name", "kind", "param"});
  TestVectorSpec v;
  v.name = get<std::string>(j, "name", w);
  v.kind = get<std::string>(j, "kind", w);
  v.param = get<double>(j, "param", w);
  if (v.kind != "power" && v.kind != "exp" && v.kind != "band" && v.kind != "mode") {
    fail(w + ".kind", "must be one of power, exp, band, mode");
  }
  return v;
}

ExperimentConfig from_json(const json& root) {
  ExperimentConfig c;
  check_keys(root, "config", {"grid", "cut", "tolerances", "symbols", "defect_sweep", "ch_compare", "homotopy",
                              "index_compare"});

  const json& grid = root.at("grid");
  check_keys(grid, "grid", {"N", "J", "k"});
  c.N = get<int>(grid, "N", "grid");
  c.J = grid.contains("J") ? get<int>(grid, "J", "grid") : 0;
  c.k = grid.contains("k") ? get<int>(grid, "k", "grid") : 1;
  try {
    CircleGrid check(c.N, c.k, c.J);
    c.J = check.J();
  } catch (const std::invalid_argument& e) {
    fail("grid", e.what());
  }

  check_keys(root.at("cut"), "cut", {"r0"});
  c.r0 = positive(get<double>(root.at("cut"), "r0", "cut"), "cut.r0");
  parse_tolerances(root.at("tolerances"), c.tol);

  const json& syms = root.at("symbols");
  if (!syms.is_object()) fail("symbols", "expected an object");
  for (const auto& [name, spec] : syms.items()) {
    if (spec.is_null()) continue;  // removed by a merge patch
    c.symbols.emplace(name, parse_symbol_json(spec, c.k, "symbols." + name));
  }

  {
    const std::string w = "defect_sweep";
    const json& j = root.at(w);
    check_keys(j, w, {"t_list", "a", "b", "chart", "g", "slope_t_min", "chart_t_min"});
    auto& d = c.defect_sweep;
    d.t_list = positive_list(j, "t_list", w);
    d.a = known_symbol(c, get<std::string>(j, "a", w), w + ".a");
    d.b = known_symbol(c, get<std::string>(j, "b", w), w + ".b");
    d.chart = known_symbol(c, get<std::string>(j, "chart", w), w + ".chart");
    d.g = known_symbol(c, get<std::string>(j, "g", w), w + ".g");
    d.slope_t_min = get<double>(j, "slope_t_min", w);
    d.chart_t_min = get<double>(j, "chart_t_min", w);
    if (c.symbol(d.a).k() != c.symbol(d.b).k()) fail(w, "symbols a and b have different k");
  }
  {
    const std::string w = "ch_compare";
    const json& j = root.at(w);
    check_keys(j, w, {"t_list", "cases", "extended_cases", "quasicentral", "slope_t_min"});
    auto& h = c.ch_compare;
    h.t_list = positive_list(j, "t_list", w);
    h.slope_t_min = get<double>(j, "slope_t_min", w);
    h.cases = parse_cases(j.at("cases"), c, w + ".cases");
    h.extended_cases = parse_cases(j.at("extended_cases"), c, w + ".extended_cases");
    for (const auto& cs : h.cases) {
      if (c.symbol(cs.symbol).symbol_class() != SymbolClass::HomogeneousZero) fail(w, cs.name + ": needs a homogeneous symbol");
      if (cs.f(0.0) != 0.0) fail(w, cs.name + ": f(0) must vanish");
      if (!cs.f.vanishes_at_infinity()) fail(w, cs.name + ": f must vanish at infinity");
    }
    for (const auto& cs : h.extended_cases) {
      if (!c.symbol(cs.symbol).is_fiber_constant()) fail(w, cs.name + ": needs a fiber-constant symbol");
      if (!cs.f.vanishes_at_infinity()) fail(w, cs.name + ": g must vanish at infinity");
    }
    for (const auto& name : get<std::vector<std::string>>(j, "quasicentral", w)) {
      h.quasicentral.push_back(known_symbol(c, name, w + ".quasicentral"));
    }
  }
  {
    const std::string w = "homotopy";
    const json& j = root.at(w);
    check_keys(j, w, {"N", "norm_N", "symbol", "self_adjoint_symbol", "s_list", "vectors", "band_vector",
                      "equ2_pairs", "equ2_s", "L_list", "K", "bounded_s", "self_adjoint_N", "self_adjoint_L"});
    auto& h = c.homotopy;
    h.N = get<int>(j, "N", w);
    h.norm_N = get<int>(j, "norm_N", w);
    if (h.N < 8 || h.norm_N < 8) fail(w, "N and norm_N must be >= 8");
    h.symbol = known_symbol(c, get<std::string>(j, "symbol", w), w + ".symbol");
    h.self_adjoint_symbol = known_symbol(c, get<std::string>(j, "self_adjoint_symbol", w), w + ".self_adjoint_symbol");
    for (const auto& name : {h.symbol, h.self_adjoint_symbol}) {
      if (c.symbol(name).symbol_class() != SymbolClass::HomogeneousZero) fail(w, name + " must be homogeneous");
    }
    h.s_list = positive_list(j, "s_list", w);
    h.equ2_s = positive_list(j, "equ2_s", w);
    h.bounded_s = get<std::vector<double>>(j, "bounded_s", w);
    for (double s : h.bounded_s)
      if (s < 0.0 || s > 1.0) fail(w + ".bounded_s", "s must lie in [0, 1]");
    for (double s : h.s_list)
      if (s > 1.0) fail(w + ".s_list", "s must lie in (0, 1]");
    for (double s : h.equ2_s)
      if (s > 1.0) fail(w + ".equ2_s", "s must lie in (0, 1]");
    h.vectors.clear();
    for (std::size_t i = 0; i < j.at("vectors").size(); ++i) {
      h.vectors.push_back(parse_vector(j["vectors"][i], w + ".vectors[" + std::to_string(i) + "]"));
    }
    h.band_vector = parse_vector(j.at("band_vector"), w + ".band_vector");
    if (h.band_vector.kind != "band") fail(w + ".band_vector", "kind must be 'band'");
    for (const auto& p : get<std::vector<std::vector<int>>>(j, "equ2_pairs", w)) {
      if (p.size() != 2) fail(w + ".equ2_pairs", "entries are [i, j]");
      if ((p[0] == 0 && p[1] == 0) || std::abs(p[0] - p[1]) > 1) fail(w + ".equ2_pairs", "need (i, j) != (0, 0), |i - j| <= 1");
      h.equ2_pairs.emplace_back(p[0], p[1]);
    }
    h.L_list = get<std::vector<int>>(j, "L_list", w);
    for (int L : h.L_list)
      if (L < 2) fail(w + ".L_list", "L must be >= 2");
    h.K = get<int>(j, "K", w);
    if (h.K > h.N) fail(w + ".K", "must be <= N");
    h.self_adjoint_N = get<std::vector<int>>(j, "self_adjoint_N", w);
    for (int n : h.self_adjoint_N)
      if (n < 8) fail(w + ".self_adjoint_N", "entries must be >= 8");
    h.self_adjoint_L = get<int>(j, "self_adjoint_L", w);
  }
  {
    const std::string w = "index_compare";
    const json& j = root.at(w);
    check_keys(j, w, {"N", "symbols", "t_list", "stability", "higson_t_min", "bott"});
    auto& x = c.index_compare;
    x.N = get<int>(j, "N", w);
    if (x.N < 1) fail(w + ".N", "must be >= 1");
    for (const auto& name : get<std::vector<std::string>>(j, "symbols", w)) {
      if (c.symbol(known_symbol(c, name, w + ".symbols")).symbol_class() != SymbolClass::HomogeneousZero) {
        fail(w + ".symbols", name + " must be homogeneous");
      }
      x.symbols.push_back(name);
    }
    x.t_list = positive_list(j, "t_list", w);
    x.stability = get<bool>(j, "stability", w);
    x.higson_t_min = get<double>(j, "higson_t_min", w);
    check_keys(j.at("bott"), w + ".bott", {"r_a", "r_b"});
    x.shape.r_a = get<double>(j["bott"], "r_a", w + ".bott");
    x.shape.r_b = get<double>(j["bott"], "r_b", w + ".bott");
    if (!(x.shape.r_a >= 0.0) || !(x.shape.r_b > x.shape.r_a)) fail(w + ".bott", "need 0 <= r_a < r_b");
  }
  return c;
}

json default_json() { return json::parse(detail::kDefaultConfigJson); }

}  // namespace

const SymbolExpr& ExperimentConfig::symbol(const std::string& name) const {
  auto it = symbols.find(name);
  if (it == symbols.end()) throw ConfigError("unknown symbol '" + name + "'");
  return it->second;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json user;
  try {
    user = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!user.is_object()) throw ConfigError("config: top level must be an object");
  json merged = default_json();
  merged.merge_patch(user);
  try {
    return from_json(merged);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ExperimentConfig default_config() { return from_json(default_json()); }

SymbolExpr parse_symbol(const std::string& json_text, int default_k) {
  try {
    return parse_symbol_json(json::parse(json_text), default_k, "symbol");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("symbol: ") + e.what());
  }
}

Profile parse_profile(const std::string& json_text) {
  try {
    return parse_profile_json(json::parse(json_text), "profile");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
}

}  // namespace psido
