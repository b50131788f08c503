#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "psido/index.hpp"
#include "psido/symbols.hpp"

namespace psido {

/// Invalid or unreadable experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double tol_compact = 1e-3;
  double eps_rank = 1e-6;
  double slope_max = -0.8;
  double ratio_max = 0.05;
  double t0_factor = 1e-3;
  double equ2_zero = 1e-6;
  double exact = 1e-13;
  double zero = 1e-12;  // values at or below this count as exact zeros
  double higson_tol = 0.1;
  double round_window = 0.25;
};

struct DefectSweepSpec {
  std::vector<double> t_list;
  std::string a, b, chart, g;
  double slope_t_min = 16.0;  // slope fit uses t >= this
  double chart_t_min = 4.0;   // chart criterion uses t >= this
};

struct ChCase {
  std::string name;
  Profile f;
  std::string symbol;
  std::string unit = "rational";  // or "exponential"
};

struct ChCompareSpec {
  std::vector<double> t_list;
  std::vector<ChCase> cases;           // Op(d) f(kappa(u_t)) vs T_t(smash(f, d))
  std::vector<ChCase> extended_cases;  // pi(c) g(kappa(u_t)) vs T_t(g c)
  std::vector<std::string> quasicentral;
  double slope_t_min = 16.0;  // quasicentrality slope fit uses t >= this
};

struct TestVectorSpec {
  std::string name;
  std::string kind = "power";  // power | exp | band | mode
  double param = 1.0;          // power: p; exp: scale; band: max mode; mode: n
};

struct HomotopySpec {
  int N = 256;
  int norm_N = 64;
  std::string symbol;
  std::string self_adjoint_symbol;
  std::vector<double> s_list;
  std::vector<TestVectorSpec> vectors;
  TestVectorSpec band_vector{"band12", "band", 12.0};
  std::vector<std::pair<int, int>> equ2_pairs;
  std::vector<double> equ2_s;
  std::vector<int> L_list;
  int K = -1;  // -1: N/2
  std::vector<double> bounded_s;
  std::vector<int> self_adjoint_N;
  int self_adjoint_L = 8;
};

struct IndexCompareSpec {
  int N = 256;
  std::vector<std::string> symbols;
  std::vector<double> t_list;
  bool stability = true;
  double higson_t_min = 64.0;
  BottShape shape;
};

/// Parsed experiment configuration; see docs/config.md for the schema.
struct ExperimentConfig {
  int N = 256;
  int J = 0;
  int k = 1;
  double r0 = 4.0;
  Tolerances tol;
  std::map<std::string, SymbolExpr> symbols;
  DefectSweepSpec defect_sweep;
  ChCompareSpec ch_compare;
  HomotopySpec homotopy;
  IndexCompareSpec index_compare;

  const SymbolExpr& symbol(const std::string& name) const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
/// Built-in defaults (identical to configs/default.json).
ExperimentConfig default_config();

/// Parses one symbol record; exposed for the Python bindings.
SymbolExpr parse_symbol(const std::string& json_text, int default_k = 1);
Profile parse_profile(const std::string& json_text);

}  // namespace psido
