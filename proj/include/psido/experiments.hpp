#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psido/config.hpp"
#include "psido/index.hpp"

namespace psido {

/// One PASS/FAIL decision with a short human-readable reason.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<Check>& checks);

struct DecayOptions {
  bool strict = true;            // each value below the previous one (exact zeros may repeat)
  std::optional<double> ratio_max;  // last / first
  std::optional<double> slope_max;  // log-log slope against `params`
  double slope_param_min = 0.0;     // slope fit restricted to params >= this
  double zero = 1e-12;              // values <= zero count as exact zeros
};

/// Decay check on a sequence given in sweep order. A sequence that is zero
/// throughout passes; a sequence may reach zero and then stay there.
Check check_decay(const std::string& name, const std::vector<double>& params, const std::vector<double>& values,
                  const DecayOptions& opt);

/// 12 significant digits, "%.12g".
std::string format_number(double v);

// ------------------------------------------------------------- defect-sweep

struct DefectSweepRow {
  double t = 0.0;
  double mult_defect = 0.0;     // ||T_t(ab) - T_t(a)T_t(b)||
  double adjoint_defect = 0.0;  // ||T_t(a)* - T_t(a*)||
  double chart_defect = 0.0;    // ||T_t^charts(a) - T_t(a)||
  double t0_norm = 0.0;         // ||T_t(g)||
};

struct DefectSweepResult {
  std::vector<DefectSweepRow> rows;  // ascending t
  double g_sup = 0.0;
  std::vector<Check> checks;
};

DefectSweepResult run_defect_sweep(const ExperimentConfig& config, int threads = 1);

// --------------------------------------------------------------- ch-compare

struct ChCompareResult {
  std::vector<double> t;                    // ascending
  std::vector<std::string> columns;         // case names, then qc_<symbol>
  std::vector<std::vector<double>> values;  // values[column][t index]
  std::vector<Check> checks;
};

ChCompareResult run_ch_compare(const ExperimentConfig& config, int threads = 1);

// ---------------------------------------------------------- homotopy-verify

struct HomotopyRow {
  std::string sweep;
  double key = 0.0;
  std::string case_name;
  double value = 0.0;
};

struct HomotopyResult {
  std::vector<HomotopyRow> rows;
  std::vector<Check> checks;
};

/// Unit-norm test vector on the grid (every block component gets the same entries).
Vector make_test_vector(const TestVectorSpec& spec, const CircleGrid& grid);

HomotopyResult run_homotopy_verify(const ExperimentConfig& config, int threads = 1);

// ------------------------------------------------------------ index-compare

struct IndexCompareEntry {
  IndexReport report;
  std::optional<int> fredholm_2N;
  std::optional<int> fredholm_eps10;
  std::optional<int> higson_2N;
  bool stable = false;
  bool higson_close = false;  // within higson_tol of an integer for t >= higson_t_min
};

struct IndexCompareResult {
  std::vector<IndexCompareEntry> entries;
  std::vector<Check> checks;
};

IndexCompareResult run_index_compare(const ExperimentConfig& config, int threads = 1);

// ------------------------------------------------------------------ output

std::string to_csv(const DefectSweepResult& r);
std::string to_json(const DefectSweepResult& r);
std::string to_csv(const ChCompareResult& r);
std::string to_json(const ChCompareResult& r);
std::string to_csv(const HomotopyResult& r);
std::string to_json(const HomotopyResult& r);
std::string to_csv(const IndexCompareResult& r);
std::string to_json(const IndexCompareResult& r);

}  // namespace psido
