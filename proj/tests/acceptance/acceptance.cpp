// Acceptance run: one PASS/FAIL line per criterion, timed. Exit 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "psido/config.hpp"
#include "psido/connes_higson.hpp"
#include "psido/experiments.hpp"
#include "psido/extension.hpp"
#include "psido/index.hpp"
#include "psido/inverse_ch.hpp"
#include "psido/partition.hpp"
#include "psido/quantize.hpp"

namespace fs = std::filesystem;
using namespace psido;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // <= 0: no runtime bound
  std::function<Outcome()> run;
};

std::string fmt(double v) { return format_number(v); }

Outcome from_checks(const std::vector<Check>& checks) {
  Outcome o{true, ""};
  int failed = 0;
  for (const auto& c : checks) {
    if (c.pass) continue;
    o.pass = false;
    if (failed++ < 3) o.detail += (o.detail.empty() ? "" : "; ") + c.name + ": " + c.detail;
  }
  if (o.pass) o.detail = std::to_string(checks.size()) + " checks";
  return o;
}

const ExperimentConfig& cfg() {
  static const ExperimentConfig c = default_config();
  return c;
}

std::vector<double> powers_of_two(int lo, int hi) {
  std::vector<double> out;
  for (int e = lo; e <= hi; ++e) out.push_back(std::ldexp(1.0, e));
  return out;
}

// ---------------------------------------------------------------- criteria

Outcome partition_exactness() {
  double worst = 0.0;
  bool adjacency = true;
  for (double s : {1.0, 0.5, 0.25, 0.125}) {
    const int L = 8;
    const auto p = build_partition(s, L);
    const double lo = std::log2(p.covered_lo()), hi = std::log2(p.covered_hi());
    for (int q = 0; q < 1000; ++q) {
      const double x = std::exp2(lo + (hi - lo) * (q + 0.5) / 1000.0);
      double sum = 0.0;
      for (int i = -L; i <= L; ++i) {
        const double gi = p.gamma(i, x);
        sum += gi * gi;
        for (int j = i + 2; j <= L; ++j) adjacency = adjacency && gi * p.gamma(j, x) == 0.0;
      }
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  return {worst < 1e-12 && adjacency,
          "max |sum gamma^2 - 1| = " + fmt(worst) + (adjacency ? ", adjacency exact" : ", adjacency violated")};
}

Outcome translation_invariance() {
  const CircleGrid grid(cfg().N, 1, cfg().J);
  Matrix m(2, 2);
  m << 1.0, Complex(0, 0.5), 0.2, -1.0;
  const auto matrix_symbol = SymbolExpr::separable(TrigLoop::monomial(-1, m) + TrigLoop::identity(2),
                                                   Profile::bump(1.2) * Profile::rational(), SymbolClass::CompactSupport);
  const std::vector<std::pair<const SymbolExpr*, CircleGrid>> cases{
      {&cfg().symbol("a_compact"), grid},
      {&cfg().symbol("g_c00"), grid},
      {&matrix_symbol, CircleGrid(cfg().N, 2, cfg().J)}};
  double worst = 0.0;
  for (const auto& [a, g] : cases) {
    for (double t : {1.0, 4.0, 16.0, 64.0, 256.0}) {
      for (double s : {0.5, 2.0, 3.0}) {
        worst = std::max(worst, (t_quantize(*a, t * s, g) - t_quantize(dilate(*a, s), t, g)).max_abs());
      }
    }
  }
  return {worst <= 1e-13, "max entry difference " + fmt(worst) + " over 5x3 (t,s), 3 symbols"};
}

Outcome multiplicativity() {
  auto c = cfg();
  c.defect_sweep.t_list = powers_of_two(0, 8);
  const SymbolExpr& a = c.symbol(c.defect_sweep.a);
  const SymbolExpr& b = c.symbol(c.defect_sweep.b);
  const SymbolExpr ab = pointwise_mul(a, b);
  const CircleGrid grid(c.N, a.k(), c.J);
  const int Nw = c.N + a.degree() + b.degree();
  const CircleGrid wide(Nw, a.k(), std::max(c.J, 4 * Nw + 4));
  std::vector<double> mult, adj;
  for (double t : c.defect_sweep.t_list) {
    mult.push_back(operator_norm(t_quantize(ab, t, grid) -
                                 padded_product(t_quantize(a, t, wide), t_quantize(b, t, wide), grid)));
    adj.push_back(operator_norm(t_quantize(a, t, grid).adjoint() - t_quantize(adjoint(a), t, grid)));
  }
  const DecayOptions opt{true, c.tol.ratio_max, c.tol.slope_max, c.defect_sweep.slope_t_min, c.tol.zero};
  const auto m1 = check_decay("mult", c.defect_sweep.t_list, mult, opt);
  const auto m2 = check_decay("adjoint", c.defect_sweep.t_list, adj, opt);
  return {m1.pass && m2.pass, "mult: " + m1.detail + "; adjoint: " + m2.detail};
}

Outcome chart_independence() {
  const auto& c = cfg();
  const SymbolExpr& a = c.symbol(c.defect_sweep.chart);
  const CircleGrid grid(c.N, a.k(), c.J);
  const auto ts = powers_of_two(2, 8);
  std::vector<double> v;
  for (double t : ts) v.push_back(operator_norm(t_quantize_charts(a, t, Atlas::two_arcs(), grid) - t_quantize(a, t, grid)));
  const auto r = check_decay("chart", ts, v, {true, c.tol.ratio_max, {}, 0.0, c.tol.zero});
  return {r.pass, r.detail};
}

Outcome vanishing_at_zero() {
  const auto& c = cfg();
  const SymbolExpr& g = c.symbol(c.defect_sweep.g);
  const CircleGrid grid(c.N, g.k(), c.J);
  std::vector<double> ts, v;
  for (int e = -1; e >= -6; --e) {
    ts.push_back(std::ldexp(1.0, e));
    v.push_back(operator_norm(t_quantize(g, ts.back(), grid)));
  }
  const auto r = check_decay("t0", ts, v, {true, {}, {}, 0.0, c.tol.zero});
  const double bound = c.tol.t0_factor * g.sup_norm();
  const bool below = v.back() < bound;
  return {r.pass && below && g.symbol_class() == SymbolClass::Vanishing00,
          r.detail + (r.detail.empty() ? "" : "; ") + "final " + fmt(v.back()) + (below ? " < " : " >= ") + fmt(bound)};
}

Outcome extension_modulo_compacts() {
  const auto& c = cfg();
  const CutFunction theta(c.r0);
  const CircleGrid grid(c.N, 1, c.J);
  const std::vector<int> Ks{8, 16, 32, 64};
  const auto a = c.symbol("sigma_10");
  const std::vector<std::pair<SymbolExpr, SymbolExpr>> pairs{
      {a, adjoint(a)}, {c.symbol("sigma_2m1"), c.symbol("sigma_selfadjoint")}, {c.symbol("c_trig"), a}};
  bool halves = true;
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    const auto p = symbol_map_defect(x, y, grid, Ks, theta, c.tol.tol_compact);
    for (std::size_t i = 1; i < Ks.size(); ++i) {
      for (const auto* seq : {&p.symbol_map, &p.commutator}) {
        const double prev = (*seq)[i - 1], cur = (*seq)[i];
        const bool ok = cur <= 0.5 * prev || (cur <= c.tol.zero && prev <= c.tol.zero);
        halves = halves && ok;
        worst = std::max(worst, cur);
      }
    }
  }
  double lift = 0.0;
  Matrix m(2, 2);
  m << 1.0, 0.5, Complex(0, 1), 2.0;
  const std::vector<std::pair<SymbolExpr, int>> lifts{{c.symbol("c_shift"), 1},
                                                      {c.symbol("c_trig"), 1},
                                                      {SymbolExpr::fiber_constant(TrigLoop::monomial(2, m) +
                                                                                  TrigLoop::monomial(-3, m.adjoint())),
                                                       2}};
  for (const auto& [s, k] : lifts) lift = std::max(lift, lifting_check(s, CircleGrid(c.N, k, c.J), theta));
  return {halves && lift == 0.0, std::string(halves ? "tails halve" : "tails do not halve") +
                                     " across K = 8..64 (max tail " + fmt(worst) + "); lifting max " + fmt(lift)};
}

Outcome ch_vs_t() {
  auto c = cfg();
  c.ch_compare.t_list = powers_of_two(2, 8);
  c.ch_compare.quasicentral.clear();
  const auto r = run_ch_compare(c);
  const auto o = from_checks(r.checks);
  return {o.pass && c.ch_compare.cases.size() >= 6 && !c.ch_compare.extended_cases.empty(), o.detail};
}

Outcome homotopy_endpoints() {
  const auto r = run_homotopy_verify(cfg());
  std::vector<Check> relevant;
  for (const auto& ch : r.checks) {
    if (ch.name.rfind("equ1", 0) == 0 || ch.name.rfind("equ2", 0) == 0 || ch.name == "theta_identity" ||
        ch.name == "endpoint aggregate") {
      relevant.push_back(ch);
    }
  }
  return from_checks(relevant);
}

Outcome index_agreement() {
  const auto r = run_index_compare(cfg());
  Outcome o = from_checks(r.checks);
  if (o.pass) {
    o.detail.clear();
    for (const auto& e : r.entries) {
      o.detail += (o.detail.empty() ? "" : ", ") + e.report.id + "=" + std::to_string(*e.report.fredholm);
    }
  }
  return o;
}

// ---------------------------------------------------------------- criterion 10

struct CliContext {
  std::string cli;
  fs::path configs;
  fs::path scratch;
};

CliContext& cli_context() {
  static CliContext ctx;
  return ctx;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto& ctx = cli_context();
  if (ctx.cli.empty()) return {false, "no --cli given"};
  fs::create_directories(ctx.scratch);
  const fs::path config = ctx.configs / "determinism.json";
  Outcome o{true, ""};
  for (const char* cmd : {"defect-sweep", "index-compare", "ch-compare", "homotopy-verify"}) {
    for (const char* format : {"csv", "json"}) {
      std::string outputs[2];
      for (int run = 0; run < 2; ++run) {
        const fs::path out = ctx.scratch / (std::string(cmd) + "." + std::to_string(run) + "." + format);
        // Second run uses more threads: ordering must not depend on scheduling.
        const std::string line = "\"" + ctx.cli + "\" " + cmd + " --config \"" + config.string() + "\" --format " +
                                 format + " --threads " + (run == 0 ? "1" : "3") + " --out \"" + out.string() +
                                 "\" 2>/dev/null";
        const int rc = std::system(line.c_str());
        if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) == 2) return {false, std::string(cmd) + ": run failed"};
        outputs[run] = slurp(out);
      }
      if (outputs[0].empty() || outputs[0] != outputs[1]) {
        o.pass = false;
        o.detail += std::string(o.detail.empty() ? "" : "; ") + cmd + " " + format + " differs";
      }
    }
  }
  if (o.pass) o.detail = "4 subcommands x {csv, json}: byte-identical across runs (1 vs 3 threads)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  auto& ctx = cli_context();
  ctx.configs = fs::path(PSIDO_SOURCE_DIR) / "configs";
  ctx.scratch = fs::temp_directory_path() / "psido_acceptance";
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) ctx.cli = argv[++i];
    else if (arg == "--configs" && i + 1 < argc) ctx.configs = argv[++i];
    else if (arg == "--scratch" && i + 1 < argc) ctx.scratch = argv[++i];
    else if (arg == "--only" && i + 1 < argc) only.push_back(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--cli PATH] [--configs DIR] [--scratch DIR] [--only N]...\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "partition exactness", 1.0, partition_exactness},
      {2, "exact translation invariance", 10.0, translation_invariance},
      {3, "asymptotic multiplicativity and adjoint", 60.0, multiplicativity},
      {4, "chart independence", 60.0, chart_independence},
      {5, "t -> 0 vanishing on C_00", 10.0, vanishing_at_zero},
      {6, "extension modulo compacts", 60.0, extension_modulo_compacts},
      {7, "CH vs T", 120.0, ch_vs_t},
      {8, "homotopy endpoints", 120.0, homotopy_endpoints},
      {9, "index agreement", 180.0, index_agreement},
      {10, "determinism", 0.0, determinism},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s <= 0.0 || secs < c.limit_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "CRITERION " << c.id << ' ' << (pass ? "PASS" : "FAIL") << ": " << c.title << " [" << timing;
    if (c.limit_s > 0.0) std::cout << " / limit " << c.limit_s << "s";
    std::cout << "] " << o.detail;
    if (!in_time) std::cout << " (over time limit)";
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
