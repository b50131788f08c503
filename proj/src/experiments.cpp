#include "psido/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "psido/connes_higson.hpp"
#include "psido/extension.hpp"
#include "psido/inverse_ch.hpp"
#include "psido/parallel.hpp"
#include "psido/quantize.hpp"

namespace psido {

using nlohmann::json;

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string fmt(double v) { return format_number(v); }

// Grid at size N with the configured sample count, raised when N outgrows it.
CircleGrid grid_for(int N, int k, int J) { return CircleGrid(N, k, std::max(J, 4 * N + 4)); }

// JSON number rounded through the same 12-digit formatting as the CSV.
json jnum(double v) {
  if (!std::isfinite(v)) return json(nullptr);
  return json(std::stod(format_number(v)));
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

double sup_norm_of(const SymbolExpr& a) { return a.sup_norm(); }

}  // namespace

Check check_decay(const std::string& name, const std::vector<double>& params, const std::vector<double>& values,
                  const DecayOptions& opt) {
  Check c{name, true, ""};
  std::ostringstream why;
  if (values.empty()) return {name, false, "no values"};
  const bool all_zero = std::all_of(values.begin(), values.end(), [&](double v) { return std::abs(v) <= opt.zero; });
  if (all_zero) return {name, true, "identically zero (<= " + fmt(opt.zero) + ")"};

  for (std::size_t i = 1; i < values.size(); ++i) {
    const bool both_zero = values[i] <= opt.zero && values[i - 1] <= opt.zero;
    const bool ok = opt.strict ? (values[i] < values[i - 1] || both_zero) : (values[i] <= values[i - 1] || both_zero);
    if (!ok) {
      c.pass = false;
      why << "not " << (opt.strict ? "strictly " : "") << "decreasing at step " << i << " (" << fmt(values[i - 1])
          << " -> " << fmt(values[i]) << "); ";
      break;
    }
  }
  if (opt.ratio_max) {
    const double ratio = values.front() > 0.0 ? values.back() / values.front() : INFINITY;
    if (!(ratio < *opt.ratio_max)) {
      c.pass = false;
      why << "final/initial " << fmt(ratio) << " >= " << fmt(*opt.ratio_max) << "; ";
    } else {
      why << "final/initial " << fmt(ratio) << "; ";
    }
  }
  if (opt.slope_max) {
    std::vector<double> p, v;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (params[i] >= opt.slope_param_min) {
        p.push_back(params[i]);
        v.push_back(values[i]);
      }
    }
    if (p.size() < 2 || std::any_of(v.begin(), v.end(), [&](double x) { return x <= opt.zero; })) {
      if (!std::all_of(v.begin(), v.end(), [&](double x) { return x <= opt.zero; })) {
        c.pass = false;
        why << "slope undefined; ";
      }
    } else {
      const double slope = loglog_slope(p, v);
      if (!(slope <= *opt.slope_max)) {
        c.pass = false;
        why << "slope " << fmt(slope) << " > " << fmt(*opt.slope_max) << "; ";
      } else {
        why << "slope " << fmt(slope) << "; ";
      }
    }
  }
  c.detail = why.str();
  if (!c.detail.empty()) c.detail.resize(c.detail.size() - 2);
  return c;
}

// ------------------------------------------------------------- defect-sweep

DefectSweepResult run_defect_sweep(const ExperimentConfig& config, int threads) {
  const auto& spec = config.defect_sweep;
  const SymbolExpr& a = config.symbol(spec.a);
  const SymbolExpr& b = config.symbol(spec.b);
  const SymbolExpr& chart_symbol = config.symbol(spec.chart);
  const SymbolExpr& g = config.symbol(spec.g);
  const std::vector<double> ts = sorted(spec.t_list);
  const Atlas atlas = Atlas::two_arcs();
  const SymbolExpr ab = pointwise_mul(a, b);
  const SymbolExpr a_star = adjoint(a);

  DefectSweepResult out;
  out.rows = parallel_map(static_cast<int>(ts.size()), threads, [&](int i) {
    const double t = ts[i];
    const CircleGrid grid(config.N, a.k(), config.J);
    const CircleGrid wide = grid_for(config.N + a.degree() + b.degree(), a.k(), config.J);
    DefectSweepRow row;
    row.t = t;
    row.mult_defect =
        operator_norm(t_quantize(ab, t, grid) - padded_product(t_quantize(a, t, wide), t_quantize(b, t, wide), grid));
    row.adjoint_defect = operator_norm(t_quantize(a, t, grid).adjoint() - t_quantize(a_star, t, grid));
    const CircleGrid cgrid(config.N, chart_symbol.k(), config.J);
    row.chart_defect =
        operator_norm(t_quantize_charts(chart_symbol, t, atlas, cgrid) - t_quantize(chart_symbol, t, cgrid));
    row.t0_norm = operator_norm(t_quantize(g, t, CircleGrid(config.N, g.k(), config.J)));
    return row;
  });
  out.g_sup = sup_norm_of(g);

  const auto& tol = config.tol;
  std::vector<double> t_large, mult, adj, t_chart, chart, t_small, t0;
  for (const auto& r : out.rows) {
    if (r.t >= 1.0) {
      t_large.push_back(r.t);
      mult.push_back(r.mult_defect);
      adj.push_back(r.adjoint_defect);
    }
    if (r.t >= spec.chart_t_min) {
      t_chart.push_back(r.t);
      chart.push_back(r.chart_defect);
    }
  }
  for (auto it = out.rows.rbegin(); it != out.rows.rend(); ++it) {
    if (it->t < 1.0) {
      t_small.push_back(it->t);
      t0.push_back(it->t0_norm);
    }
  }
  DecayOptions large{true, tol.ratio_max, tol.slope_max, spec.slope_t_min, tol.zero};
  if (!t_large.empty()) {
    out.checks.push_back(check_decay("mult_defect", t_large, mult, large));
    out.checks.push_back(check_decay("adjoint_defect", t_large, adj, large));
  }
  if (!t_chart.empty()) {
    out.checks.push_back(check_decay("chart_defect", t_chart, chart, {true, tol.ratio_max, {}, 0.0, tol.zero}));
  }
  if (!t_small.empty()) {
    if (g.symbol_class() == SymbolClass::Vanishing00) {
      Check c = check_decay("t0_norm", t_small, t0, {true, {}, {}, 0.0, tol.zero});
      const double bound = tol.t0_factor * out.g_sup;
      if (!(t0.back() < bound)) {
        c.pass = false;
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("final ") + fmt(t0.back()) + " >= " + fmt(bound);
      } else {
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("final ") + fmt(t0.back()) + " < " + fmt(bound);
      }
      out.checks.push_back(c);
    } else {
      out.checks.push_back({"t0_norm", true, "not applicable: g is not a C_00 symbol"});
    }
  }
  return out;
}

// --------------------------------------------------------------- ch-compare

namespace {

ApproximateUnit unit_by_name(const std::string& name) {
  return name == "exponential" ? ApproximateUnit::exponential() : ApproximateUnit::rational();
}

}  // namespace

ChCompareResult run_ch_compare(const ExperimentConfig& config, int threads) {
  const auto& spec = config.ch_compare;
  ChCompareResult out;
  out.t = sorted(spec.t_list);
  const CutFunction theta(config.r0);

  struct Job {
    std::string column;
    int kind;  // 0 = ch, 1 = extended, 2 = quasicentral
    const ChCase* cs;
    std::string symbol;
  };
  std::vector<Job> jobs;
  for (const auto& cs : spec.cases) jobs.push_back({cs.name, 0, &cs, cs.symbol});
  for (const auto& cs : spec.extended_cases) jobs.push_back({cs.name, 1, &cs, cs.symbol});
  for (const auto& name : spec.quasicentral) jobs.push_back({"qc_" + name, 2, nullptr, name});

  const int nt = static_cast<int>(out.t.size());
  const auto flat = parallel_map(static_cast<int>(jobs.size()) * nt, threads, [&](int idx) {
    const Job& job = jobs[idx / nt];
    const double t = out.t[idx % nt];
    const SymbolExpr& s = config.symbol(job.symbol);
    const CircleGrid grid(config.N, s.k(), config.J);
    if (job.kind == 2) return quasicentrality_defect(ApproximateUnit::rational(), t, s, grid, theta);
    const ApproximateUnit u = unit_by_name(job.cs->unit);
    if (job.kind == 0) {
      const FourierOperator ch = ch_apply(job.cs->f, s, t, u.matched_kappa(), u, grid, theta);
      return operator_norm(ch - t_quantize(smash(job.cs->f, s), t, grid));
    }
    const FourierOperator ch = ch_extended_apply(job.cs->f, s, t, u.matched_kappa(), u, grid);
    const SymbolExpr gc = SymbolExpr::separable(s.plus_loop(), job.cs->f, SymbolClass::FullC0);
    return operator_norm(ch - t_quantize(gc, t, grid));
  });

  const auto& tol = config.tol;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    out.columns.push_back(jobs[j].column);
    out.values.emplace_back(flat.begin() + j * nt, flat.begin() + (j + 1) * nt);
    DecayOptions opt{true, tol.ratio_max, {}, 0.0, tol.zero};
    if (jobs[j].kind == 2) opt = DecayOptions{true, {}, tol.slope_max, spec.slope_t_min, tol.zero};
    out.checks.push_back(check_decay(jobs[j].column, out.t, out.values.back(), opt));
  }
  return out;
}

// ---------------------------------------------------------- homotopy-verify

Vector make_test_vector(const TestVectorSpec& spec, const CircleGrid& grid) {
  Vector f = Vector::Zero(grid.dim());
  for (int n = -grid.N(); n <= grid.N(); ++n) {
    const double r = std::abs(n);
    double v = 0.0;
    if (spec.kind == "power") {
      v = std::pow(1.0 + r, -spec.param);
    } else if (spec.kind == "exp") {
      v = std::exp(-r / spec.param);
    } else if (spec.kind == "band") {
      v = (r >= 1.0 && r <= spec.param) ? 1.0 : 0.0;
    } else if (spec.kind == "mode") {
      v = n == static_cast<int>(std::lround(spec.param)) ? 1.0 : 0.0;
    } else {
      throw std::invalid_argument("make_test_vector: unknown kind '" + spec.kind + "'");
    }
    // Alternate phases so the vector is not an eigenvector of anything simple.
    const Complex phase = std::polar(1.0, 0.7 * n);
    for (int b = 0; b < grid.k(); ++b) f(grid.index(n, b)) = v * phase;
  }
  const double norm = f.norm();
  if (norm == 0.0) throw std::invalid_argument("make_test_vector: vector '" + spec.name + "' is zero on the grid");
  return f / norm;
}

namespace {

std::string pair_name(int i, int j) { return std::to_string(i) + "," + std::to_string(j); }

}  // namespace

HomotopyResult run_homotopy_verify(const ExperimentConfig& config, int threads) {
  const auto& spec = config.homotopy;
  const auto& tol = config.tol;
  const SymbolExpr& a = config.symbol(spec.symbol);
  const SymbolExpr& a_sa = config.symbol(spec.self_adjoint_symbol);
  const CutFunction theta(config.r0);
  const CircleGrid grid = grid_for(spec.N, a.k(), config.J);
  HomotopyResult out;

  // equ1: one column per test vector, along s_list.
  {
    std::vector<Vector> vectors;
    for (const auto& v : spec.vectors) vectors.push_back(make_test_vector(v, grid));
    const int ns = static_cast<int>(spec.s_list.size());
    const auto vals = parallel_map(static_cast<int>(vectors.size()) * ns, threads, [&](int idx) {
      return equ1_defect(a, spec.s_list[idx % ns], vectors[idx / ns], theta, grid);
    });
    for (std::size_t v = 0; v < vectors.size(); ++v) {
      std::vector<double> col(vals.begin() + v * ns, vals.begin() + (v + 1) * ns);
      for (int i = 0; i < ns; ++i) out.rows.push_back({"equ1", spec.s_list[i], spec.vectors[v].name, col[i]});
      out.checks.push_back(check_decay("equ1 " + spec.vectors[v].name, spec.s_list, col, {true, {}, {}, 0.0, tol.zero}));
    }
  }

  // equ2: band-limited vector, every pair along equ2_s.
  {
    const Vector f = make_test_vector(spec.band_vector, grid);
    const int band = static_cast<int>(spec.band_vector.param);
    const int ns = static_cast<int>(spec.equ2_s.size());
    const auto vals = parallel_map(static_cast<int>(spec.equ2_pairs.size()) * ns, threads, [&](int idx) {
      const auto [i, j] = spec.equ2_pairs[idx / ns];
      return equ2_defect(a, spec.equ2_s[idx % ns], i, j, f, theta, grid);
    });
    for (std::size_t p = 0; p < spec.equ2_pairs.size(); ++p) {
      const auto [i, j] = spec.equ2_pairs[p];
      const std::string name = pair_name(i, j);
      std::vector<double> col(vals.begin() + p * ns, vals.begin() + (p + 1) * ns);
      Check c{"equ2 " + name, true, ""};
      int migrated = 0;
      for (int q = 0; q < ns; ++q) {
        out.rows.push_back({"equ2", spec.equ2_s[q], name, col[q]});
        if (band_excluded(spec.equ2_s[q], i, j, band)) {
          ++migrated;
          if (!(col[q] < tol.equ2_zero)) {
            c.pass = false;
            c.detail = "s = " + fmt(spec.equ2_s[q]) + ": " + fmt(col[q]) + " >= " + fmt(tol.equ2_zero) +
                       " after the support left the band";
          }
        }
      }
      if (c.pass) c.detail = std::to_string(migrated) + " s-values past the band, all below " + fmt(tol.equ2_zero);
      if (i == 1 && j == 1) {
        const Check d = check_decay("equ2 1,1 decay", spec.equ2_s, col, {false, {}, {}, 0.0, tol.zero});
        if (!d.pass) {
          c.pass = false;
          c.detail += "; " + d.detail;
        }
      }
      out.checks.push_back(c);
    }
  }

  // Per-block identities at s = 1.
  {
    const int i_max = static_cast<int>(std::floor(std::log2(grid.N()))) + 1;
    const int i_theta = static_cast<int>(std::ceil(std::log2(2.0 * config.r0)));
    std::vector<std::pair<int, int>> theta_blocks, shift_blocks;
    for (int i = i_theta; i <= i_max; ++i)
      for (int j = i - 1; j <= i + 1; ++j) theta_blocks.emplace_back(i, j);
    for (int i = 0; i <= i_max; ++i)
      for (int j = i - 1; j <= i + 1; ++j) shift_blocks.emplace_back(i, j);
    const auto tv = parallel_map(static_cast<int>(theta_blocks.size()), threads, [&](int q) {
      return theta_block_discrepancy(a, theta_blocks[q].first, theta_blocks[q].second, theta, grid);
    });
    const auto sv = parallel_map(static_cast<int>(shift_blocks.size()), threads, [&](int q) {
      return translation_block_discrepancy(a, shift_blocks[q].first, shift_blocks[q].second, grid);
    });
    double tmax = 0.0, smax = 0.0;
    for (std::size_t q = 0; q < theta_blocks.size(); ++q) {
      out.rows.push_back({"theta_identity", double(theta_blocks[q].first), pair_name(theta_blocks[q].first, theta_blocks[q].second), tv[q]});
      tmax = std::max(tmax, tv[q]);
    }
    for (std::size_t q = 0; q < shift_blocks.size(); ++q) {
      out.rows.push_back({"translation", double(shift_blocks[q].first), pair_name(shift_blocks[q].first, shift_blocks[q].second), sv[q]});
      smax = std::max(smax, sv[q]);
    }
    out.checks.push_back({"theta_identity", tmax <= tol.exact,
                          "max over i >= " + std::to_string(i_theta) + ": " + fmt(tmax)});
    out.checks.push_back({"translation", smax <= tol.exact, "max over i >= 0: " + fmt(smax)});
  }

  // Endpoint aggregate along L.
  {
    const int K = spec.K < 0 ? grid.N() / 2 : spec.K;
    const auto reports = endpoint_defects(a, spec.L_list, K, grid, theta);
    std::vector<double> L, agg;
    for (const auto& r : reports) {
      out.rows.push_back({"endpoint", double(r.L), "aggregate", r.aggregate});
      out.rows.push_back({"endpoint", double(r.L), "quotient", r.quotient_defect});
      out.rows.push_back({"endpoint", double(r.L), "truncation_tail", r.truncation_tail});
      out.rows.push_back({"endpoint", double(r.L), "theta_region", r.theta_region});
      L.push_back(r.L);
      agg.push_back(r.aggregate);
    }
    out.checks.push_back(check_decay("endpoint aggregate", L, agg, {false, {}, {}, 0.0, tol.zero}));
  }

  // Uniform boundedness of Psi_s.
  {
    const CircleGrid small(spec.norm_N, a.k());
    const int L = spec.L_list.empty() ? 8 : *std::max_element(spec.L_list.begin(), spec.L_list.end());
    const double bound = 2.0 * a.sup_norm();
    const auto norms = parallel_map(static_cast<int>(spec.bounded_s.size()), threads,
                                    [&](int q) { return psi_s(a, spec.bounded_s[q], theta, L, small).norm(); });
    double worst = 0.0;
    for (std::size_t q = 0; q < norms.size(); ++q) {
      out.rows.push_back({"boundedness", spec.bounded_s[q], "norm", norms[q]});
      worst = std::max(worst, norms[q]);
    }
    out.checks.push_back({"boundedness", worst <= bound, "max ||Psi_s|| " + fmt(worst) + " vs bound " + fmt(bound)});
  }

  // Self-adjointness defect along N.
  {
    const auto vals = parallel_map(static_cast<int>(spec.self_adjoint_N.size()), threads, [&](int q) {
      return psi_self_adjoint_defect(a_sa, 1.0, theta, spec.self_adjoint_L, CircleGrid(spec.self_adjoint_N[q], a_sa.k()));
    });
    std::vector<double> Ns;
    for (std::size_t q = 0; q < vals.size(); ++q) {
      out.rows.push_back({"self_adjoint", double(spec.self_adjoint_N[q]), "defect", vals[q]});
      Ns.push_back(spec.self_adjoint_N[q]);
    }
    out.checks.push_back(check_decay("self_adjoint", Ns, vals, {true, {}, {}, 0.0, tol.zero}));
  }
  return out;
}

// ------------------------------------------------------------ index-compare

IndexCompareResult run_index_compare(const ExperimentConfig& config, int threads) {
  const auto& spec = config.index_compare;
  const auto& tol = config.tol;
  IndexParams params;
  params.N = spec.N;
  params.J = 0;
  params.eps_rank = tol.eps_rank;
  params.r0 = config.r0;
  params.t_list = sorted(spec.t_list);
  params.shape = spec.shape;
  params.round_window = tol.round_window;

  IndexCompareResult out;
  out.entries = parallel_map(static_cast<int>(spec.symbols.size()), threads, [&](int q) {
    const std::string& name = spec.symbols[q];
    const SymbolExpr& sigma = config.symbol(name);
    IndexCompareEntry e;
    e.report = index_report(name, sigma, params);
    const CutFunction theta(config.r0);
    if (spec.stability) {
      FredholmOptions opt;
      opt.eps_rank = tol.eps_rank;
      const CircleGrid g2(2 * spec.N, sigma.k());
      try {
        e.fredholm_2N = fredholm_index_svd(sigma, g2, opt, theta);
      } catch (const InconclusiveIndex&) {
      }
      opt.eps_rank = tol.eps_rank / 10.0;
      try {
        e.fredholm_eps10 = fredholm_index_svd(sigma, CircleGrid(spec.N, sigma.k()), opt, theta);
      } catch (const InconclusiveIndex&) {
      }
      if (!e.report.t.empty()) {
        const double h = higson_trace_index(sigma, e.report.t.back(), g2, spec.shape);
        if (std::abs(h - std::round(h)) <= tol.round_window) e.higson_2N = static_cast<int>(std::round(h));
      }
      e.stable = e.report.fredholm && e.fredholm_2N == e.report.fredholm && e.fredholm_eps10 == e.report.fredholm &&
                 e.report.higson_rounded && e.higson_2N == e.report.higson_rounded;
    } else {
      e.stable = true;
    }
    e.higson_close = !e.report.higson.empty();
    for (std::size_t i = 0; i < e.report.t.size(); ++i) {
      if (e.report.t[i] < spec.higson_t_min) continue;
      const double h = e.report.higson[i];
      if (!(std::abs(h - std::round(h)) <= tol.higson_tol)) e.higson_close = false;
    }
    return e;
  });

  for (const auto& e : out.entries) {
    const auto& r = e.report;
    Check c{r.id, true, ""};
    if (!r.conclusive()) {
      c.pass = false;
      c.detail = "inconclusive: " + r.inconclusive;
    } else if (!r.all_agree) {
      c.pass = false;
      c.detail = "disagreement: fredholm " + std::to_string(*r.fredholm) + ", analytic " + std::to_string(r.analytic) +
                 ", higson " + std::to_string(*r.higson_rounded);
    } else if (!e.stable) {
      c.pass = false;
      c.detail = "unstable under N -> 2N or eps_rank -> eps_rank/10";
    } else if (!e.higson_close) {
      c.pass = false;
      c.detail = "Higson count not within " + fmt(tol.higson_tol) + " of an integer for t >= " + fmt(spec.higson_t_min);
    } else {
      c.detail = "index " + std::to_string(*r.fredholm);
    }
    out.checks.push_back(c);
  }
  return out;
}

// ------------------------------------------------------------------ output

namespace {

json checks_json(const std::vector<Check>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json opt_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string to_csv(const DefectSweepResult& r) {
  std::ostringstream os;
  os << "t,mult_defect,adjoint_defect,chart_defect,t0_norm\n";
  for (const auto& row : r.rows) {
    os << fmt(row.t) << ',' << fmt(row.mult_defect) << ',' << fmt(row.adjoint_defect) << ',' << fmt(row.chart_defect)
       << ',' << fmt(row.t0_norm) << '\n';
  }
  return os.str();
}

std::string to_json(const DefectSweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"t", jnum(row.t)},
                    {"mult_defect", jnum(row.mult_defect)},
                    {"adjoint_defect", jnum(row.adjoint_defect)},
                    {"chart_defect", jnum(row.chart_defect)},
                    {"t0_norm", jnum(row.t0_norm)}});
  }
  return dump({{"rows", rows}, {"g_sup", jnum(r.g_sup)}, {"checks", checks_json(r.checks)}});
}

std::string to_csv(const ChCompareResult& r) {
  std::ostringstream os;
  os << 't';
  for (const auto& c : r.columns) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    os << fmt(r.t[i]);
    for (const auto& col : r.values) os << ',' << fmt(col[i]);
    os << '\n';
  }
  return os.str();
}

std::string to_json(const ChCompareResult& r) {
  json rows = json::array();
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    json row = {{"t", jnum(r.t[i])}};
    for (std::size_t c = 0; c < r.columns.size(); ++c) row[r.columns[c]] = jnum(r.values[c][i]);
    rows.push_back(row);
  }
  return dump({{"columns", r.columns}, {"rows", rows}, {"checks", checks_json(r.checks)}});
}

std::string to_csv(const HomotopyResult& r) {
  std::ostringstream os;
  os << "sweep,key,case,value\n";
  for (const auto& row : r.rows) {
    os << row.sweep << ',' << fmt(row.key) << ",\"" << row.case_name << "\"," << fmt(row.value) << '\n';
  }
  return os.str();
}

std::string to_json(const HomotopyResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"sweep", row.sweep}, {"key", jnum(row.key)}, {"case", row.case_name}, {"value", jnum(row.value)}});
  }
  return dump({{"rows", rows}, {"checks", checks_json(r.checks)}});
}

std::string to_csv(const IndexCompareResult& r) {
  std::ostringstream os;
  os << "id,k,winding_plus,winding_minus,analytic,fredholm,higson_rounded,higson_last,fredholm_2N,fredholm_eps10,"
        "higson_2N,all_agree,stable,inconclusive\n";
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& e : r.entries) {
    const auto& x = e.report;
    os << x.id << ',' << x.k << ',' << x.winding_plus << ',' << x.winding_minus << ',' << x.analytic << ','
       << opt(x.fredholm) << ',' << opt(x.higson_rounded) << ',' << (x.higson.empty() ? "" : fmt(x.higson.back()))
       << ',' << opt(e.fredholm_2N) << ',' << opt(e.fredholm_eps10) << ',' << opt(e.higson_2N) << ','
       << (x.all_agree ? "true" : "false") << ',' << (e.stable ? "true" : "false") << ",\"" << x.inconclusive
       << "\"\n";
  }
  return os.str();
}

std::string to_json(const IndexCompareResult& r) {
  json arr = json::array();
  for (const auto& e : r.entries) {
    const auto& x = e.report;
    json higson = json::array();
    for (std::size_t i = 0; i < x.t.size(); ++i) higson.push_back({{"t", jnum(x.t[i])}, {"value", jnum(x.higson[i])}});
    arr.push_back({{"id", x.id},
                   {"k", x.k},
                   {"winding", {{"plus", x.winding_plus}, {"minus", x.winding_minus}}},
                   {"fredholm_index", opt_int(x.fredholm)},
                   {"analytic_index", x.analytic},
                   {"higson_trace", higson},
                   {"higson_rounded", opt_int(x.higson_rounded)},
                   {"agreement",
                    {{"fredholm_analytic", x.fredholm_matches_analytic},
                     {"higson_fredholm", x.higson_matches_fredholm},
                     {"all", x.all_agree}}},
                   {"inconclusive", x.inconclusive.empty() ? json(nullptr) : json(x.inconclusive)},
                   {"stability",
                    {{"fredholm_2N", opt_int(e.fredholm_2N)},
                     {"fredholm_eps_div10", opt_int(e.fredholm_eps10)},
                     {"higson_2N", opt_int(e.higson_2N)},
                     {"stable", e.stable}}},
                   {"higson_close", e.higson_close},
                   {"params", {{"N", x.N}, {"eps_rank", jnum(x.eps_rank)}, {"sign_convention", "index = w_minus - w_plus"}}}});
  }
  return dump(arr);
}

}  // namespace psido
