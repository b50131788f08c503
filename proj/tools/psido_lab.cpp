// psido-lab: batch runner for the quantization / extension / index experiments.
//
// Exit status: 0 all criteria met, 1 some criterion failed, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "psido/config.hpp"
#include "psido/experiments.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config_path;
  std::string out_path;
  std::optional<std::string> format;
  int threads = 1;
};

void report_checks(const std::string& command, const std::vector<psido::Check>& checks) {
  for (const auto& c : checks) {
    std::cerr << command << ": " << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cerr << " (" << c.detail << ")";
    std::cerr << '\n';
  }
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty() || opt.out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw psido::ConfigError("cannot open output file '" + opt.out_path + "'");
  out << text;
  if (!out) throw psido::ConfigError("failed writing '" + opt.out_path + "'");
}

template <class Runner>
int run(const std::string& command, const Options& opt, const std::string& default_format, Runner runner) {
  psido::ExperimentConfig cfg;
  try {
    cfg = opt.config_path.empty() ? psido::default_config() : psido::load_config(opt.config_path);
  } catch (const std::exception& e) {
    std::cerr << command << ": config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (opt.threads < 1) {
    std::cerr << command << ": config error: --threads must be >= 1\n";
    return kExitConfig;
  }
  const std::string format = opt.format.value_or(default_format);
  try {
    const auto result = runner(cfg, opt.threads);
    emit(opt, format == "json" ? psido::to_json(result) : psido::to_csv(result));
    report_checks(command, result.checks);
    return psido::all_pass(result.checks) ? kExitPass : kExitFail;
  } catch (const psido::ConfigError& e) {
    std::cerr << command << ": config error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    // Parameters that parse but cannot be realized on the requested grid.
    std::cerr << command << ": config error: " << e.what() << '\n';
  }
  return kExitConfig;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config_path, "JSON experiment config (defaults if omitted)")->check(CLI::ExistingFile);
  sub->add_option("--out", opt.out_path, "output file (stdout if omitted)");
  sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--threads", opt.threads, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"psido-lab: pseudodifferential quantization and index experiments"};
  app.require_subcommand(1);
  Options opt;

  auto* sweep = app.add_subcommand("defect-sweep", "T_t multiplicativity, adjoint, chart and t->0 defects (CSV)");
  auto* index = app.add_subcommand("index-compare", "Fredholm vs analytic vs Higson index (JSON)");
  auto* ch = app.add_subcommand("ch-compare", "CH_t against T_t and quasicentrality (CSV)");
  auto* homotopy = app.add_subcommand("homotopy-verify", "inverse-CH homotopy identities (CSV)");
  for (auto* sub : {sweep, index, ch, homotopy}) add_common(sub, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (sweep->parsed()) return run("defect-sweep", opt, "csv", psido::run_defect_sweep);
  if (index->parsed()) return run("index-compare", opt, "json", psido::run_index_compare);
  if (ch->parsed()) return run("ch-compare", opt, "csv", psido::run_ch_compare);
  return run("homotopy-verify", opt, "csv", psido::run_homotopy_verify);
}
