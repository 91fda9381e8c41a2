#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "levy_smile/errors.hpp"
#include "levy_smile/experiments.hpp"
#include "levy_smile/model_io.hpp"

#ifndef LEVY_SMILE_CONFIG_DIR
#define LEVY_SMILE_CONFIG_DIR "config"
#endif

namespace ls = levy_smile;

namespace {

constexpr int kOk = 0;
constexpr int kToleranceFailure = 1;
constexpr int kUsageError = 2;

struct Options {
  std::string config;
  std::string model;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<int> points;
  std::optional<double> theta;
  std::optional<double> alpha_prime;
  std::optional<double> tol;
  std::uint64_t seed = 20120521;
  std::size_t mc_paths = 0;
  std::string out;
  bool expansion_only = false;
};

nlohmann::json load_config(const Options& o, const std::string& fallback_name) {
  const std::string path = o.config.empty() ? std::string(LEVY_SMILE_CONFIG_DIR) + "/" + fallback_name : o.config;
  return ls::read_json_file(path);
}

// --model accepts inline JSON or a path to a JSON file.
void apply_model_override(const Options& o, ls::TemperedStableParams& model) {
  if (o.model.empty()) return;
  const auto first = o.model.find_first_not_of(" \t\n");
  if (first != std::string::npos && o.model[first] == '{') {
    try {
      model = ls::model_from_json(nlohmann::json::parse(o.model));
    } catch (const nlohmann::json::parse_error& e) {
      throw ls::ConfigError(std::string("--model: ") + e.what());
    }
  } else {
    model = ls::model_from_json(ls::read_json_file(o.model));
  }
}

void apply_grid_override(const Options& o, ls::MaturityGrid& g) {
  if (o.t_min) g.t_min = *o.t_min;
  if (o.t_max) g.t_max = *o.t_max;
  if (o.points) g.points = *o.points;
}

template <class Write>
void emit(const Options& o, Write&& write) {
  if (o.out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ls::ConfigError("cannot write '" + o.out + "'");
  write(f);
}

int run_table(const Options& o) {
  ls::TableConfig cfg = ls::parse_table_config(load_config(o, "table.json"));
  if (o.tol) cfg.tolerance = *o.tol;
  if (!o.model.empty()) {
    for (auto& c : cfg.cases) apply_model_override(o, c.model);
  }
  const ls::TableReport report = ls::run_table(cfg, o.mc_paths, o.seed);
  emit(o, [&](std::ostream& os) { ls::print_table_report(os, report, cfg.tolerance); });
  return report.all_pass() ? kOk : kToleranceFailure;
}

int run_converge_atm(const Options& o) {
  ls::ConvergeAtmConfig cfg = ls::parse_converge_atm_config(load_config(o, "converge_atm.json"));
  apply_model_override(o, cfg.model);
  apply_grid_override(o, cfg.grid);
  const auto rows = ls::converge_atm(cfg.model, cfg.grid.values());
  emit(o, [&](std::ostream& os) { ls::write_csv(os, rows); });
  return kOk;
}

int run_converge_otm(const Options& o) {
  ls::ConvergeOtmConfig cfg = ls::parse_converge_otm_config(load_config(o, "converge_otm.json"));
  apply_model_override(o, cfg.model);
  apply_grid_override(o, cfg.grid);
  if (o.alpha_prime || o.theta) {
    cfg.rules.clear();
    if (o.alpha_prime) cfg.rules.push_back({ls::StrikeRule::Kind::power, *o.alpha_prime, 0.0});
    if (o.theta) cfg.rules.push_back({ls::StrikeRule::Kind::moving, 0.0, *o.theta});
  }
  std::vector<ls::ExperimentRow> rows;
  const auto grid = cfg.grid.values();
  for (const auto& rule : cfg.rules) {
    const auto part = ls::converge_otm(cfg.model, rule, grid);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  emit(o, [&](std::ostream& os) { ls::write_csv(os, rows); });
  return kOk;
}

int run_smile(const Options& o, const std::string& fallback_name, bool force_expansion_only) {
  ls::SmileConfig cfg = ls::parse_smile_config(load_config(o, fallback_name));
  apply_model_override(o, cfg.model);
  if (o.theta) cfg.thetas = {*o.theta};
  if (o.t_min || o.t_max || o.points) {
    ls::MaturityGrid g;
    g.t_max = cfg.maturities.front();
    g.t_min = cfg.maturities.back();
    g.points = static_cast<int>(cfg.maturities.size());
    apply_grid_override(o, g);
    cfg.maturities = g.values();
  }
  const bool expansion_only = force_expansion_only || o.expansion_only || cfg.expansion_only;
  const ls::SmileResult result = ls::smile(cfg.model, cfg.thetas, cfg.maturities, expansion_only);
  if (result.warnings > 0) {
    std::cerr << "warning: " << result.warnings << " exact prices outside the arbitrage bounds; implied_vol left empty\n";
  }
  emit(o, [&](std::ostream& os) { ls::write_csv(os, result.rows); });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Short-maturity implied volatility experiments for tempered stable models"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "experiment config (JSON)");
    sub->add_option("--model", o.model, "model override: inline JSON object or file path");
    sub->add_option("--tol", o.tol, "relative tolerance");
    sub->add_option("--seed", o.seed, "Monte Carlo seed");
    sub->add_option("--out", o.out, "output path (default stdout)");
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--t-min", o.t_min, "smallest maturity");
    sub->add_option("--t-max", o.t_max, "largest maturity");
    sub->add_option("--points", o.points, "number of maturities")->check(CLI::PositiveNumber);
  };

  auto* table = app.add_subcommand("table", "price the validation table and compare with references");
  add_common(table);
  table->add_option("--mc-paths", o.mc_paths, "add a Monte Carlo estimate with this many paths");

  auto* atm = app.add_subcommand("converge-atm", "re-normalised at-the-money prices along a maturity grid");
  add_common(atm);
  add_grid(atm);

  auto* otm = app.add_subcommand("converge-otm", "normalised out-of-the-money prices along a maturity grid");
  add_common(otm);
  add_grid(otm);
  otm->add_option("--alpha-prime", o.alpha_prime, "strike rule k_t = t^{1/alpha'}");
  otm->add_option("--theta", o.theta, "strike rule k_t = theta sqrt(t log 1/t)");

  auto* sm = app.add_subcommand("smile", "implied volatility smile against its expansion and limit");
  add_common(sm);
  add_grid(sm);
  sm->add_option("--theta", o.theta, "single theta instead of the configured grid");
  sm->add_flag("--expansion-only", o.expansion_only, "skip Fourier prices and implied volatilities");

  auto* aq = app.add_subcommand("approx-quality", "smile --expansion-only with its own default config");
  add_common(aq);
  add_grid(aq);
  aq->add_option("--theta", o.theta, "single theta instead of the configured grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*table) return run_table(o);
    if (*atm) return run_converge_atm(o);
    if (*otm) return run_converge_otm(o);
    if (*sm) return run_smile(o, "smile.json", false);
    if (*aq) return run_smile(o, "approx_quality.json", true);
  } catch (const ls::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
