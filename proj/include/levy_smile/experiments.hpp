#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levy_smile/levy_core.hpp"

namespace levy_smile {

// One CSV record; unset fields are written as empty cells.
struct ExperimentRow {
  double t = 0.0;
  std::optional<double> theta;
  std::optional<double> k_t;
  std::optional<double> exact_price;
  std::optional<double> approx_price;
  std::optional<double> normalised_price;
  std::optional<double> implied_vol;
  std::optional<double> expansion_vol;
  std::optional<double> limit_value;
};

extern const char* const kCsvHeader;

// Shortest round-trip decimal form, independent of locale.
std::string format_number(double x);
void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);

// `points` log-spaced maturities from t_max down to t_min (both included).
std::vector<double> log_grid(double t_max, double t_min, int points);

// ---- table ----------------------------------------------------------------

struct TableCase {
  std::string name;
  TemperedStableParams model;
  bool is_call = true;
  double spot = 1.0;
  double strike = 1.0;
  double maturity = 1.0;
  double reference = 0.0;
  std::optional<double> alternative_reference;
};

struct TableConfig {
  std::vector<TableCase> cases;
  double tolerance = 1e-4;
};

struct TableOutcome {
  TableCase spec;
  double computed = 0.0;
  double rel_error = 0.0;
  std::optional<double> alternative_rel_error;
  std::optional<double> mc_estimate;
  std::optional<double> mc_standard_error;
  bool pass = false;
};

struct TableReport {
  std::vector<TableOutcome> rows;
  double seconds = 0.0;
  bool all_pass() const;
};

// mc_paths = 0 skips the Monte Carlo column.
TableReport run_table(const TableConfig& cfg, std::size_t mc_paths = 0, std::uint64_t seed = 1);
void print_table_report(std::ostream& os, const TableReport& report, double tolerance);

// ---- grids ----------------------------------------------------------------

struct MaturityGrid {
  double t_max = 1e-1;
  double t_min = 1e-6;
  int points = 25;
  std::vector<double> values() const { return log_grid(t_max, t_min, points); }
};

// exact_price: ATM call; approx_price: E[(X_t)^+]; normalised_price: t^{-1/alpha} exact;
// limit_value: the stable constant. Needs c+ = c- > 0 and alpha+ = alpha- in (1,2).
std::vector<ExperimentRow> converge_atm(const TemperedStableParams& model, const std::vector<double>& t_grid);

struct StrikeRule {
  enum class Kind { power, moving } kind = Kind::power;
  double alpha_prime = 1.9;  // power: k_t = t^{1/alpha_prime}
  double theta = 0.2;        // moving: k_t = theta sqrt(t log 1/t)
};

// exact_price: out-of-the-money price at k_t (put for k_t < 0); approx_price:
// the short-time approximation of that side; normalised_price: exact / (t |k_t|^{1-alpha});
// limit_value: c_tail / (alpha - 1). Needs infinite-variation jumps on the side of k_t.
std::vector<ExperimentRow> converge_otm(const TemperedStableParams& model, const StrikeRule& rule,
                                        const std::vector<double>& t_grid);

struct SmileResult {
  std::vector<ExperimentRow> rows;
  int warnings = 0;  // exact prices outside the arbitrage bounds
};

// Rows ordered by maturity, then theta. With expansion_only the Fourier
// price and implied volatility are skipped.
SmileResult smile(const TemperedStableParams& model, const std::vector<double>& thetas,
                  const std::vector<double>& maturities, bool expansion_only);

// ---- config files ---------------------------------------------------------
// {"model": {...}, "experiment": {...}}; unknown keys raise ConfigError.

TableConfig parse_table_config(const nlohmann::json& j);

struct ConvergeAtmConfig {
  TemperedStableParams model;
  MaturityGrid grid;
};
ConvergeAtmConfig parse_converge_atm_config(const nlohmann::json& j);

struct ConvergeOtmConfig {
  TemperedStableParams model;
  MaturityGrid grid;
  std::vector<StrikeRule> rules;
};
ConvergeOtmConfig parse_converge_otm_config(const nlohmann::json& j);

struct SmileConfig {
  TemperedStableParams model;
  std::vector<double> thetas;
  std::vector<double> maturities;
  bool expansion_only = false;
};
SmileConfig parse_smile_config(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

}  // namespace levy_smile
