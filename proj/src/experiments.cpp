#include "levy_smile/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "levy_smile/asymptotics.hpp"
#include "levy_smile/bs_engine.hpp"
#include "levy_smile/errors.hpp"
#include "levy_smile/fourier_pricer.hpp"
#include "levy_smile/mc_oracle.hpp"
#include "levy_smile/model_io.hpp"
#include "levy_smile/parallel.hpp"

namespace levy_smile {

const char* const kCsvHeader =
    "t,theta,k_t,exact_price,approx_price,normalised_price,implied_vol,expansion_vol,limit_value";

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

void put_cell(std::ostream& os, const std::optional<double>& v) {
  os << ',';
  if (v) os << format_number(*v);
}

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const nlohmann::json& required(const nlohmann::json& j, const std::string& key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError("missing key '" + key + "' in " + where);
  return *it;
}

double number(const nlohmann::json& j, const std::string& key, const std::string& where) {
  const auto& v = required(j, key, where);
  if (!v.is_number()) throw ConfigError("key '" + key + "' in " + where + " must be a number");
  return v.get<double>();
}

double number_or(const nlohmann::json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

std::vector<double> number_list(const nlohmann::json& v, const std::string& where) {
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(where + " must contain numbers");
      out.push_back(x.get<double>());
    }
    if (out.empty()) throw ConfigError(where + " is empty");
    return out;
  }
  // {"from": a, "to": b, "step": h}
  check_keys(v, {"from", "to", "step"}, where);
  const double from = number(v, "from", where);
  const double to = number(v, "to", where);
  const double step = number(v, "step", where);
  if (!(step > 0.0) || !(to >= from)) throw ConfigError(where + " needs step > 0 and to >= from");
  const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) {
        out.push_back(std::round((from + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

TemperedStableParams model_section(const nlohmann::json& j) {
  return model_from_json(required(j, "model", "config"));
}

MaturityGrid grid_section(const nlohmann::json& e, const std::string& where) {
  MaturityGrid g;
  g.t_max = number_or(e, "t_max", g.t_max, where);
  g.t_min = number_or(e, "t_min", g.t_min, where);
  if (e.contains("points")) {
    const auto& p = e.at("points");
    if (!p.is_number_integer()) throw ConfigError("points in " + where + " must be an integer");
    g.points = p.get<int>();
  }
  return g;
}

// Short-time approximation of the out-of-the-money price at log-strike k.
double side_approximation(double t, double k, double sigma, const JumpActivityConstants& a) {
  const bool plus = k > 0.0;
  const double alpha = plus ? a.alpha_plus : a.alpha_minus;
  const double c_tail = plus ? a.c_plus_tail : a.c_minus_tail;
  const double m = std::abs(k);
  if (alpha > 1.0) return plus ? infvar_call_approx(t, m, sigma, alpha, c_tail) : infvar_put_approx(t, m, sigma, alpha, c_tail);
  const double gamma = (plus ? a.gamma_plus : a.gamma_minus).value_or(0.0);
  return plus ? finvar_call_approx(t, m, sigma, gamma) : finvar_put_approx(t, m, sigma, gamma);
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << kCsvHeader << "\r\n";
  for (const auto& r : rows) {
    os << format_number(r.t);
    put_cell(os, r.theta);
    put_cell(os, r.k_t);
    put_cell(os, r.exact_price);
    put_cell(os, r.approx_price);
    put_cell(os, r.normalised_price);
    put_cell(os, r.implied_vol);
    put_cell(os, r.expansion_vol);
    put_cell(os, r.limit_value);
    os << "\r\n";
  }
}

std::vector<double> log_grid(double t_max, double t_min, int points) {
  if (points < 1) throw InvalidInput("grid needs at least one point");
  if (!(t_min > 0.0) || !(t_max >= t_min)) throw InvalidInput("grid needs 0 < t_min <= t_max");
  if (points == 1) return {t_max};
  std::vector<double> out(static_cast<std::size_t>(points));
  const double a = std::log(t_max);
  const double b = std::log(t_min);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (points - 1));
  out.front() = t_max;
  out.back() = t_min;
  return out;
}

// ---- table ----------------------------------------------------------------

bool TableReport::all_pass() const {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return !rows.empty();
}

TableReport run_table(const TableConfig& cfg, std::size_t mc_paths, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  TableReport report;
  report.rows = parallel_map(cfg.cases.size(), [&](std::size_t i) {
    const TableCase& c = cfg.cases[i];
    const LevyModel model(c.model);
    TableOutcome out;
    out.spec = c;
    out.computed = c.is_call ? price_call_fourier(model, c.spot, c.strike, c.maturity)
                             : price_put_fourier(model, c.spot, c.strike, c.maturity);
    out.rel_error = std::abs(out.computed / c.reference - 1.0);
    if (c.alternative_reference) out.alternative_rel_error = std::abs(out.computed / *c.alternative_reference - 1.0);
    out.pass = out.rel_error <= cfg.tolerance;
    if (mc_paths > 0) {
      SimConfig sim;
      sim.n_paths = mc_paths;
      sim.seed = seed + i;
      const auto samples = simulate_increments(model, c.maturity, sim);
      const Payoff payoff{c.is_call ? PayoffKind::call : PayoffKind::put, std::log(c.strike / c.spot)};
      const auto est = mc_price(samples, payoff);
      const double scale = c.spot * std::exp(-c.model.r * c.maturity);
      out.mc_estimate = scale * est.estimate;
      out.mc_standard_error = scale * est.standard_error;
    }
    return out;
  });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void print_table_report(std::ostream& os, const TableReport& report, double tolerance) {
  for (const auto& r : report.rows) {
    os << r.spec.name << ' ' << (r.spec.is_call ? "call" : "put") << " S0=" << format_number(r.spec.spot)
       << " K=" << format_number(r.spec.strike) << " T=" << format_number(r.spec.maturity)
       << " computed=" << format_number(r.computed) << " reference=" << format_number(r.spec.reference)
       << " rel_err=" << format_number(r.rel_error);
    if (r.spec.alternative_reference) {
      os << " alternative=" << format_number(*r.spec.alternative_reference)
         << " alt_rel_err=" << format_number(*r.alternative_rel_error);
    }
    if (r.mc_estimate) {
      os << " mc=" << format_number(*r.mc_estimate) << " mc_se=" << format_number(*r.mc_standard_error);
    }
    os << ' ' << (r.pass ? "PASS" : "FAIL") << '\n';
  }
  os << "tolerance=" << format_number(tolerance) << " seconds=" << format_number(report.seconds) << ' '
     << (report.all_pass() ? "PASS" : "FAIL") << '\n';
}

// ---- grids ----------------------------------------------------------------

std::vector<ExperimentRow> converge_atm(const TemperedStableParams& p, const std::vector<double>& t_grid) {
  const LevyModel model(p);
  if (!model.has_jumps()) throw InvalidInput("ATM normalisation needs a jump component");
  if (p.c_plus != p.c_minus || p.alpha_plus != p.alpha_minus || !(p.alpha_plus > 1.0)) {
    throw InvalidInput("ATM stable limit needs c+ = c- and alpha+ = alpha- > 1");
  }
  const double alpha = p.alpha_plus;
  const double limit = atm_stable_constant(p.c_plus, alpha);
  return parallel_map(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    ExperimentRow row;
    row.t = t;
    row.k_t = 0.0;
    row.exact_price = otm_forward_price(model, 0.0, t);
    row.approx_price = price_linear_call(model, 0.0, t);
    row.normalised_price = *row.exact_price * std::pow(t, -1.0 / alpha);
    row.limit_value = limit;
    return row;
  });
}

std::vector<ExperimentRow> converge_otm(const TemperedStableParams& p, const StrikeRule& rule,
                                        const std::vector<double>& t_grid) {
  const LevyModel model(p);
  const JumpActivityConstants a = jump_activity_constants(p);
  if (rule.kind == StrikeRule::Kind::power && !(rule.alpha_prime > 0.0)) throw InvalidInput("alpha' must be > 0");
  const bool plus = rule.kind == StrikeRule::Kind::power || rule.theta > 0.0;
  const double alpha = plus ? a.alpha_plus : a.alpha_minus;
  const double c_tail = plus ? a.c_plus_tail : a.c_minus_tail;
  if (!(alpha > 1.0) || !(c_tail > 0.0)) throw InvalidInput("OTM normalisation needs infinite-variation jumps on that side");
  const double limit = c_tail / (alpha - 1.0);
  return parallel_map(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    ExperimentRow row;
    row.t = t;
    double k = 0.0;
    if (rule.kind == StrikeRule::Kind::power) {
      k = std::pow(t, 1.0 / rule.alpha_prime);
    } else {
      row.theta = rule.theta;
      k = moving_strike(rule.theta, t).k_t;
    }
    row.k_t = k;
    row.exact_price = otm_forward_price(model, k, t);
    row.approx_price = side_approximation(t, k, p.sigma, a);
    row.normalised_price = *row.exact_price / (t * std::pow(std::abs(k), 1.0 - alpha));
    row.limit_value = limit;
    return row;
  });
}

SmileResult smile(const TemperedStableParams& p, const std::vector<double>& thetas,
                  const std::vector<double>& maturities, bool expansion_only) {
  const LevyModel model(p);
  const JumpActivityConstants a = jump_activity_constants(p);
  for (double th : thetas) {
    if (th == 0.0 || !std::isfinite(th)) throw InvalidInput("theta grid must not contain 0");
  }
  for (double t : maturities) moving_strike(1.0, t);

  struct Point {
    ExperimentRow row;
    bool warned = false;
  };
  const std::size_t n = thetas.size() * maturities.size();
  auto points = parallel_map(n, [&](std::size_t idx) {
    const double t = maturities[idx / thetas.size()];
    const double theta = thetas[idx % thetas.size()];
    Point pt;
    pt.row.t = t;
    pt.row.theta = theta;
    const double k = moving_strike(theta, t).k_t;
    pt.row.k_t = k;
    try {
      const SmileExpansion e = corollary_expansion(t, theta, p.sigma, a);
      pt.row.approx_price = e.approx_price;
      pt.row.expansion_vol = e.sigma_t;
    } catch (const UncoveredCase&) {
    }
    try {
      pt.row.limit_value = limit_smile(theta, p.sigma, a);
    } catch (const UncoveredCase&) {
    }
    if (!expansion_only) {
      const double price = otm_forward_price(model, k, t);
      pt.row.exact_price = price;
      try {
        pt.row.implied_vol = implied_vol({t, k, k >= 0.0, price});
      } catch (const PriceOutOfBounds&) {
        pt.warned = true;
      }
    }
    return pt;
  });

  SmileResult out;
  out.rows.reserve(n);
  for (auto& pt : points) {
    out.rows.push_back(pt.row);
    out.warnings += pt.warned ? 1 : 0;
  }
  return out;
}

// ---- config files ---------------------------------------------------------

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

TableConfig parse_table_config(const nlohmann::json& j) {
  check_keys(j, {"experiment"}, "config");
  const auto& e = required(j, "experiment", "config");
  check_keys(e, {"tolerance", "rows"}, "experiment");
  TableConfig cfg;
  cfg.tolerance = number_or(e, "tolerance", cfg.tolerance, "experiment");
  const auto& rows = required(e, "rows", "experiment");
  if (!rows.is_array() || rows.empty()) throw ConfigError("experiment.rows must be a non-empty array");
  for (const auto& r : rows) {
    check_keys(r, {"name", "model", "option", "reference", "alternative_reference"}, "table row");
    TableCase c;
    const auto& name = required(r, "name", "table row");
    if (!name.is_string()) throw ConfigError("table row name must be a string");
    c.name = name.get<std::string>();
    c.model = model_from_json(required(r, "model", "table row"));
    const auto& o = required(r, "option", "table row");
    check_keys(o, {"type", "spot", "strike", "maturity"}, "option");
    const auto& type = required(o, "type", "option");
    if (type != "call" && type != "put") throw ConfigError("option type must be \"call\" or \"put\"");
    c.is_call = type == "call";
    c.spot = number(o, "spot", "option");
    c.strike = number(o, "strike", "option");
    c.maturity = number(o, "maturity", "option");
    c.reference = number(r, "reference", "table row");
    if (r.contains("alternative_reference")) c.alternative_reference = number(r, "alternative_reference", "table row");
    cfg.cases.push_back(c);
  }
  return cfg;
}

ConvergeAtmConfig parse_converge_atm_config(const nlohmann::json& j) {
  check_keys(j, {"model", "experiment"}, "config");
  ConvergeAtmConfig cfg;
  cfg.model = model_section(j);
  const auto& e = required(j, "experiment", "config");
  check_keys(e, {"t_max", "t_min", "points"}, "experiment");
  cfg.grid = grid_section(e, "experiment");
  return cfg;
}

ConvergeOtmConfig parse_converge_otm_config(const nlohmann::json& j) {
  check_keys(j, {"model", "experiment"}, "config");
  ConvergeOtmConfig cfg;
  cfg.model = model_section(j);
  const auto& e = required(j, "experiment", "config");
  check_keys(e, {"t_max", "t_min", "points", "rules"}, "experiment");
  cfg.grid = grid_section(e, "experiment");
  const auto& rules = required(e, "rules", "experiment");
  if (!rules.is_array() || rules.empty()) throw ConfigError("experiment.rules must be a non-empty array");
  for (const auto& r : rules) {
    const auto& kind = required(r, "kind", "strike rule");
    StrikeRule rule;
    if (kind == "power") {
      check_keys(r, {"kind", "alpha_prime"}, "strike rule");
      rule.kind = StrikeRule::Kind::power;
      rule.alpha_prime = number(r, "alpha_prime", "strike rule");
    } else if (kind == "moving") {
      check_keys(r, {"kind", "theta"}, "strike rule");
      rule.kind = StrikeRule::Kind::moving;
      rule.theta = number(r, "theta", "strike rule");
    } else {
      throw ConfigError("strike rule kind must be \"power\" or \"moving\"");
    }
    cfg.rules.push_back(rule);
  }
  return cfg;
}

SmileConfig parse_smile_config(const nlohmann::json& j) {
  check_keys(j, {"model", "experiment"}, "config");
  SmileConfig cfg;
  cfg.model = model_section(j);
  const auto& e = required(j, "experiment", "config");
  check_keys(e, {"thetas", "maturities", "expansion_only"}, "experiment");
  cfg.thetas = number_list(required(e, "thetas", "experiment"), "experiment.thetas");
  cfg.maturities = number_list(required(e, "maturities", "experiment"), "experiment.maturities");
  if (e.contains("expansion_only")) {
    if (!e.at("expansion_only").is_boolean()) throw ConfigError("expansion_only must be a boolean");
    cfg.expansion_only = e.at("expansion_only").get<bool>();
  }
  return cfg;
}

}  // namespace levy_smile
