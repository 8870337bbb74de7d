// Command-line driver: wealth/income model runs, profit-ratio sweeps,
// distribution fits, inequality metrics, and the supporting dynamics models.
//
// Exit codes: 0 ok, 2 configuration error, 3 runtime/simulation error,
// 4 fit non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glv/dynamics.hpp"
#include "glv/engine.hpp"
#include "glv/io.hpp"
#include "glv/metrics.hpp"
#include "glv/sweep.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitNonConvergence = 4;

glv::ModelName parse_model(const std::string& name) {
  if (name == "1a") return glv::ModelName::M1A;
  if (name == "1b") return glv::ModelName::M1B;
  if (name == "1c") return glv::ModelName::M1C;
  if (name == "1d") return glv::ModelName::M1D;
  throw glv::ConfigError("unknown model '" + name + "' (expected 1a, 1b, 1c, 1d or custom)");
}

// "lo:hi:step" (inclusive) or a comma-separated list
std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  const auto parse_one = [](const std::string& s) {
    double v;
    if (!glv::io_detail::parse_double(s, v)) {
      throw glv::ConfigError("bad numeric value '" + s + "'");
    }
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw glv::ConfigError("range must be lo:hi:step");
    const double lo = parse_one(parts[0]);
    const double hi = parse_one(parts[1]);
    const double step = parse_one(parts[2]);
    if (!(step > 0.0)) throw glv::ConfigError("range step must be positive");
    for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_one(item));
  if (out.empty()) throw glv::ConfigError("empty value list");
  return out;
}

json metrics_json(const glv::MetricsReport& report) {
  json out;
  out["gini"] = report.gini;
  out["decile_ratio"] = report.decile_ratio;
  out["poverty_ratio"] = report.poverty_ratio;
  out["hill_alpha"] = report.hill_alpha ? json(*report.hill_alpha) : json(nullptr);
  out["n_tail"] = report.n_tail;
  return out;
}

json fit_json(const glv::FitResult& result) {
  json out;
  out["family"] = glv::family_name(result.params.family);
  switch (result.params.family) {
    case glv::DistFamily::GLV:
      out["alpha"] = result.params.alpha;
      out["L"] = result.params.L;
      out["K"] = result.params.K;
      break;
    case glv::DistFamily::LogNormal:
      out["mu"] = result.params.mu;
      out["sigma"] = result.params.sigma;
      break;
    case glv::DistFamily::MaxwellBoltzmann:
      out["a"] = result.params.a;
      break;
    case glv::DistFamily::ParetoTail:
      out["alpha"] = result.params.alpha;
      out["x_min"] = result.params.x_min;
      break;
  }
  out["reduced_chi2"] = result.reduced_chi2;
  out["converged"] = result.converged;
  out["evaluations"] = result.iterations;
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    glv::write_file_atomic(out_path, content);
  }
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOpts {
  std::string model = "1c";
  std::string config_path;
  std::uint64_t seed = 0;
  std::int64_t agents = 10000, iterations = 10000;
  double rho = 0.5;
  double wage_mean = 100.0, wage_sd = 0.0;
  std::string omega_kind = "fixed-per-agent";
  double omega_mean = 0.2, omega_sd = 0.0;
  double total_income = 0.0;
  std::string policy;
  double threshold = 0.9, cut = 0.2;
  std::string out_dir = ".";
  std::string snapshots;
  int threads = 0;

  CLI::Option* opt_model = nullptr;
  CLI::Option* opt_seed = nullptr;
  CLI::Option* opt_agents = nullptr;
  CLI::Option* opt_iters = nullptr;
  CLI::Option* opt_rho = nullptr;
  CLI::Option* opt_wm = nullptr;
  CLI::Option* opt_ws = nullptr;
  CLI::Option* opt_ok = nullptr;
  CLI::Option* opt_om = nullptr;
  CLI::Option* opt_os = nullptr;
  CLI::Option* opt_ti = nullptr;
  CLI::Option* opt_policy = nullptr;
  CLI::Option* opt_thresh = nullptr;
  CLI::Option* opt_cut = nullptr;
  CLI::Option* opt_out = nullptr;
  CLI::Option* opt_snap = nullptr;
  CLI::Option* opt_threads = nullptr;
};

void run_simulate(SimulateOpts& o) {
  if (!o.config_path.empty()) {
    // config file values fill in whatever the flags did not set
    const auto values = glv::parse_config_file(o.config_path);
    const std::map<std::string, CLI::Option*> known = {
        {"model", o.opt_model},      {"seed", o.opt_seed},       {"agents", o.opt_agents},
        {"iterations", o.opt_iters}, {"rho", o.opt_rho},         {"wage_mean", o.opt_wm},
        {"wage_sd", o.opt_ws},       {"omega_kind", o.opt_ok},   {"omega_mean", o.opt_om},
        {"omega_sd", o.opt_os},      {"total_income", o.opt_ti}, {"policy", o.opt_policy},
        {"threshold", o.opt_thresh}, {"cut", o.opt_cut},         {"out_dir", o.opt_out},
        {"snapshots", o.opt_snap},   {"threads", o.opt_threads},
    };
    for (const auto& [key, value] : values) {
      const auto found = known.find(key);
      if (found == known.end()) throw glv::ConfigError("unknown config key '" + key + "'");
      if (found->second->count() == 0) {
        found->second->add_result(value);
        found->second->run_callback();
      }
    }
  }
  if (o.opt_seed->count() == 0) throw glv::ConfigError("--seed is required");

  glv::EconParams params;
  if (o.model == "custom") {
    params.wage_spec = {o.wage_mean, o.wage_sd};
    if (o.omega_kind == "stochastic") {
      params.consumption_spec =
          glv::ConsumptionSpec::stochastic_per_step(o.omega_mean, o.omega_sd);
    } else if (o.omega_kind == "fixed-per-agent") {
      params.consumption_spec = glv::ConsumptionSpec::fixed_per_agent(o.omega_mean, o.omega_sd);
    } else if (o.omega_kind == "uniform") {
      params.consumption_spec = glv::ConsumptionSpec::fixed_uniform(o.omega_mean);
    } else {
      throw glv::ConfigError("unknown omega kind '" + o.omega_kind + "'");
    }
    params.profit_ratio = o.rho;
  } else {
    params = glv::make_preset(parse_model(o.model), o.seed).params;
    if (o.opt_rho->count() > 0) params.profit_ratio = o.rho;
    if (o.opt_wm->count() > 0) params.wage_spec.mean = o.wage_mean;
    if (o.opt_ws->count() > 0) params.wage_spec.sd = o.wage_sd;
    if (o.opt_om->count() > 0) params.consumption_spec.omega = o.omega_mean;
    if (o.opt_os->count() > 0) params.consumption_spec.spread = o.omega_sd;
  }
  params.seed = o.seed;
  params.n_agents = o.agents;
  params.n_iterations = o.iterations;
  if (o.opt_ti->count() > 0) params.explicit_total_income = o.total_income;
  if (o.opt_policy->count() > 0) {
    if (o.policy != "compulsory-saving") {
      throw glv::ConfigError("unknown policy '" + o.policy + "'");
    }
    glv::PolicySpec spec;
    spec.wealth_threshold_frac = o.threshold;
    spec.consumption_cut_frac = o.cut;
    params.policy = spec;
  }
  if (o.opt_snap->count() > 0) {
    for (double v : parse_value_list(o.snapshots)) {
      params.extra_snapshots.push_back(static_cast<std::int64_t>(v));
    }
  }
  params.validate();

  const glv::RunResult result = glv::run(params, o.threads);
  const glv::StationarityReport stationarity = glv::detect_stationarity(result);
  glv::PopulationState final_state;
  final_state.wealth = result.final_wealth;
  final_state.wages = result.earnings;
  const glv::RatioReport ratios = glv::derive_ratios(params, final_state);

  json doc;
  doc["model"] = o.model;
  doc["seed"] = params.seed;
  doc["agents"] = params.n_agents;
  doc["iterations"] = params.n_iterations;
  doc["profit_ratio"] = params.profit_ratio;
  if (params.policy) {
    doc["policy"] = {{"kind", "compulsory-saving"},
                     {"wealth_threshold_frac", params.policy->wealth_threshold_frac},
                     {"consumption_cut_frac", params.policy->consumption_cut_frac}};
  }
  doc["ratios"] = {{"profit_rate", ratios.profit_rate},
                   {"income_rate", ratios.income_rate},
                   {"bowley_ratio", ratios.bowley_ratio},
                   {"profit_ratio", ratios.profit_ratio}};
  doc["stationarity"] = {{"converged", stationarity.converged},
                         {"at_iteration", stationarity.at_iteration}};
  doc["floor_events"] = result.total_floor_events;

  const glv::MetricsReport wealth_metrics = glv::compute_metrics(result.final_wealth);
  const glv::MetricsReport income_metrics = glv::compute_metrics(result.final_income);
  const glv::MetricsReport earnings_metrics = glv::compute_metrics(result.earnings);
  json metrics;
  metrics["gini_wealth"] = wealth_metrics.gini;
  metrics["decile_wealth"] = wealth_metrics.decile_ratio;
  metrics["poverty_wealth"] = wealth_metrics.poverty_ratio;
  metrics["alpha_wealth"] =
      wealth_metrics.hill_alpha ? json(*wealth_metrics.hill_alpha) : json(nullptr);
  metrics["gini_income"] = income_metrics.gini;
  metrics["decile_income"] = income_metrics.decile_ratio;
  metrics["poverty_income"] = income_metrics.poverty_ratio;
  metrics["alpha_income"] =
      income_metrics.hill_alpha ? json(*income_metrics.hill_alpha) : json(nullptr);
  metrics["gini_earnings"] = earnings_metrics.gini;
  metrics["decile_earnings"] = earnings_metrics.decile_ratio;
  metrics["poverty_earnings"] = earnings_metrics.poverty_ratio;
  metrics["n_tail"] = wealth_metrics.n_tail;
  doc["metrics"] = metrics;

  fs::create_directories(o.out_dir);
  glv::write_file_atomic(fs::path(o.out_dir) / "wealth.csv",
                         glv::wealth_csv(result.final_wealth, result.final_income));
  glv::write_file_atomic(fs::path(o.out_dir) / "aggregates.csv",
                         glv::aggregate_csv(result.aggregate_series));
  glv::write_file_atomic(fs::path(o.out_dir) / "metrics.json", doc.dump(2) + "\n");

  std::cerr << "simulate model=" << o.model << " seed=" << params.seed
            << " gini_wealth=" << wealth_metrics.gini
            << " gini_income=" << income_metrics.gini
            << " converged=" << (stationarity.converged ? "yes" : "no") << "\n";
}

void setup_simulate(CLI::App& cmd) {
  auto o = std::make_shared<SimulateOpts>();
  o->opt_model = cmd.add_option("--model", o->model, "1a, 1b, 1c, 1d or custom");
  cmd.add_option("--config", o->config_path, "flat key = value config file");
  o->opt_seed = cmd.add_option("--seed", o->seed, "RNG seed (required)");
  o->opt_agents = cmd.add_option("--agents", o->agents, "number of agents");
  o->opt_iters = cmd.add_option("--iterations", o->iterations, "number of iterations");
  o->opt_rho = cmd.add_option("--rho", o->rho, "profit ratio in [0, 1]");
  o->opt_wm = cmd.add_option("--wage-mean", o->wage_mean, "wage mean");
  o->opt_ws = cmd.add_option("--wage-sd", o->wage_sd, "wage sd");
  o->opt_ok = cmd.add_option("--omega-kind", o->omega_kind,
                             "stochastic | fixed-per-agent | uniform (custom model)");
  o->opt_om = cmd.add_option("--omega-mean", o->omega_mean, "consumption rate mean");
  o->opt_os = cmd.add_option("--omega-sd", o->omega_sd,
                             "consumption sd (absolute; relative for stochastic)");
  o->opt_ti = cmd.add_option("--total-income", o->total_income,
                             "explicit income pool (required at rho = 1)");
  o->opt_policy = cmd.add_option("--policy", o->policy, "compulsory-saving");
  o->opt_thresh =
      cmd.add_option("--threshold", o->threshold, "policy wealth threshold fraction");
  o->opt_cut = cmd.add_option("--cut", o->cut, "policy consumption cut fraction");
  o->opt_out = cmd.add_option("--out-dir", o->out_dir, "output directory");
  o->opt_snap =
      cmd.add_option("--snapshots", o->snapshots, "extra snapshot iterations (comma list)");
  o->opt_threads = cmd.add_option("--threads", o->threads, "worker threads (0 = auto)");
  cmd.callback([o]() { run_simulate(*o); });
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOpts {
  std::string base = "1c";
  std::string rho_text = "0:1:0.05";
  std::string v_text;
  int replicates = 5;
  std::uint64_t seed = 0;
  std::int64_t agents = 10000, iterations = 10000;
  std::string out_path = "sweep.csv";
  int threads = 0;
  CLI::Option* opt_seed = nullptr;
};

void setup_sweep(CLI::App& cmd) {
  auto o = std::make_shared<SweepOpts>();
  cmd.add_option("--base", o->base, "base preset (1a..1d)");
  cmd.add_option("--rho", o->rho_text, "profit ratios, list or lo:hi:step");
  cmd.add_option("--v", o->v_text, "consumption spreads relative to the mean, list or range");
  cmd.add_option("--replicates", o->replicates, "seeds per cell");
  o->opt_seed = cmd.add_option("--seed", o->seed, "base RNG seed (required)");
  cmd.add_option("--agents", o->agents, "agents per run");
  cmd.add_option("--iterations", o->iterations, "iterations per run");
  cmd.add_option("--out", o->out_path, "output CSV path");
  cmd.add_option("--threads", o->threads, "worker threads (0 = auto)");
  cmd.callback([o]() {
    if (o->opt_seed->count() == 0) throw glv::ConfigError("--seed is required");
    glv::SweepSpec spec;
    spec.base = glv::make_preset(parse_model(o->base), o->seed, o->agents, o->iterations);
    spec.rho_values = parse_value_list(o->rho_text);
    if (!o->v_text.empty()) spec.v_values = parse_value_list(o->v_text);
    spec.replicates = o->replicates;
    spec.n_threads = o->threads;
    const glv::SweepTable table = glv::run_sweep(spec);
    emit(glv::sweep_csv(table), o->out_path);
    std::cerr << "sweep base=" << o->base << " cells=" << table.rows.size()
              << " replicates=" << o->replicates << " -> " << o->out_path << "\n";
  });
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitOpts {
  std::string family_text = "glv";
  std::string input;
  std::string out_path;
  double assumed_error = 100.0;
  long max_evals = 100000;
  double init_alpha = 0.0, init_l = 0.0, init_mu = 0.0, init_sigma = 0.0, init_a = 0.0,
         init_xmin = 0.0;
  CLI::Option *opt_ia = nullptr, *opt_il = nullptr, *opt_imu = nullptr, *opt_isg = nullptr,
              *opt_iak = nullptr, *opt_ix = nullptr;
};

void setup_fit(CLI::App& cmd, int* exit_code) {
  auto o = std::make_shared<FitOpts>();
  cmd.add_option("--family", o->family_text, "glv | lognormal | maxboltz | pareto");
  cmd.add_option("--input", o->input, "histogram CSV (bin_lo,bin_hi,count)")->required();
  cmd.add_option("--out", o->out_path, "output JSON path (default stdout)");
  cmd.add_option("--error", o->assumed_error, "assumed per-bin measurement sd");
  cmd.add_option("--max-evals", o->max_evals, "objective evaluation budget");
  o->opt_ia = cmd.add_option("--init-alpha", o->init_alpha, "initial alpha");
  o->opt_il = cmd.add_option("--init-l", o->init_l, "initial L");
  o->opt_imu = cmd.add_option("--init-mu", o->init_mu, "initial mu");
  o->opt_isg = cmd.add_option("--init-sigma", o->init_sigma, "initial sigma");
  o->opt_iak = cmd.add_option("--init-a", o->init_a, "initial Maxwell-Boltzmann scale");
  o->opt_ix = cmd.add_option("--init-xmin", o->init_xmin, "initial Pareto x_min");
  cmd.callback([o, exit_code]() {
    glv::DistFamily family;
    if (o->family_text == "glv") {
      family = glv::DistFamily::GLV;
    } else if (o->family_text == "lognormal") {
      family = glv::DistFamily::LogNormal;
    } else if (o->family_text == "maxboltz") {
      family = glv::DistFamily::MaxwellBoltzmann;
    } else if (o->family_text == "pareto") {
      family = glv::DistFamily::ParetoTail;
    } else {
      throw glv::ConfigError("unknown family '" + o->family_text + "'");
    }

    glv::Histogram hist = glv::read_histogram_csv(o->input);
    hist.assumed_error = o->assumed_error;
    glv::DistParams init = glv::default_fit_init(hist, family);
    if (o->opt_ia->count() > 0) init.alpha = o->init_alpha;
    if (o->opt_il->count() > 0 && family == glv::DistFamily::GLV) {
      init = glv::DistParams::glv_normalized(o->init_l, init.alpha);
    }
    if (o->opt_imu->count() > 0) init.mu = o->init_mu;
    if (o->opt_isg->count() > 0) init.sigma = o->init_sigma;
    if (o->opt_iak->count() > 0) init.a = o->init_a;
    if (o->opt_ix->count() > 0) init.x_min = o->init_xmin;

    const glv::FitResult result = glv::fit(hist, family, init, o->max_evals);
    emit(fit_json(result).dump(2) + "\n", o->out_path);
    std::cerr << "fit family=" << o->family_text << " reduced_chi2=" << result.reduced_chi2
              << " converged=" << (result.converged ? "yes" : "no") << "\n";
    if (!result.converged) *exit_code = kExitNonConvergence;
  });
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

struct MetricsOpts {
  std::string input;
  std::string column = "wealth";
  std::string out_path;
  std::int64_t n_tail = 0;
};

void setup_metrics(CLI::App& cmd) {
  auto o = std::make_shared<MetricsOpts>();
  cmd.add_option("--input", o->input, "CSV with a named column, or a bare column of numbers")
      ->required();
  cmd.add_option("--column", o->column, "column to analyse");
  cmd.add_option("--n-tail", o->n_tail, "tail size for the Hill estimator (0 = auto)");
  cmd.add_option("--out", o->out_path, "output JSON path (default stdout)");
  cmd.callback([o]() {
    const std::vector<double> values = glv::read_csv_column(o->input, o->column);
    std::optional<std::int64_t> n_tail_override;
    if (o->n_tail > 0) n_tail_override = o->n_tail;
    const glv::MetricsReport report = glv::compute_metrics(values, n_tail_override);
    emit(metrics_json(report).dump(2) + "\n", o->out_path);
    std::cerr << "metrics n=" << values.size() << " gini=" << report.gini << "\n";
  });
}

// ---------------------------------------------------------------------------
// lv
// ---------------------------------------------------------------------------

struct LvOpts {
  glv::LVParams params;
  double x0 = 2.0, y0 = 1.0, dt = 0.001;
  std::int64_t steps = 100000;
  std::string out_path = "lv.csv";
};

void setup_lv(CLI::App& cmd) {
  auto o = std::make_shared<LvOpts>();
  cmd.add_option("--a", o->params.a, "prey growth rate");
  cmd.add_option("--c", o->params.c, "predator death rate");
  cmd.add_option("--alpha", o->params.alpha_int, "predation rate");
  cmd.add_option("--gamma", o->params.gamma_int, "conversion rate");
  cmd.add_option("--x0", o->x0, "initial prey population");
  cmd.add_option("--y0", o->y0, "initial predator population");
  cmd.add_option("--dt", o->dt, "RK4 step size");
  cmd.add_option("--steps", o->steps, "number of steps");
  cmd.add_option("--out", o->out_path, "trajectory CSV path");
  cmd.callback([o]() {
    o->params.validate();
    if (!(o->dt > 0.0) || o->steps < 1) throw glv::ConfigError("need dt > 0 and steps >= 1");
    std::vector<double> times;
    std::vector<std::pair<double, double>> states;
    times.reserve(static_cast<std::size_t>(o->steps) + 1);
    states.reserve(static_cast<std::size_t>(o->steps) + 1);
    glv::PhasePoint s{o->x0, o->y0};
    times.push_back(0.0);
    states.push_back(s);
    const bool interior = o->x0 > 0.0 && o->y0 > 0.0;
    const double v0 = interior ? glv::lv_invariant(s, o->params) : 0.0;
    double max_drift = 0.0;
    for (std::int64_t i = 1; i <= o->steps; ++i) {
      s = glv::lv_step_rk4(s, o->params, o->dt);
      times.push_back(o->dt * static_cast<double>(i));
      states.push_back(s);
      if (interior) {
        max_drift = std::max(
            max_drift, std::fabs(glv::lv_invariant(s, o->params) - v0) / std::fabs(v0));
      }
    }
    emit(glv::lv_trajectory_csv(times, states), o->out_path);
    std::cerr << "lv steps=" << o->steps << " invariant_drift=" << max_drift << "\n";
  });
}

// ---------------------------------------------------------------------------
// city
// ---------------------------------------------------------------------------

struct CityOpts {
  glv::CityModelParams params;
  std::string out_path = "city.csv";
  std::string traj_path;
};

void setup_city(CLI::App& cmd) {
  auto o = std::make_shared<CityOpts>();
  cmd.add_option("--cities", o->params.n_cities, "number of cities");
  cmd.add_option("--steps", o->params.n_steps, "number of steps");
  cmd.add_option("--seed", o->params.seed, "RNG seed");
  cmd.add_option("--lambda-mean", o->params.lambda_spec.mean, "growth rate mean");
  cmd.add_option("--lambda-sd", o->params.lambda_spec.sd, "growth rate sd");
  cmd.add_option("--a-mean", o->params.a_spec.mean, "arrival rate mean");
  cmd.add_option("--a-sd", o->params.a_spec.sd, "arrival rate sd");
  cmd.add_option("--c-mean", o->params.c_spec.mean, "departure rate mean");
  cmd.add_option("--c-sd", o->params.c_spec.sd, "departure rate sd");
  cmd.add_option("--out", o->out_path, "final populations CSV path");
  cmd.add_option("--traj", o->traj_path, "optional trajectory CSV (t,mean_pop,max_pop)");
  cmd.callback([o]() {
    const glv::CityRunResult result = glv::run_city_model(o->params);
    emit(glv::column_csv("population", result.populations), o->out_path);
    if (!o->traj_path.empty()) {
      std::string traj = "t,mean_pop,max_pop\n";
      for (const auto& point : result.trajectory) {
        traj += std::to_string(point.t);
        traj += ',';
        traj += glv::format_double(point.mean_pop);
        traj += ',';
        traj += glv::format_double(point.max_pop);
        traj += '\n';
      }
      glv::write_file_atomic(o->traj_path, traj);
    }
    std::cerr << "city cities=" << o->params.n_cities << " steps=" << o->params.n_steps
              << " mean_pop=" << glv::mean(result.populations) << "\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"General Lotka-Volterra wealth and income model toolkit"};
  app.require_subcommand(1);

  int exit_code = kExitOk;
  setup_simulate(*app.add_subcommand("simulate", "run one wealth/income model"));
  setup_sweep(*app.add_subcommand("sweep", "run a profit-ratio / consumption-spread grid"));
  setup_fit(*app.add_subcommand("fit", "fit a density family to a histogram"), &exit_code);
  setup_metrics(*app.add_subcommand("metrics", "inequality metrics for a CSV column"));
  setup_lv(*app.add_subcommand("lv", "integrate the classical predator-prey system"));
  setup_city(*app.add_subcommand("city", "run the multiplicative city-population model"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const glv::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const glv::InsufficientGrid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const glv::TooFewAgents& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const glv::EmptyInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return exit_code;
}
