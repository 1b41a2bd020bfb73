#include "ghzsense/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ghzsense/ecc.hpp"
#include "ghzsense/fisher.hpp"
#include "ghzsense/noec.hpp"
#include "ghzsense/oracle.hpp"

namespace ghzsense {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SweepAxis parse_axis(const std::string& tag) {
  static const std::map<std::string, SweepAxis> axes = {
      {"gamma_tau", SweepAxis::gamma_tau},
      {"rounds", SweepAxis::rounds},
      {"xi_over_gamma", SweepAxis::xi_over_gamma},
      {"p", SweepAxis::p},
      {"alpha", SweepAxis::alpha},
      {"t_over_tau", SweepAxis::t_over_tau},
  };
  auto it = axes.find(tag);
  if (it == axes.end())
    throw std::invalid_argument("unknown sweep axis: " + tag);
  return it->second;
}

long long to_rounds(const nlohmann::json& v) {
  if (v.is_number_integer()) return v.get<long long>();
  return std::llround(v.get<double>());
}

double alpha_fisher(const SweepConfig& config, const SystemParams& params,
                    Method method, double alpha) {
  switch (config.scenario) {
    case Scenario::parity_ideal:
    case Scenario::parity_noisy_ancilla:
    case Scenario::parity_imperfect:
    case Scenario::parity_general: {
      GhzMixedState st = solve_recurrence(params);
      if (method == Method::exact) return fisher_povm(st, {alpha});
      if (method == Method::oracle)
        return fisher_povm_sum(st, {alpha}, params.n);
      throw std::invalid_argument("no series evaluator for alpha sweeps");
    }
    default:
      throw std::invalid_argument(
          "alpha sweeps need a parity-corrected scenario");
  }
}

double scenario_qfi(Scenario scenario, const SystemParams& params,
                    Method method) {
  switch (scenario) {
    case Scenario::no_ec:
      if (method == Method::exact)
        return qfi_noec_exact(params, params.t()).qfi;
      if (method == Method::series)
        return qfi_noec_taylor(params, params.t()).qfi;
      return qfi_numeric(params, scenario).result.qfi;
    case Scenario::parity_ideal:
      if (params.xi != 0.0 || params.p != 0.0)
        throw std::invalid_argument("parity-ideal requires xi = 0 and p = 0");
      if (method == Method::series) return qfi_case1_series(params).qfi;
      break;
    case Scenario::parity_noisy_ancilla:
      if (params.p != 0.0)
        throw std::invalid_argument("parity-noisy-ancilla requires p = 0");
      if (method == Method::series)
        return qfi_case2_series(params).result.qfi;
      break;
    case Scenario::parity_imperfect:
      if (params.xi != 0.0)
        throw std::invalid_argument("parity-imperfect requires xi = 0");
      if (method == Method::series) return qfi_case3_series(params).qfi;
      break;
    case Scenario::parity_general:
      if (method == Method::series)
        throw std::invalid_argument(
            "no series evaluator for parity-general");
      break;
    case Scenario::bitflip:
      if (method == Method::exact) return qfi_bitflip(params).qfi;
      if (method == Method::series)
        throw std::invalid_argument("no series evaluator for bitflip");
      return qfi_numeric(params, scenario).result.qfi;
  }
  if (method == Method::oracle) return qfi_numeric(params, scenario).result.qfi;
  return qfi_from_state(solve_recurrence(params), scenario, method)
      .result.qfi;
}

SweepRecord eval_record(const SweepConfig& config, const SystemParams& params,
                        Method method, double axis_value) {
  SweepRecord rec;
  rec.scenario = config.scenario;
  rec.method = method;
  rec.params = params;
  try {
    double qfi = config.axis == SweepAxis::alpha
                     ? alpha_fisher(config, params, method, axis_value)
                     : scenario_qfi(config.scenario, params, method);
    double nt = static_cast<double>(params.n) * params.t();
    rec.qfi = qfi;
    rec.qfi_over_tau2 = qfi / (params.tau * params.tau);
    rec.qfi_normalized = qfi / (nt * nt);
  } catch (const std::exception& e) {
    rec.qfi = rec.qfi_over_tau2 = rec.qfi_normalized = kNan;
    rec.error = e.what();
  }
  return rec;
}

SystemParams params_at(const SweepConfig& config, double value,
                       double t_fixed) {
  SystemParams p = config.base;
  switch (config.axis) {
    case SweepAxis::gamma_tau:
      p.tau = value / p.gamma;
      if (config.hold == HoldMode::total_time)
        p.rounds = std::max(1ll, std::llround(t_fixed / p.tau));
      break;
    case SweepAxis::rounds:
    case SweepAxis::t_over_tau:
      p.rounds = std::max(1ll, std::llround(value));
      break;
    case SweepAxis::xi_over_gamma:
      p.xi = value * p.gamma;
      break;
    case SweepAxis::p:
      p.p = value;
      break;
    case SweepAxis::alpha:
      break;
  }
  return p;
}

void print_g17(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");
  static const std::set<std::string> known = {
      "scenario", "n",      "omega",  "gamma",      "xi",
      "p",        "tau",    "rounds", "axis",       "start",
      "stop",     "points", "spacing", "evaluators", "out",
      "format",   "hold"};
  for (const auto& el : j.items())
    if (!known.count(el.key()))
      throw std::invalid_argument("unknown config key: " + el.key());
  for (const char* req : {"scenario", "axis", "start", "stop", "evaluators",
                          "out"})
    if (!j.contains(req))
      throw std::invalid_argument(std::string("missing config key: ") + req);

  SweepConfig c;
  c.scenario = parse_scenario(j.at("scenario").get<std::string>());
  c.base.n = j.value("n", 1);
  c.base.omega = j.value("omega", 0.0);
  c.base.gamma = j.value("gamma", 0.0);
  c.base.xi = j.value("xi", 0.0);
  c.base.p = j.value("p", 0.0);
  c.base.tau = j.value("tau", 1.0);
  if (j.contains("rounds")) c.base.rounds = to_rounds(j.at("rounds"));
  c.axis = parse_axis(j.at("axis").get<std::string>());
  c.start = j.at("start").get<double>();
  c.stop = j.at("stop").get<double>();
  c.points = j.value("points", 2);
  if (j.contains("spacing")) {
    std::string s = j.at("spacing").get<std::string>();
    if (s == "linear")
      c.spacing = Spacing::linear;
    else if (s == "log")
      c.spacing = Spacing::log;
    else
      throw std::invalid_argument("unknown spacing: " + s);
  }
  for (const auto& tag : j.at("evaluators"))
    c.evaluators.push_back(parse_method(tag.get<std::string>()));
  if (c.evaluators.empty())
    throw std::invalid_argument("evaluators must be non-empty");
  c.out = j.at("out").get<std::string>();
  if (j.contains("format")) {
    std::string f = j.at("format").get<std::string>();
    if (f == "csv")
      c.format = OutFormat::csv;
    else if (f == "json")
      c.format = OutFormat::json;
    else
      throw std::invalid_argument("unknown format: " + f);
  }
  if (j.contains("hold")) {
    std::string h = j.at("hold").get<std::string>();
    if (h == "rounds")
      c.hold = HoldMode::rounds;
    else if (h == "total_time")
      c.hold = HoldMode::total_time;
    else
      throw std::invalid_argument("unknown hold mode: " + h);
  }
  if (c.points < 2) throw std::invalid_argument("points must be >= 2");
  if (c.spacing == Spacing::log && (c.start <= 0.0 || c.stop <= 0.0))
    throw std::invalid_argument("log spacing requires positive endpoints");
  if (c.axis == SweepAxis::gamma_tau && c.base.gamma <= 0.0)
    throw std::invalid_argument("gamma_tau sweeps require gamma > 0");
  validate(c.base);
  return c;
}

std::vector<double> sweep_grid(const SweepConfig& config) {
  std::vector<double> grid(config.points);
  double a = config.start;
  double b = config.stop;
  if (config.spacing == Spacing::log) {
    a = std::log(a);
    b = std::log(b);
  }
  for (int i = 0; i < config.points; ++i) {
    double x = a + (b - a) * i / (config.points - 1);
    grid[i] = config.spacing == Spacing::log ? std::exp(x) : x;
  }
  return grid;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  std::vector<double> grid = sweep_grid(config);
  double t_fixed = config.base.t();
  size_t n_methods = config.evaluators.size();
  std::vector<SweepRecord> records(grid.size() * n_methods);

  // Worker pool over grid points; slots are preassigned, so output order is
  // sweep order no matter who finishes first.
  unsigned workers = std::min<unsigned>(
      std::thread::hardware_concurrency() > 0
          ? std::thread::hardware_concurrency()
          : 1u,
      static_cast<unsigned>(grid.size()));
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < grid.size();
         i = next.fetch_add(1)) {
      SystemParams p = params_at(config, grid[i], t_fixed);
      for (size_t k = 0; k < n_methods; ++k)
        records[i * n_methods + k] =
            eval_record(config, p, config.evaluators[k], grid[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return records;
}

void write_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
  os << "scenario,method,n,omega,gamma,xi,p,tau,rounds,t,qfi,qfi_over_tau2,"
        "qfi_normalized\n";
  for (const auto& r : records) {
    const SystemParams& p = r.params;
    os << to_string(r.scenario) << ',' << to_string(r.method) << ',' << p.n
       << ',';
    print_g17(os, p.omega);
    os << ',';
    print_g17(os, p.gamma);
    os << ',';
    print_g17(os, p.xi);
    os << ',';
    print_g17(os, p.p);
    os << ',';
    print_g17(os, p.tau);
    os << ',' << p.rounds << ',';
    print_g17(os, p.t());
    os << ',';
    print_g17(os, r.qfi);
    os << ',';
    print_g17(os, r.qfi_over_tau2);
    os << ',';
    print_g17(os, r.qfi_normalized);
    os << '\n';
  }
}

void write_json(const std::vector<SweepRecord>& records, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["scenario"] = to_string(r.scenario);
    row["method"] = to_string(r.method);
    row["n"] = r.params.n;
    row["omega"] = r.params.omega;
    row["gamma"] = r.params.gamma;
    row["xi"] = r.params.xi;
    row["p"] = r.params.p;
    row["tau"] = r.params.tau;
    row["rounds"] = r.params.rounds;
    row["t"] = r.params.t();
    row["qfi"] = r.qfi;
    row["qfi_over_tau2"] = r.qfi_over_tau2;
    row["qfi_normalized"] = r.qfi_normalized;
    if (!r.error.empty()) row["error"] = r.error;
    arr.push_back(std::move(row));
  }
  os << arr.dump(2) << '\n';
}

void write_records(const SweepConfig& config,
                   const std::vector<SweepRecord>& records) {
  std::filesystem::path out(config.out);
  if (out.has_parent_path())
    std::filesystem::create_directories(out.parent_path());
  std::ofstream os(out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + config.out);
  if (config.format == OutFormat::csv)
    write_csv(records, os);
  else
    write_json(records, os);
}

std::vector<SweepConfig> expand_preset(const std::string& name,
                                       const std::string& out_dir) {
  std::vector<SweepConfig> out;
  auto file = [&](const std::string& tag) {
    return out_dir + "/" + name + "_" + tag + ".csv";
  };

  if (name == "fig2a" || name == "fig2d") {
    for (double omega : {20.0, 0.05}) {
      for (long long rounds : {1000ll, 1000000ll}) {
        SweepConfig c;
        c.scenario = Scenario::parity_ideal;
        c.base = {25, omega, 1.0, 0.0, 0.0, 1e-3, rounds};
        c.axis = SweepAxis::gamma_tau;
        c.start = 1e-5;
        c.stop = 1.0;
        c.points = 101;
        c.spacing = Spacing::log;
        c.evaluators = {Method::exact, Method::series};
        c.hold = HoldMode::rounds;
        c.out = file((omega > 1.0 ? "w20_" : "w005_") +
                     std::string(rounds == 1000 ? "T1e3" : "T1e6"));
        out.push_back(c);
      }
    }
    return out;
  }

  if (name == "fig3a" || name == "fig3b" || name == "fig3c") {
    for (double omega : {20.0, 0.05}) {
      for (double gt : {100.0, 1000.0, 10000.0}) {
        SweepConfig c;
        c.scenario = name == "fig3a"   ? Scenario::parity_ideal
                     : name == "fig3b" ? Scenario::parity_noisy_ancilla
                                       : Scenario::parity_imperfect;
        double xi = name == "fig3b" ? 1e-4 : 0.0;
        double p = name == "fig3c" ? 0.01 : 0.0;
        c.base = {25, omega, 1.0, xi, p, 1e-3,
                  static_cast<long long>(gt / 1e-3)};
        c.axis = SweepAxis::gamma_tau;
        c.start = 1e-5;
        c.stop = 1.0;
        c.points = 61;
        c.spacing = Spacing::log;
        c.evaluators = {Method::exact, Method::series};
        c.hold = HoldMode::total_time;
        char tag[32];
        std::snprintf(tag, sizeof tag, "%s_gt%g", omega > 1.0 ? "w20" : "w005",
                      gt);
        c.out = file(tag);
        out.push_back(c);
      }
    }
    return out;
  }

  if (name == "fig4") {
    auto common = [&](SweepConfig& c) {
      c.axis = SweepAxis::t_over_tau;
      c.start = 1.0;
      c.stop = 1e6;
      c.points = 61;
      c.spacing = Spacing::log;
      c.hold = HoldMode::rounds;
    };
    SweepConfig today;
    today.scenario = Scenario::parity_general;
    today.base = {1, 1e4, 1e6, 2000.0, 0.06, 1e-6, 1};
    common(today);
    today.evaluators = {Method::exact};
    today.out = file("today");
    out.push_back(today);

    SweepConfig improved;
    improved.scenario = Scenario::parity_imperfect;
    improved.base = {1, 1e4, 1e6, 0.0, 0.001, 1e-6, 1};
    common(improved);
    improved.evaluators = {Method::exact, Method::series};
    improved.out = file("improved");
    out.push_back(improved);

    SweepConfig smalltau = improved;
    smalltau.base.tau = 1e-7;
    smalltau.out = file("improved_smalltau");
    out.push_back(smalltau);
    return out;
  }

  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace ghzsense
