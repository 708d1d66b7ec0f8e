#include "logkdv/xcli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "logkdv/error.hpp"
#include "logkdv/linevolve.hpp"
#include "logkdv/modal.hpp"
#include "logkdv/nonlin.hpp"
#include "logkdv/numgrid.hpp"
#include "logkdv/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace logkdv::xcli {

namespace {

struct CommandName {
  Command c;
  const char* name;
};
constexpr CommandName kCommands[] = {
    {Command::spectrum, "spectrum"},
    {Command::modes, "modes"},
    {Command::decay_fit, "decay-fit"},
    {Command::evolve_linear, "evolve-linear"},
    {Command::evolve_nonlinear, "evolve-nonlinear"},
    {Command::project, "project"},
    {Command::eps_study, "eps-study"},
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Doubles go through JSON unchanged; NaN becomes null.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string to_string(Command c) {
  for (const auto& e : kCommands)
    if (e.c == c) return e.name;
  return "?";
}

Command command_from_string(const std::string& s) {
  for (const auto& e : kCommands)
    if (s == e.name) return e.c;
  throw ConfigError("command", "unknown command '" + s + "'");
}

ExperimentConfig defaults(Command c) {
  ExperimentConfig cfg;
  cfg.command = c;
  switch (c) {
    case Command::spectrum:
    case Command::modes:
      cfg.n_modes = 3;
      cfg.x_lo = -20.0;
      cfg.x_hi = 20.0;
      break;
    case Command::decay_fit:
      cfg.n_modes = 3;
      cfg.x_lo = 20.0;
      cfg.x_hi = 60.0;
      break;
    case Command::evolve_linear:
      cfg.kind = "odd";
      cfg.alpha = 0.1;
      break;
    case Command::evolve_nonlinear:
      cfg.n = 2048;
      cfg.dt = 1e-4;
      cfg.t_final = 1.0;
      cfg.kind = "soliton";
      cfg.record_every = 100;
      break;
    case Command::project:
      cfg.n_modes = 20;
      cfg.kind = "odd";
      cfg.alpha = 0.1;
      break;
    case Command::eps_study:
      cfg.n = 2048;
      cfg.dt = 1e-4;
      cfg.t_final = 0.5;
      cfg.kind = "gaussian";
      cfg.record_every = 100;
      break;
  }
  return cfg;
}

void validate(const ExperimentConfig& c) {
  auto fail = [](const char* field, const std::string& msg) { throw ConfigError(field, msg); };
  auto finite = [](double v) { return std::isfinite(v); };

  if (!finite(c.L) || c.L <= 0.0) fail("L", "half width must be positive and finite");
  if (c.n < 16 || c.n > (1 << 22)) fail("n", "grid size must lie in [16, 4194304]");
  if (!finite(c.k_max) || c.k_max < 8.0) fail("k_max", "k_max must be at least 8");
  if (c.n_k < 16 || c.n_k > (1 << 20)) fail("n_k", "k grid size must lie in [16, 1048576]");
  if (!finite(c.dt) || c.dt <= 0.0 || c.dt > 1e-2) fail("dt", "time step must lie in (0, 1e-2]");
  if (!finite(c.t_final) || c.t_final < 0.0) fail("t_final", "final time must be finite and >= 0");
  {
    const double ratio = c.t_final / c.dt;
    if (ratio > 1e8) fail("t_final", "more than 1e8 steps requested");
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
      fail("t_final", "final time must be a multiple of dt");
  }
  if (!finite(c.alpha) || c.alpha < 0.0) fail("alpha", "alpha must be finite and >= 0");
  if (!finite(c.c) || std::abs(c.c) > 5.0) fail("c", "soliton parameter c must lie in [-5, 5]");
  if (!finite(c.a) || std::abs(c.a) >= c.L) fail("a", "soliton offset must lie inside the box");
  if (!finite(c.eps) || c.eps <= 0.0) fail("eps", "eps must be positive");
  if (c.m != 1 && c.m != 2) fail("m", "regularization order must be 1 or 2");
  const int max_modes = c.command == Command::project ? 63 : 64;
  if (c.n_modes < 1 || c.n_modes > max_modes)
    fail("n_modes", "mode count must lie in [1, " + std::to_string(max_modes) + "]");
  if (c.n_modes >= c.n_k - 1) fail("n_modes", "mode count exceeds the k grid");
  if (c.record_every < 1) fail("record_every", "record cadence must be >= 1");

  static const std::vector<std::string> linear_kinds{"odd", "even", "gaussian", "kernel"};
  static const std::vector<std::string> nonlinear_kinds{"soliton", "gaussian", "perturbed"};
  auto in = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  const bool nonlinear = c.command == Command::evolve_nonlinear || c.command == Command::eps_study;
  if (nonlinear ? !in(nonlinear_kinds, c.kind) : !in(linear_kinds, c.kind))
    fail("kind", "initial data kind '" + c.kind + "' is not valid for " + to_string(c.command));
  if (c.branch != "plus" && c.branch != "minus") fail("branch", "branch must be plus or minus");

  if (!finite(c.x_lo) || !finite(c.x_hi) || !(c.x_lo < c.x_hi))
    fail("x_lo", "target range needs finite x_lo < x_hi");
  if (c.command == Command::decay_fit && c.x_lo <= 0.0) fail("x_lo", "fit window must start at x > 0");
  if (c.n_x < 2 || c.n_x > 1000000) fail("n_x", "target count must lie in [2, 1000000]");
  if (c.command == Command::decay_fit && c.n_x < 20) fail("n_x", "a decay fit needs at least 20 samples");

  if (c.eps_list.empty()) fail("eps_list", "eps list is empty");
  for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
    if (!finite(c.eps_list[i]) || c.eps_list[i] <= 0.0) fail("eps_list", "eps values must be positive");
    if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1]))
      fail("eps_list", "eps values must be strictly decreasing");
  }
  if (c.output_dir.empty()) fail("output_dir", "output directory must not be empty");
}

json to_json(const ExperimentConfig& c) {
  return json{{"command", to_string(c.command)},
              {"L", c.L},
              {"n", c.n},
              {"k_max", c.k_max},
              {"n_k", c.n_k},
              {"dt", c.dt},
              {"t_final", c.t_final},
              {"alpha", c.alpha},
              {"c", c.c},
              {"a", c.a},
              {"eps", c.eps},
              {"m", c.m},
              {"n_modes", c.n_modes},
              {"record_every", c.record_every},
              {"kind", c.kind},
              {"branch", c.branch},
              {"x_lo", c.x_lo},
              {"x_hi", c.x_hi},
              {"n_x", c.n_x},
              {"eps_list", c.eps_list},
              {"output_dir", c.output_dir}};
}

ExperimentConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  if (!j.contains("command") || !j["command"].is_string())
    throw ConfigError("command", "missing or not a string");
  ExperimentConfig c = defaults(command_from_string(j["command"].get<std::string>()));

  const std::map<std::string, std::function<void(const json&)>> setters{
      {"command", [](const json&) {}},
      {"L", [&](const json& v) { c.L = v.get<double>(); }},
      {"n", [&](const json& v) { c.n = v.get<int>(); }},
      {"k_max", [&](const json& v) { c.k_max = v.get<double>(); }},
      {"n_k", [&](const json& v) { c.n_k = v.get<int>(); }},
      {"dt", [&](const json& v) { c.dt = v.get<double>(); }},
      {"t_final", [&](const json& v) { c.t_final = v.get<double>(); }},
      {"alpha", [&](const json& v) { c.alpha = v.get<double>(); }},
      {"c", [&](const json& v) { c.c = v.get<double>(); }},
      {"a", [&](const json& v) { c.a = v.get<double>(); }},
      {"eps", [&](const json& v) { c.eps = v.get<double>(); }},
      {"m", [&](const json& v) { c.m = v.get<int>(); }},
      {"n_modes", [&](const json& v) { c.n_modes = v.get<int>(); }},
      {"record_every", [&](const json& v) { c.record_every = v.get<int>(); }},
      {"kind", [&](const json& v) { c.kind = v.get<std::string>(); }},
      {"branch", [&](const json& v) { c.branch = v.get<std::string>(); }},
      {"x_lo", [&](const json& v) { c.x_lo = v.get<double>(); }},
      {"x_hi", [&](const json& v) { c.x_hi = v.get<double>(); }},
      {"n_x", [&](const json& v) { c.n_x = v.get<int>(); }},
      {"eps_list", [&](const json& v) { c.eps_list = v.get<std::vector<double>>(); }},
      {"output_dir", [&](const json& v) { c.output_dir = v.get<std::string>(); }},
  };
  for (const auto& [key, value] : j.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(key, "unknown field");
    const bool integral = key == "n" || key == "n_k" || key == "m" || key == "n_modes" ||
                          key == "record_every" || key == "n_x";
    if (integral && !value.is_number_integer()) throw ConfigError(key, "expected an integer");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw ConfigError(key, std::string("wrong type: ") + e.what());
    }
  }
  return c;
}

namespace {

// Files written by one run, removed again if the run fails.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    files_.push_back(name);
    out << content;
    if (!out) throw Error("write failed for " + p.string());
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  void remove_all() noexcept {
    std::error_code ec;
    for (const auto& f : files_) fs::remove(dir_ / f, ec);
    files_.clear();
  }
  const std::vector<std::string>& files() const { return files_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> files_;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return x;
}

Branch branch_of(const ExperimentConfig& c) { return c.branch == "minus" ? Branch::minus : Branch::plus; }

linevolve::InitialKind linear_kind(const std::string& k) {
  if (k == "odd") return linevolve::InitialKind::odd;
  if (k == "even") return linevolve::InitialKind::even;
  if (k == "gaussian") return linevolve::InitialKind::gaussian;
  return linevolve::InitialKind::kernel;
}

Field nonlinear_data(const ExperimentConfig& c, const GridPtr& g, std::vector<std::string>& warnings) {
  if (c.kind == "soliton") return nonlin::soliton(c.c, c.a, g, c.t_final, &warnings);
  if (c.kind == "gaussian") return nonlin::soliton(0.0, 0.0, g);
  std::vector<double> v(static_cast<std::size_t>(g->size()));
  for (int j = 0; j < g->size(); ++j) {
    const double x = (*g)[j];
    v[static_cast<std::size_t>(j)] = gaussian::value(x) * (1.0 + 0.1 * std::exp(-(x - 1.0) * (x - 1.0)));
  }
  return Field(g, std::move(v));
}

std::string profile_csv(const Field& f) {
  std::string s = "t,x,u\n";
  for (int j = 0; j < f.size(); ++j)
    s += num(f.time) + "," + num((*f.grid)[j]) + "," + num(f[j]) + "\n";
  return s;
}

std::string profile_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "profile_t%g.csv", t);
  return buf;
}

json mode_json(const EigenMode& m) {
  std::vector<double> re, im;
  for (const cplx& z : m.u_physical) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  std::vector<double> k(m.uhat.grid->points().begin(), m.uhat.grid->points().end());
  return json{{"branch", m.branch == Branch::plus ? "plus" : "minus"},
              {"n", m.n},
              {"E", m.E},
              {"omega", m.omega},
              {"k", k},
              {"uhat", m.uhat.values},
              {"x", m.x},
              {"u_re", re},
              {"u_im", im}};
}

json eigen_summary(const std::vector<EigenMode>& modes) {
  json arr = json::array();
  for (const auto& m : modes)
    arr.push_back({{"n", m.n}, {"E", m.E}, {"omega", m.omega}, {"nodes", spectrum::nodal_count(m)}});
  return arr;
}

void run_spectrum(const ExperimentConfig& c, OutputSet& out, std::string& stage) {
  stage = "spectrum";
  const auto modes = spectrum::solve_half_line(c.k_max, c.n_k, c.n_modes, branch_of(c));
  out.write_json("spectrum.json", {{"branch", c.branch}, {"k_max", c.k_max}, {"n_k", c.n_k},
                                   {"modes", eigen_summary(modes)}});
}

void run_modes(const ExperimentConfig& c, OutputSet& out, std::string& stage) {
  stage = "spectrum";
  auto modes = spectrum::solve_half_line(c.k_max, c.n_k, c.n_modes, branch_of(c));
  const auto x = linspace(c.x_lo, c.x_hi, c.n_x);
  json arr = json::array();
  for (auto& m : modes) {
    spectrum::mode_to_physical(m, x);
    arr.push_back(mode_json(m));
  }
  out.write_json("modes.json", arr);
}

void run_decay_fit(const ExperimentConfig& c, OutputSet& out, std::string& stage) {
  stage = "spectrum";
  auto modes = spectrum::solve_half_line(c.k_max, c.n_k, c.n_modes, branch_of(c));
  const auto x = linspace(c.x_lo, c.x_hi, c.n_x);
  json fits = json::array();
  for (auto& m : modes) {
    const auto u = spectrum::mode_to_physical(m, x);
    json entry{{"n", m.n}, {"E", m.E}};
    for (auto [part, name] : {std::pair{spectrum::Part::real, "real"}, std::pair{spectrum::Part::imag, "imag"}}) {
      try {
        const auto fit = spectrum::fit_decay_exponent(x, u, {c.x_lo, c.x_hi}, part);
        entry[name] = {{"p", fit.p}, {"super_algebraic", fit.super_algebraic}, {"samples", fit.samples}};
      } catch (const DegenerateFitError& e) {
        entry[name] = {{"p", nullptr}, {"error", e.what()}};
      }
    }
    fits.push_back(entry);
  }
  out.write_json("decay.json", {{"window", {c.x_lo, c.x_hi}}, {"fits", fits}});
}

void run_evolve_linear(const ExperimentConfig& c, OutputSet& out, std::string& stage,
                       std::vector<std::string>& warnings) {
  stage = "linevolve";
  const GridPtr g = Grid::periodic(c.L, c.n);
  const Field u0 = linevolve::make_initial_data(linear_kind(c.kind), c.alpha, g);
  const std::vector<double> times{0.0, 0.5 * c.t_final, c.t_final};
  const auto traj = linevolve::evolve_linear(u0, c.dt, c.t_final, c.record_every, times);
  warnings.insert(warnings.end(), traj.warnings.begin(), traj.warnings.end());

  std::string diag = "t,l2,ec,xbar,sigma\n";
  std::vector<double> sigma;
  for (const auto& r : traj.records) {
    diag += num(r.t) + "," + num(r.l2) + "," + num(r.ec) + "," + num(r.xbar) + "," + num(r.sigma) + "\n";
    sigma.push_back(r.sigma);
  }
  out.write("diagnostics.csv", diag);
  for (const auto& f : traj.snapshots) out.write(profile_name(f.time), profile_csv(f));
  out.write_json("summary.json",
                 {{"max_sigma", jnum(sigma.empty() ? 0.0 : *std::max_element(sigma.begin(), sigma.end()))},
                  {"sigma_local_extrema", linevolve::count_local_extrema(sigma)},
                  {"max_ec_step_drift", traj.max_ec_step_drift},
                  {"max_solve_residual", traj.max_residual},
                  {"max_edge_amplitude", traj.max_edge_amplitude}});
}

void run_evolve_nonlinear(const ExperimentConfig& c, OutputSet& out, std::string& stage,
                          std::vector<std::string>& warnings) {
  stage = "nonlin";
  const GridPtr g = Grid::periodic(c.L, c.n);
  const Field v0 = nonlinear_data(c, g, warnings);
  const nonlin::RegularizedNonlinearity reg(c.eps, c.m);
  const std::vector<double> times{0.0, 0.5 * c.t_final, c.t_final};
  const auto traj = nonlin::evolve_nonlinear(v0, reg, c.dt, c.t_final, c.record_every, times);
  warnings.insert(warnings.end(), traj.warnings.begin(), traj.warnings.end());

  std::string s = "t,P,E_eps,E_log,h1\n";
  double dp = 0.0, de = 0.0, h1 = 0.0;
  const auto& f0 = traj.records.front();
  for (const auto& r : traj.records) {
    s += num(r.t) + "," + num(r.P) + "," + num(r.E_eps) + "," + num(r.E_log) + "," + num(r.h1) + "\n";
    dp = std::max(dp, std::abs(r.P - f0.P));
    de = std::max(de, std::abs(r.E_eps - f0.E_eps));
    h1 = std::max(h1, r.h1);
  }
  out.write("functionals.csv", s);
  for (const auto& f : traj.snapshots) out.write(profile_name(f.time), profile_csv(f));
  out.write_json("summary.json", {{"P_drift", f0.P > 0.0 ? dp / f0.P : dp},
                                  {"E_eps_drift", f0.E_eps != 0.0 ? de / std::abs(f0.E_eps) : de},
                                  {"max_h1", h1},
                                  {"max_linear_norm_defect", traj.max_linear_norm_defect}});
}

void run_project(const ExperimentConfig& c, OutputSet& out, std::string& stage) {
  stage = "spectrum";
  const auto modes = spectrum::solve_half_line(c.k_max, c.n_k, c.n_modes + 1, Branch::plus);
  stage = "linevolve";
  const GridPtr g = Grid::periodic(c.L, c.n);
  const Field u0 = linevolve::make_initial_data(linear_kind(c.kind), c.alpha, g);
  stage = "modal";
  const auto coef = modal::project(u0, modes);
  json arr = json::array();
  std::vector<double> omegas;
  for (int i = 0; i < coef.n_modes; ++i) {
    const auto& ap = coef.a_plus[static_cast<std::size_t>(i)];
    const auto& am = coef.a_minus[static_cast<std::size_t>(i)];
    const double om = modes[static_cast<std::size_t>(i + 1)].omega;
    omegas.push_back(om);
    arr.push_back({{"n", i + 1}, {"re_plus", ap.real()}, {"im_plus", ap.imag()},
                   {"re_minus", am.real()}, {"im_minus", am.imag()}, {"omega", om}});
  }
  json doc{{"b", coef.b}, {"a0", coef.a0}, {"a0_formula", coef.a0_formula},
           {"zero_even", coef.zero_even}, {"modes", arr}};
  doc["ec_quadrature"] = linevolve::diagnostics(u0, numgrid::build_schrodinger_L(*g)).ec;
  doc["ec_modal"] = std::abs(coef.b) <= 1e-8 ? json(modal::ec_modal(coef, omegas)) : json(nullptr);
  out.write_json("coefficients.json", doc);
}

void run_eps_study(const ExperimentConfig& c, OutputSet& out, std::string& stage,
                   std::vector<std::string>& warnings) {
  stage = "nonlin";
  const GridPtr g = Grid::periodic(c.L, c.n);
  const Field v0 = nonlinear_data(c, g, warnings);
  const auto rep = nonlin::eps_convergence(v0, c.eps_list, c.dt, c.t_final, c.m);
  json dist = json::array();
  for (const auto& row : rep.distance) {
    json r = json::array();
    for (double d : row) r.push_back(jnum(d));
    dist.push_back(r);
  }
  json initial = json::array();
  for (double e : rep.eps) {
    const auto f = nonlin::functionals(v0, nonlin::RegularizedNonlinearity(e, c.m));
    initial.push_back({{"eps", e}, {"E_eps", f.E_eps}, {"E_log", f.E_log}});
  }
  json pd = json::array(), ed = json::array();
  for (std::size_t i = 0; i < rep.eps.size(); ++i) {
    pd.push_back(jnum(rep.P_drift[i]));
    ed.push_back(jnum(rep.E_drift[i]));
  }
  out.write_json("eps_study.json", {{"eps", rep.eps}, {"distance", dist}, {"P_drift", pd},
                                    {"E_eps_drift", ed}, {"errors", rep.errors},
                                    {"initial_energies", initial}});
  for (std::size_t i = 0; i < rep.errors.size(); ++i)
    if (!rep.errors[i].empty()) throw Error("run with eps = " + num(rep.eps[i]) + " failed: " + rep.errors[i]);
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(OutputSet& out, const std::string& producer, const json& params,
                    const std::vector<std::string>& warnings) {
  json files = json::array();
  for (const auto& f : out.files()) files.push_back({{"path", f}, {"command", producer}, {"parameters", params}});
  out.write_json("manifest.json", {{"tool", "logkdv"},
                                   {"version", "0.1.0"},
                                   {"defaults_version", kDefaultsVersion},
                                   {"created", utc_now()},
                                   {"files", files},
                                   {"warnings", warnings}});
}

RunResult guarded(const fs::path& dir, const std::string& producer, const json& params,
                  const std::function<void(OutputSet&, std::string&, std::vector<std::string>&)>& body) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("output_dir", "cannot create " + dir.string());

  OutputSet out(dir);
  RunResult res;
  std::string stage = "xcli";
  try {
    body(out, stage, res.warnings);
    write_manifest(out, producer, params, res.warnings);
    res.files = out.files();
  } catch (const ConfigError&) {
    out.remove_all();
    throw;
  } catch (const std::exception& e) {
    out.remove_all();
    res.status = 1;
    res.error = stage + ": " + e.what();
  }
  return res;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
  validate(cfg);
  return guarded(cfg.output_dir, to_string(cfg.command), to_json(cfg),
                 [&](OutputSet& out, std::string& stage, std::vector<std::string>& warnings) {
                   switch (cfg.command) {
                     case Command::spectrum: run_spectrum(cfg, out, stage); break;
                     case Command::modes: run_modes(cfg, out, stage); break;
                     case Command::decay_fit: run_decay_fit(cfg, out, stage); break;
                     case Command::evolve_linear: run_evolve_linear(cfg, out, stage, warnings); break;
                     case Command::evolve_nonlinear: run_evolve_nonlinear(cfg, out, stage, warnings); break;
                     case Command::project: run_project(cfg, out, stage); break;
                     case Command::eps_study: run_eps_study(cfg, out, stage, warnings); break;
                   }
                 });
}

RunResult figure_bundle(const std::string& name, const std::string& output_dir) {
  if (output_dir.empty()) throw ConfigError("output_dir", "output directory must not be empty");
  const fs::path dir = fs::path(output_dir) / name;
  if (name == "fig1") {
    ExperimentConfig cfg = defaults(Command::modes);
    cfg.output_dir = dir.string();
    return guarded(dir, "figure:fig1", to_json(cfg),
                   [&](OutputSet& out, std::string& stage, std::vector<std::string>&) {
                     stage = "spectrum";
                     auto modes = spectrum::solve_half_line(cfg.k_max, cfg.n_k, 3, Branch::plus);
                     std::string s = "k,uhat_0,uhat_1,uhat_2\n";
                     const Grid& kg = *modes[0].uhat.grid;
                     for (int j = 0; j < kg.size(); ++j)
                       s += num(kg[j]) + "," + num(modes[0].uhat[j]) + "," + num(modes[1].uhat[j]) + "," +
                            num(modes[2].uhat[j]) + "\n";
                     out.write("uhat.csv", s);
                     out.write_json("eigenvalues.json", eigen_summary(modes));
                   });
  }
  if (name == "fig2" || name == "fig3") {
    ExperimentConfig cfg = defaults(Command::evolve_linear);
    cfg.kind = name == "fig2" ? "odd" : "even";
    cfg.alpha = name == "fig2" ? 0.1 : 0.25;
    cfg.output_dir = dir.string();
    return run(cfg);
  }
  throw ConfigError("figure", "unknown figure '" + name + "' (expected fig1, fig2 or fig3)");
}

}  // namespace logkdv::xcli
