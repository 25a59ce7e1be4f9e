// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec_tools/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablespec/cauchy/cauchy.hpp"
#include "stablespec/error.hpp"
#include "stablespec/heatkernel/heatkernel.hpp"
#include "stablespec/mellin/density.hpp"
#include "stablespec/operators/operators.hpp"
#include "stablespec/specfun/specfun.hpp"
#include "stablespec/stablemc/stablemc.hpp"
#include "stablespec_tools/config.hpp"
#include "stablespec_tools/validation.hpp"

namespace stablespec::tools {
namespace {

using numerics::Grid;
using numerics::GridFunction;
using operators::FunctionClass;
using specfun::AlphaParams;

std::string num(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "cli", what); }

// Flags shared by every subcommand; applied over the config file only when
// given on the command line.
struct CommonFlags {
  std::string config_path;
  bool dump_config = false;
  double alpha = 1.5;
  std::string format;
  std::string output;
  double tol = 0.0;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  long grid_n = 0;
  std::string grid_spacing;
};

void add_common(CLI::App& app, CommonFlags& f) {
  app.add_option("--config", f.config_path, std::string("Config file (JSON); default from $") + kConfigEnv);
  app.add_flag("--dump-config", f.dump_config, "Print the resolved configuration and exit");
  app.add_option("--alpha", f.alpha, "Stability index in (1, 2)");
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", f.output, "Output file (default stdout)");
  app.add_option("--tol", f.tol, "Tolerance for the subcommand's main computation");
  app.add_option("--grid-lo", f.grid_lo, "Grid lower end");
  app.add_option("--grid-hi", f.grid_hi, "Grid upper end");
  app.add_option("--grid-n", f.grid_n, "Grid size");
  app.add_option("--grid-spacing", f.grid_spacing, "Grid spacing")->check(CLI::IsMember({"linear", "logarithmic"}));
}

RunConfig resolve(const CLI::App& sub, const CommonFlags& f, const std::string& tol_key) {
  RunConfig c;
  std::string path = f.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env && *env) path = env;
  }
  if (!path.empty()) c = load_config_file(path, c);
  if (sub.count("--alpha")) c.alpha = f.alpha;
  if (!f.format.empty()) c.output.format = f.format;
  if (!f.output.empty()) c.output.path = f.output;
  if (sub.count("--tol") && !tol_key.empty()) c.tolerances[tol_key] = f.tol;
  if (sub.count("--grid-lo")) c.grid.lo = f.grid_lo;
  if (sub.count("--grid-hi")) c.grid.hi = f.grid_hi;
  if (sub.count("--grid-n")) c.grid.n = f.grid_n;
  if (!f.grid_spacing.empty()) c.grid.spacing = f.grid_spacing;
  c.validate();
  return c;
}

void emit(const RunConfig& c, const Table& t, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.output.path.empty()) {
    file.open(c.output.path);
    if (!file) usage("cannot write '" + c.output.path + "'");
    os = &file;
  }
  if (c.output.format == "json")
    write_json(*os, t);
  else
    write_csv(*os, t);
}

std::vector<double> points_or_grid(const std::vector<double>& xs, const RunConfig& c) {
  return xs.empty() ? c.grid.build().points() : xs;
}

// --- specfun ---------------------------------------------------------------

struct SpecfunArgs {
  std::string fn = "calJ";
  std::vector<double> x;
  int deriv = 0;
};

Table do_specfun(const SpecfunArgs& a, const RunConfig& c) {
  const AlphaParams p(c.alpha);
  std::function<double(double)> f;
  if (a.fn == "calJ")
    f = [&](double x) { return specfun::calJ(x, p, a.deriv); };
  else if (a.fn == "hatJ")
    f = [&](double x) { return specfun::hatJ(x, p, a.deriv); };
  else if (a.fn == "J")
    f = [&](double x) { return specfun::besselJ_alpha(x, p); };
  else
    f = [&](double x) { return specfun::g_alpha(x, p); };
  if (a.deriv != 0 && (a.fn == "J" || a.fn == "g")) usage("--deriv is only available for calJ and hatJ");
  Table t{{"x", "value"}, {}};
  for (double x : points_or_grid(a.x, c)) t.rows.push_back({x, f(x)});
  return t;
}

// --- density ---------------------------------------------------------------

Table do_density(const std::string& name, const RunConfig& c, std::ostream& err) {
  const auto d = mellin::density(name, AlphaParams(c.alpha), c.grid.build());
  err << "density " << name << ": normalization_defect " << num(d.normalization_defect, 3) << ", clip_mass "
      << num(d.clip_mass, 3) << "\n";
  Table t{{"y", "density"}, {}};
  const auto& g = d.samples.grid();
  for (std::size_t i = 0; i < g.size(); ++i) t.rows.push_back({g[i], d.samples.values()[i]});
  return t;
}

// --- kernel ----------------------------------------------------------------

struct KernelArgs {
  std::vector<double> t{1.0};
  std::vector<double> x{1.0};
  std::vector<double> y{1.0};
  std::string rep = "automatic";
  int dt = 0;
  int dx = 0;
  int dy = 0;
};

Table do_kernel(const KernelArgs& a, const RunConfig& c, std::ostream& err) {
  const AlphaParams p(c.alpha);
  Table out{{"t", "x", "y", "value", "error_estimate", "rep_used"}, {}};
  std::vector<heatkernel::Representation> reps;
  if (a.rep == "both")
    reps = {heatkernel::Representation::integral, heatkernel::Representation::series};
  else if (a.rep == "integral")
    reps = {heatkernel::Representation::integral};
  else if (a.rep == "series")
    reps = {heatkernel::Representation::series};
  else
    reps = {heatkernel::Representation::automatic};
  for (double t : a.t)
    for (double x : a.x)
      for (double y : a.y) {
        std::vector<double> vals;
        for (auto rep : reps) {
          heatkernel::KernelRequest r;
          r.t = t;
          r.x = x;
          r.y = y;
          r.deriv = {a.dt, a.dx, a.dy};
          r.rep = rep;
          r.tol = c.tol("kernel");
          r.validate();
          const auto v = heatkernel::kernel(r, p);
          vals.push_back(v.value);
          out.rows.push_back({t, x, y, v.value, v.error_estimate, std::string(heatkernel::to_string(v.rep_used))});
        }
        if (vals.size() == 2)
          err << "kernel t=" << t << " x=" << x << " y=" << y << ": |integral - series| = "
              << num(std::abs(vals[0] - vals[1]), 3) << "\n";
      }
  return out;
}

// --- solve -----------------------------------------------------------------

struct SolveArgs {
  std::string family;
  std::string input;
  std::string cls = "e_alpha_kappa";
  double kappa = 1.0;
  double tau = 1.0;
  double eta = 1.0;
  double beta = 1.0;
  std::vector<double> t{0.5};
  std::vector<double> x;
  std::string route = "auto";
};

GridFunction read_csv_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) usage("cannot open initial data '" + path + "'");
  std::vector<double> xs;
  std::vector<double> vs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double x = 0.0;
    double v = 0.0;
    if (!(ls >> x >> v)) {
      if (lineno == 1) continue;  // header row
      usage(path + ":" + std::to_string(lineno) + ": expected 'x,value'");
    }
    if (!xs.empty() && !(x > xs.back())) usage(path + ":" + std::to_string(lineno) + ": x must increase");
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 4) usage(path + ": need at least 4 samples");
  if (!(xs.front() > 0.0)) usage(path + ": x must be positive");
  // Geometric node spacing means a logarithmic grid.
  const double r0 = xs[1] / xs[0];
  bool geometric = true;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) geometric = geometric && std::abs(xs[i + 1] / xs[i] - r0) < 1e-6 * r0;
  const Grid grid(std::move(xs), geometric ? numerics::Spacing::logarithmic : numerics::Spacing::linear);
  auto hint = operators::fit_power_tail(grid, vs);
  return GridFunction(grid, std::move(vs), hint);
}

Table do_solve(const SolveArgs& a, const RunConfig& c, std::ostream& err) {
  const AlphaParams p(c.alpha);
  const Grid grid = c.grid.build();
  std::optional<GridFunction> f;
  FunctionClass cls;
  if (!a.family.empty() && !a.input.empty()) usage("give either --family or --input, not both");
  if (a.family == "e") {
    cls = FunctionClass::e_alpha_kappa(a.kappa, {{a.tau, 1.0}});
    cls.validate(p);
    f = operators::stretched_family(grid, p, cls);
  } else if (a.family == "exp") {
    // e^{-x^beta}, given through its preimage B_beta.
    auto B = cauchy::b_beta_function(grid, a.beta, p);
    cls = FunctionClass::range_lambda(std::move(B));
    const double beta = a.beta;
    f = GridFunction::analytic(grid, [beta](double x) { return std::exp(-std::pow(x, beta)); },
                               numerics::DecayHint::stretched(1.0, beta));
  } else if (!a.family.empty()) {
    usage("unknown family '" + a.family + "' (expected e or exp)");
  } else if (!a.input.empty()) {
    GridFunction g = read_csv_function(a.input);
    if (a.cls == "weighted")
      cls = FunctionClass::weighted(a.kappa, a.eta);
    else if (a.cls == "l2")
      cls = FunctionClass::l2();
    else
      usage("initial data from CSV needs --class weighted or --class l2 (with --route dual)");
    f = std::move(g);
  } else {
    usage("solve needs --family or --input");
  }
  const std::vector<double> xs = points_or_grid(a.x, c);
  // The solver wants a grid; a single point gets a companion that is dropped.
  std::vector<double> nodes = xs;
  if (nodes.size() == 1) nodes.push_back(nodes[0] + 1.0);
  cauchy::SolveRequest req{*f, cls, a.t, Grid(nodes, a.x.empty() ? grid.spacing() : numerics::Spacing::linear),
                           cauchy::route_from_string(a.route), c.tol("solve")};
  const auto res = cauchy::solve(req, p);
  err << "solve: route " << cauchy::to_string(res.report.route_chosen) << ", T_alpha " << num(res.report.T_alpha, 6)
      << ", spectral nodes " << res.spectral_nodes << "\n";
  Table out{{"t", "x", "value"}, {}};
  for (std::size_t k = 0; k < a.t.size(); ++k)
    for (std::size_t i = 0; i < xs.size(); ++i) out.rows.push_back({a.t[k], xs[i], res.solutions[k].values()[i]});
  return out;
}

// --- mc --------------------------------------------------------------------

struct MCArgs {
  std::string fn = "calJ";
  double x0 = 1.0;
  double t = 0.5;
  double q = 1.0;
  double tau = 1.0;
  std::uint64_t seed = 0;
  long n_paths = 0;
  int n_steps = 0;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_paths = nullptr;
  CLI::Option* o_steps = nullptr;
};

void write_mc(const RunConfig& c, const stablemc::PathEstimate& e, const std::string& hash, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.output.path.empty()) {
    file.open(c.output.path);
    if (!file) usage("cannot write '" + c.output.path + "'");
    os = &file;
  }
  if (c.output.format == "json") {
    *os << "{\"mean\": " << num(e.mean, 17) << ", \"stderr\": " << num(e.std_error, 17)
        << ", \"n_paths\": " << e.n_paths << ", \"config_hash\": " << json_string(hash) << "}\n";
  } else {
    Table t{{"mean", "stderr", "n_paths", "config_hash"}, {{e.mean, e.std_error, e.n_paths, hash}}};
    write_csv(*os, t);
  }
}

// --- validate --------------------------------------------------------------

int do_validate(bool quick, const RunConfig& c, std::ostream& out) {
  SuiteOptions opt;
  opt.alpha = c.alpha;
  opt.seed = c.mc.seed;
  const bool json = c.output.format == "json";
  if (!json) opt.on_result = [&](const CheckResult& r) { out << format_line(r) << std::endl; };
  const auto results = quick ? run_quick(opt) : run_acceptance(opt);
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  if (json) {
    out << "[\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      out << "  {\"id\": " << r.id << ", \"name\": " << json_string(r.name) << ", \"pass\": " << (r.pass ? "true" : "false")
          << ", \"detail\": " << json_string(r.detail) << ", \"seconds\": " << num(r.seconds, 17) << "}"
          << (i + 1 < results.size() ? ",\n" : "\n");
    }
    out << "]\n";
  } else {
    print_summary(out, results);
  }
  return ok ? kExitOk : kExitValidationFailed;
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              os << num(v, 12);
            else
              os << v;
          },
          row[i]);
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  os << "[\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    os << "  {";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      os << (i ? ", " : "") << json_string(t.columns[i]) << ": ";
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              os << (std::isfinite(v) ? num(v, 17) : "null");
            else if constexpr (std::is_same_v<T, long>)
              os << v;
            else
              os << json_string(v);
          },
          t.rows[r][i]);
    }
    os << (r + 1 < t.rows.size() ? "},\n" : "}\n");
  }
  os << "]\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral computations for the reflected spectrally negative stable semigroup", "stablespec"};
  app.require_subcommand(1);
  CommonFlags common;

  auto* sf = app.add_subcommand("specfun", "Evaluate calJ, hatJ, J or g on points or the grid");
  SpecfunArgs sfa;
  sf->add_option("--fn", sfa.fn, "Function")->check(CLI::IsMember({"calJ", "hatJ", "J", "g"}));
  sf->add_option("--x", sfa.x, "Points (comma separated); default: the grid")->delimiter(',');
  sf->add_option("--deriv", sfa.deriv, "Derivative order")->check(CLI::Range(0, 4));

  auto* de = app.add_subcommand("density", "Density by Mellin inversion on the grid");
  std::string dname = "lambda_alpha";
  de->add_option("--name", dname, "Density")->check(CLI::IsMember({"lambda_alpha", "lambda_X", "lambda_G"}));

  auto* ke = app.add_subcommand("kernel", "Heat kernel P_t(x, y) on a (t, x, y) product grid");
  KernelArgs ka;
  ke->add_option("--t", ka.t, "Times")->delimiter(',');
  ke->add_option("--x", ka.x, "Start points")->delimiter(',');
  ke->add_option("--y", ka.y, "End points")->delimiter(',');
  ke->add_option("--rep", ka.rep, "Representation")
      ->check(CLI::IsMember({"integral", "series", "automatic", "both"}));
  ke->add_option("--dt", ka.dt, "Order of d/dt")->check(CLI::Range(0, 4));
  ke->add_option("--dx", ka.dx, "Order of d/dx")->check(CLI::Range(0, 4));
  ke->add_option("--dy", ka.dy, "Order of d/dy")->check(CLI::Range(0, 4));

  auto* so = app.add_subcommand("solve", "Cauchy problem u_t = D u, u(0) = f");
  SolveArgs sa;
  so->add_option("--family", sa.family, "Named initial data: e (e^{-tau x^{alpha kappa}}) or exp (e^{-x^beta})");
  so->add_option("--input", sa.input, "Initial data CSV with columns x,value");
  so->add_option("--class", sa.cls, "Class of CSV initial data")->check(CLI::IsMember({"weighted", "l2"}));
  so->add_option("--kappa", sa.kappa, "kappa of the class");
  so->add_option("--tau", sa.tau, "tau of the e family");
  so->add_option("--eta", sa.eta, "eta of the weighted class");
  so->add_option("--beta", sa.beta, "beta of the exp family");
  so->add_option("--t", sa.t, "Times, increasing")->delimiter(',');
  so->add_option("--x", sa.x, "Output points; default: the grid")->delimiter(',');
  so->add_option("--route", sa.route, "Solver route")
      ->check(CLI::IsMember({"auto", "range_lambda", "e_class", "weighted", "dual"}));

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E_x0 f(X_t)");
  MCArgs ma;
  mc->add_option("--fn", ma.fn, "calJ (eigenfunction calJ(q x)) or e (e^{-tau x^alpha})")
      ->check(CLI::IsMember({"calJ", "e"}));
  mc->add_option("--x0", ma.x0, "Start point");
  mc->add_option("--t", ma.t, "Time");
  mc->add_option("--q", ma.q, "Spectral parameter for calJ");
  mc->add_option("--tau", ma.tau, "tau for e");
  ma.o_seed = mc->add_option("--seed", ma.seed, "Seed");
  ma.o_paths = mc->add_option("--n-paths", ma.n_paths, "Number of paths");
  ma.o_steps = mc->add_option("--n-steps", ma.n_steps, "Steps per path");

  auto* va = app.add_subcommand("validate", "Run the acceptance suite and print a pass/fail table");
  bool quick = false;
  va->add_flag("--quick", quick, "Fast invariant checks only");

  for (auto* sub : {sf, de, ke, so, mc, va}) add_common(*sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const std::string tol_key =
        ke->parsed() ? "kernel" : (so->parsed() ? "solve" : ((sf->parsed() || de->parsed()) ? "quad" : ""));
    const RunConfig cfg = resolve(*app.get_subcommands().front(), common, tol_key);
    if (common.dump_config) {
      nlohmann::json j = cfg;
      out << j.dump(2) << "\n";
      return kExitOk;
    }
    if (sf->parsed()) {
      emit(cfg, do_specfun(sfa, cfg), out);
    } else if (de->parsed()) {
      emit(cfg, do_density(dname, cfg, err), out);
    } else if (ke->parsed()) {
      emit(cfg, do_kernel(ka, cfg, err), out);
    } else if (so->parsed()) {
      emit(cfg, do_solve(sa, cfg, err), out);
    } else if (mc->parsed()) {
      stablemc::MCConfig m;
      m.params = AlphaParams(cfg.alpha);
      m.seed = ma.o_seed->count() ? ma.seed : cfg.mc.seed;
      m.n_paths = ma.o_paths->count() ? ma.n_paths : cfg.mc.n_paths;
      m.n_steps = ma.o_steps->count() ? ma.n_steps : cfg.mc.n_steps;
      const AlphaParams p = m.params;
      stablemc::Fn f;
      if (ma.fn == "calJ")
        f = [&](double x) { return specfun::calJ(ma.q * x, p); };
      else
        f = [&](double x) { return std::exp(-ma.tau * std::pow(x, p.alpha)); };
      const auto e = stablemc::estimate_Ptf(f, ma.x0, ma.t, m);
      write_mc(cfg, e, stablemc::config_hash(m), out);
    } else {
      return do_validate(quick, cfg, out);
    }
    return kExitOk;
  } catch (const Error& e) {
    std::ostringstream ctx;
    ctx << " [" << app.get_subcommands().front()->get_name();
    for (int i = 2; i < argc; ++i) ctx << " " << argv[i];
    ctx << "]";
    err << e.what() << ctx.str() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "cli: InvalidArgument: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace stablespec::tools
