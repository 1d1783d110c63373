// Command-line front end: validates a run configuration, executes one
// pipeline, writes <command>.json / <command>.csv artifacts, and prints a
// one-page summary.  Exit codes: 0 success, 2 tolerance failure, 1 usage or
// I/O error.  Identical configurations produce byte-identical artifacts
// (timings are reported on stdout only, never serialized).
#include <CLI11.hpp>

#ifdef ZETA4_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#endif

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zeta4/analytic.hh"
#include "zeta4/divisor.hh"
#include "zeta4/empirical.hh"
#include "zeta4/momofmom.hh"
#include "zeta4/quadrature.hh"
#include "zeta4/report.hh"
#include "zeta4/shift.hh"
#include "zeta4/smoothing.hh"
#include "zeta4/special.hh"
#include "zeta4/spectral.hh"

namespace fs = std::filesystem;
using zeta4::ShiftConfig;
using zeta4::report::format_double;
using cplx = std::complex<double>;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat bag of every recognized parameter; each subcommand binds the subset
// it accepts, so unknown keys are rejected at parse time.
struct RunConfig {
  std::string config;
  int workers = 1;
  std::string out = ".";

  double t = 0.0, sigma = 0.5;
  double delta = 0.0, Q = 25.0, cutoff_sigma = 12.0;
  double T1 = 0.0, T2 = 0.0, alpha = 0.0, beta = 0.0, Delta = 0.0;
  std::string window = "sharp";
  long long X = 0;
  std::string r_csv;
  double T = 0.0, c = std::numbers::pi, A = 2.0;
  std::string kernel = "indicator";
  bool empirical = false;
  std::string dataset, fetch_url;
};

CLI::Option* last(CLI::Option* o) {
  return o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  last(sub->add_option("--workers", cfg.workers,
                       "worker threads for parallel sections (default 1)"));
  last(sub->add_option("--out", cfg.out,
                       "output directory for artifacts (default .)"));
  last(sub->add_option("--config", cfg.config,
                       "flat key=value file, overridden by flags"));
}

void build_app(CLI::App& app, RunConfig& cfg) {
  app.description(
      "Shifted fourth-moment toolkit: critical-line zeta evaluation, moment "
      "quadrature vs closed-form main terms, divisor correlations, moments "
      "of moments, and the spectral error-term functionals.");
  app.require_subcommand(1);

  auto* z = app.add_subcommand("zeta", "evaluate zeta(sigma + i t)");
  last(z->add_option("--t", cfg.t, "imaginary part"))->required();
  last(z->add_option("--sigma", cfg.sigma, "real part (default 1/2)"));
  add_common(z, cfg);

  auto* a = app.add_subcommand(
      "afe", "check the exact weighted divisor-series identity for "
             "|zeta(1/2+it) zeta(1/2-it-i delta)|^2");
  last(a->add_option("--t", cfg.t, "ordinate, in [50, 2000]"))->required();
  last(a->add_option("--delta", cfg.delta, "shift delta >= 0"))->required();
  last(a->add_option("--Q", cfg.Q, "smoothing parameter, in [9, 100]"))
      ->required();
  last(a->add_option("--cutoff-sigma", cfg.cutoff_sigma,
                     "truncation exponent (default 12)"));
  add_common(a, cfg);

  auto* m = app.add_subcommand(
      "moment", "integrate |zeta(1/2+i(t+alpha))|^2 |zeta(1/2+i(t+beta))|^2 "
                "over [T1, T2], optionally windowed");
  last(m->add_option("--T1", cfg.T1, "lower endpoint, >= 10"))->required();
  last(m->add_option("--T2", cfg.T2, "upper endpoint, <= 1e6"))->required();
  last(m->add_option("--alpha", cfg.alpha, "first shift"))->required();
  last(m->add_option("--beta", cfg.beta, "second shift"))->required();
  last(m->add_option("--window", cfg.window,
                     "window shape (default sharp)"))
      ->check(CLI::IsMember({"gaussian", "bump", "sharp"}));
  last(m->add_option("--Delta", cfg.Delta,
                     "window edge width (required for gaussian/bump)"));
  add_common(m, cfg);

  auto* mt = app.add_subcommand(
      "main-term", "closed-form moment density at t (quartic polynomial in "
                   "log(t/2pi) with shift corrections)");
  last(mt->add_option("--t", cfg.t, "ordinate, >= 10"))->required();
  last(mt->add_option("--alpha", cfg.alpha, "first shift"))->required();
  last(mt->add_option("--beta", cfg.beta, "second shift"))->required();
  add_common(mt, cfg);

  auto* cp = app.add_subcommand(
      "compare", "empirical moment vs main-term integral over [T1, T2], "
                 "with absolute and relative differences");
  last(cp->add_option("--T1", cfg.T1, "lower endpoint, >= 10"))->required();
  last(cp->add_option("--T2", cfg.T2, "upper endpoint, <= 1e6"))->required();
  last(cp->add_option("--alpha", cfg.alpha, "first shift"))->required();
  last(cp->add_option("--beta", cfg.beta, "second shift"))->required();
  add_common(cp, cfg);

  auto* d = app.add_subcommand(
      "divisor", "exact correlation sums sum_{n<=X} d(n)d(n+r) against the "
                 "integrated main-term density");
  last(d->add_option("--X", cfg.X, "summation limit"))->required();
  last(d->add_option("--r", cfg.r_csv, "comma-separated shifts, e.g. 1,5,42"))
      ->required();
  add_common(d, cfg);

  auto* mm = app.add_subcommand(
      "mom22", "second moment of the locally averaged |zeta|^2: closed-form "
               "diagonal + off-diagonal means, optional empirical check");
  last(mm->add_option("--T", cfg.T, "outer range, >= 100"))->required();
  last(mm->add_option("--c", cfg.c, "averaging half-width"))->required();
  last(mm->add_option("--kernel", cfg.kernel, "kernel shape (default indicator)"))
      ->check(CLI::IsMember({"indicator", "smooth"}));
  last(mm->add_option("--A", cfg.A, "smooth-kernel decay rate (default 2)"));
  mm->add_flag("--empirical", cfg.empirical,
               "also sample the empirical moment (T <= 1e4)");
  add_common(mm, cfg);

  auto* sp = app.add_subcommand(
      "spectral", "continuous-spectrum integral and discrete Maass-spectrum "
                  "sum for the shifted-moment error term on a gaussian "
                  "window [T1, T2]");
  last(sp->add_option("--dataset", cfg.dataset,
                      "eigenvalue dataset (.json or .csv); relative paths "
                      "also resolve under $ZETA4_DATA_DIR"))
      ->required();
  last(sp->add_option("--delta", cfg.delta, "shift delta"))->required();
  last(sp->add_option("--T1", cfg.T1, "window left edge"))->required();
  last(sp->add_option("--T2", cfg.T2, "window right edge"))->required();
  last(sp->add_option("--Delta", cfg.Delta, "window edge width"))->required();
  last(sp->add_option("--fetch-url", cfg.fetch_url,
                      "optional https:// URL to download the dataset JSON "
                      "to --dataset before the run"));
  add_common(sp, cfg);
}

// ---------------------------------------------------------------- config --

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> config_tokens(const std::string& path,
                                       CLI::App* sub) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file " + path);
  std::vector<std::string> toks;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw UsageError("config " + path + ":" + std::to_string(lineno) +
                       ": expected key=value, got '" + s + "'");
    auto key = trim(s.substr(0, eq));
    auto val = trim(s.substr(eq + 1));
    if (key == "config")
      throw UsageError("config files cannot nest ('config=' key)");
    auto* opt = sub->get_option_no_throw("--" + key);
    if (!opt)
      throw UsageError("config " + path + ":" + std::to_string(lineno) +
                       ": unknown key '" + key + "' for subcommand '" +
                       sub->get_name() + "'");
    if (key == "empirical") {  // the only flag-valued option
      if (val == "1" || val == "true" || val == "yes" || val == "on")
        toks.push_back("--empirical");
      else if (!(val == "0" || val == "false" || val == "no" || val == "off"))
        throw UsageError("config " + path + ": 'empirical' must be boolean");
      continue;
    }
    if (val.empty())
      throw UsageError("config " + path + ":" + std::to_string(lineno) +
                       ": empty value for '" + key + "'");
    toks.push_back("--" + key);
    toks.push_back(val);
  }
  return toks;
}

// -------------------------------------------------------------- plumbing --

struct Artifacts {
  fs::path json_path, csv_path;
};

Artifacts artifact_paths(const RunConfig& cfg, const std::string& command) {
  fs::path dir(cfg.out);
  return {dir / (command + ".json"), dir / (command + ".csv")};
}

void emit(const Artifacts& p, const std::string& json_text,
          const std::string& csv_text) {
  zeta4::report::write_file(p.json_path.string(), json_text);
  zeta4::report::write_file(p.csv_path.string(), csv_text);
}

// Tiny local JSON builder for the commands whose artifacts are not one of
// the typed reports (key order = call order).
struct JsonObj {
  std::string body;
  bool first = true;
  JsonObj& raw(const std::string& k, const std::string& v) {
    body += (first ? "" : ",");
    body += "\"" + k + "\":" + v;
    first = false;
    return *this;
  }
  JsonObj& num(const std::string& k, double v) { return raw(k, format_double(v)); }
  JsonObj& integer(const std::string& k, long long v) {
    return raw(k, std::to_string(v));
  }
  JsonObj& str(const std::string& k, const std::string& v) {
    return raw(k, "\"" + v + "\"");
  }
  JsonObj& boolean(const std::string& k, bool v) {
    return raw(k, v ? "true" : "false");
  }
  // No trailing newline: nestable via raw(); write_file adds the final one.
  std::string done() const { return "{" + body + "}"; }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void footer(const Artifacts& p, const Timer& timer) {
  std::cout << "artifacts: " << p.json_path.string() << ", "
            << p.csv_path.string() << "\n"
            << "wall     : " << format_double(timer.seconds()) << " s\n";
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

std::vector<std::int64_t> parse_r_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    require(!item.empty(), "--r: empty entry in list");
    require(item.find_first_not_of("0123456789") == std::string::npos,
            "--r: '" + item + "' is not a positive integer");
    out.push_back(std::stoll(item));
    require(out.back() >= 1, "--r: shifts must be >= 1");
  }
  require(!out.empty(), "--r: list is empty");
  return out;
}

// ------------------------------------------------------------- commands --

int cmd_zeta(const RunConfig& cfg) {
  cplx s(cfg.sigma, cfg.t);
  require(zeta4::special::zeta_validated(s),
          "zeta: (sigma, t) outside the validated domain "
          "(|t| <= 1e7 on sigma = 1/2, |t| <= 1e4 elsewhere, s != 1)");
  Timer timer;
  cplx v = zeta4::special::zeta(s);
  auto p = artifact_paths(cfg, "zeta");
  emit(p,
       JsonObj{}
           .str("command", "zeta")
           .num("t", cfg.t)
           .num("sigma", cfg.sigma)
           .num("re", v.real())
           .num("im", v.imag())
           .num("abs", std::abs(v))
           .done(),
       "t,sigma,re,im,abs\n" + format_double(cfg.t) + "," +
           format_double(cfg.sigma) + "," + format_double(v.real()) + "," +
           format_double(v.imag()) + "," + format_double(std::abs(v)) + "\n");
  std::cout << "== zeta ==\n"
            << "s        : " << format_double(cfg.sigma) << " + i*"
            << format_double(cfg.t) << "\n"
            << "zeta(s)  : " << format_double(v.real()) << " + i*"
            << format_double(v.imag()) << "\n"
            << "|zeta(s)|: " << format_double(std::abs(v)) << "\n";
  footer(p, timer);
  return 0;
}

int cmd_afe(const RunConfig& cfg) {
  require(cfg.t >= 50.0 && cfg.t <= 2000.0, "afe: --t must lie in [50, 2000]");
  require(cfg.Q >= 9.0 && cfg.Q <= 100.0, "afe: --Q must lie in [9, 100]");
  require(cfg.delta >= 0.0 && cfg.delta <= 50.0,
          "afe: --delta must lie in [0, 50]");
  require(cfg.cutoff_sigma > 0.0 && cfg.cutoff_sigma <= 60.0,
          "afe: --cutoff-sigma must lie in (0, 60]");
  Timer timer;
  auto res = zeta4::empirical::afe_check(cfg.t, ShiftConfig{0.0, cfg.delta},
                                         cfg.Q, cfg.cutoff_sigma);
  auto p = artifact_paths(cfg, "afe");
  emit(p,
       JsonObj{}
           .str("command", "afe")
           .num("t", cfg.t)
           .num("delta", cfg.delta)
           .num("Q", cfg.Q)
           .num("cutoff_sigma", cfg.cutoff_sigma)
           .num("lhs", res.lhs)
           .num("rhs", res.rhs)
           .num("rel_err", res.rel_err)
           .done(),
       "t,delta,Q,cutoff_sigma,lhs,rhs,rel_err\n" + format_double(cfg.t) +
           "," + format_double(cfg.delta) + "," + format_double(cfg.Q) + "," +
           format_double(cfg.cutoff_sigma) + "," + format_double(res.lhs) +
           "," + format_double(res.rhs) + "," + format_double(res.rel_err) +
           "\n");
  std::cout << "== afe ==\n"
            << "t, delta, Q : " << format_double(cfg.t) << ", "
            << format_double(cfg.delta) << ", " << format_double(cfg.Q) << "\n"
            << "direct product |zeta zeta|^2 : " << format_double(res.lhs)
            << "\n"
            << "weighted divisor series      : " << format_double(res.rhs)
            << "\n"
            << "relative error               : " << format_double(res.rel_err)
            << "\n";
  footer(p, timer);
  return 0;
}

std::optional<zeta4::smoothing::Window> window_from(const RunConfig& cfg) {
  using zeta4::smoothing::Window;
  using zeta4::smoothing::WindowKind;
  if (cfg.window == "sharp") {
    require(cfg.Delta == 0.0, "--Delta only applies to gaussian/bump windows");
    return Window{WindowKind::indicator, cfg.T1, cfg.T2, 0.0};
  }
  require(cfg.Delta > 0.0,
          "--Delta (edge width > 0) is required for gaussian/bump windows");
  if (cfg.window == "gaussian")
    return Window{WindowKind::gaussian_conv, cfg.T1, cfg.T2, cfg.Delta};
  require(cfg.T2 - cfg.T1 >= 2.0 * cfg.Delta,
          "bump window needs T2 - T1 >= 2*Delta");
  return Window{WindowKind::bump, cfg.T1, cfg.T2, cfg.Delta};
}

void require_range(const RunConfig& cfg) {
  require(cfg.T1 >= 10.0 && cfg.T1 < cfg.T2 && cfg.T2 <= 1e6,
          "range must satisfy 10 <= T1 < T2 <= 1e6");
}

int cmd_moment(const RunConfig& cfg) {
  require_range(cfg);
  auto win = window_from(cfg);
  Timer timer;
  zeta4::empirical::QuadratureSpec spec;
  long n_evals = 0;
  double v = zeta4::empirical::moment_quadrature(
      cfg.T1, cfg.T2, ShiftConfig{cfg.alpha, cfg.beta}, win, spec, cfg.workers,
      &n_evals);
  auto p = artifact_paths(cfg, "moment");
  emit(p,
       JsonObj{}
           .str("command", "moment")
           .num("T1", cfg.T1)
           .num("T2", cfg.T2)
           .num("alpha", cfg.alpha)
           .num("beta", cfg.beta)
           .str("window", cfg.window)
           .num("Delta", cfg.Delta)
           .num("value", v)
           .integer("n_evals", n_evals)
           .done(),
       "T1,T2,alpha,beta,window,Delta,value,n_evals\n" +
           format_double(cfg.T1) + "," + format_double(cfg.T2) + "," +
           format_double(cfg.alpha) + "," + format_double(cfg.beta) + "," +
           cfg.window + "," + format_double(cfg.Delta) + "," +
           format_double(v) + "," + std::to_string(n_evals) + "\n");
  std::cout << "== moment ==\n"
            << "range [T1, T2]   : [" << format_double(cfg.T1) << ", "
            << format_double(cfg.T2) << "]  shifts (" << format_double(cfg.alpha)
            << ", " << format_double(cfg.beta) << ")  window " << cfg.window
            << "\n"
            << "windowed integral of |zeta|^2 |zeta_shift|^2 : "
            << format_double(v) << "\n"
            << "integrand evaluations                        : " << n_evals
            << "\n";
  footer(p, timer);
  return 0;
}

int cmd_main_term(const RunConfig& cfg) {
  require(cfg.t >= 10.0 && cfg.t <= 1e6, "main-term: --t must lie in [10, 1e6]");
  Timer timer;
  double v = zeta4::analytic::q2_eval(cfg.t, ShiftConfig{cfg.alpha, cfg.beta});
  auto p = artifact_paths(cfg, "main-term");
  emit(p,
       JsonObj{}
           .str("command", "main-term")
           .num("t", cfg.t)
           .num("alpha", cfg.alpha)
           .num("beta", cfg.beta)
           .num("value", v)
           .done(),
       "t,alpha,beta,value\n" + format_double(cfg.t) + "," +
           format_double(cfg.alpha) + "," + format_double(cfg.beta) + "," +
           format_double(v) + "\n");
  std::cout << "== main-term ==\n"
            << "t, shifts     : " << format_double(cfg.t) << ", ("
            << format_double(cfg.alpha) << ", " << format_double(cfg.beta)
            << ")\n"
            << "moment density: " << format_double(v) << "\n";
  footer(p, timer);
  return 0;
}

int cmd_compare(const RunConfig& cfg) {
  require_range(cfg);
  Timer timer;
  zeta4::smoothing::Window win{zeta4::smoothing::WindowKind::indicator, cfg.T1,
                               cfg.T2, 0.0};
  zeta4::empirical::QuadratureSpec spec;
  auto rep = zeta4::empirical::make_moment_report(
      ShiftConfig{cfg.alpha, cfg.beta}, win, spec, cfg.workers);
  double wall = rep.wall_seconds;
  rep.wall_seconds = 0.0;  // timings stay off disk: artifacts must be
                           // byte-identical across reruns
  auto p = artifact_paths(cfg, "compare");
  zeta4::report::write_report(rep, p.json_path.string());
  zeta4::report::write_report(rep, p.csv_path.string());
  std::cout << "== compare ==\n"
            << "range [T1, T2]  : [" << format_double(cfg.T1) << ", "
            << format_double(cfg.T2) << "]  shifts ("
            << format_double(cfg.alpha) << ", " << format_double(cfg.beta)
            << ")\n"
            << "empirical moment   : " << format_double(rep.empirical) << "\n"
            << "main-term integral : " << format_double(rep.main_term) << "\n"
            << "abs diff           : " << format_double(rep.abs_diff) << "\n"
            << "rel diff           : " << format_double(rep.rel_diff) << "\n"
            << "integrand evals    : " << rep.n_evals << "\n"
            << "quadrature wall    : " << format_double(wall) << " s\n";
  footer(p, timer);
  return 0;
}

int cmd_divisor(const RunConfig& cfg) {
  auto rs = parse_r_list(cfg.r_csv);
  require(cfg.X >= 100 && cfg.X <= 100000000,
          "divisor: --X must lie in [100, 1e8]");
  std::int64_t rmax = *std::max_element(rs.begin(), rs.end());
  require(rmax <= 1000000, "divisor: shifts must be <= 1e6");
  Timer timer;
  auto table = zeta4::divisor::sieve_divisors(cfg.X + rmax + 1);
  auto recs = zeta4::divisor::correlation_report(cfg.X, rs, table);
  auto p = artifact_paths(cfg, "divisor");
  zeta4::report::write_report(recs, p.json_path.string());
  zeta4::report::write_report(recs, p.csv_path.string());
  std::cout << "== divisor ==\n"
            << "X = " << cfg.X << ", shifts r = " << cfg.r_csv << "\n";
  for (const auto& c : recs)
    std::cout << "r = " << c.r << ": sum = " << c.sum
              << ", main = " << format_double(c.main)
              << ", error = " << format_double(c.error)
              << ", error/X^(2/3) = " << format_double(c.normalized_error)
              << "\n";
  footer(p, timer);
  return 0;
}

int cmd_mom22(const RunConfig& cfg) {
  require(cfg.T >= 100.0 && cfg.T <= 1e12, "mom22: --T must lie in [100, 1e12]");
  require(cfg.c > 0.0 && cfg.c <= 1e3, "mom22: --c must lie in (0, 1e3]");
  require(cfg.A > 0.0 && cfg.A <= 50.0, "mom22: --A must lie in (0, 50]");
  require(!cfg.empirical || cfg.T <= 1e4,
          "mom22: --empirical requires T <= 1e4");
  require(!cfg.empirical || cfg.kernel == "indicator",
          "mom22: --empirical supports indicator kernels only");
  zeta4::momofmom::AveragingKernel kern{
      cfg.kernel == "indicator" ? zeta4::momofmom::KernelShape::indicator
                                : zeta4::momofmom::KernelShape::smooth_exp,
      cfg.c, cfg.A};
  Timer timer;
  auto rep = zeta4::momofmom::m22_formula(cfg.T, kern);
  if (cfg.empirical)
    rep.empirical = zeta4::momofmom::m22_empirical(cfg.T, kern, 0.04);
  auto p = artifact_paths(cfg, "mom22");
  zeta4::report::write_report(rep, p.json_path.string());
  zeta4::report::write_report(rep, p.csv_path.string());
  std::cout << "== mom22 ==\n"
            << "T = " << format_double(cfg.T) << ", kernel " << cfg.kernel
            << ", c = " << format_double(cfg.c) << "\n"
            << "diagonal mean (dbar)      : " << format_double(rep.dbar)
            << "\n"
            << "off-diagonal mean (odbar) : " << format_double(rep.odbar)
            << "\n"
            << "formula total T*(d+od)    : "
            << format_double(rep.formula_total) << "\n";
  if (rep.a_constant)
    std::cout << "1/N-term constant         : "
              << format_double(*rep.a_constant) << "\n";
  if (rep.empirical) {
    std::cout << "empirical total           : " << format_double(*rep.empirical)
              << "\n"
              << "empirical/formula         : "
              << format_double(*rep.empirical / rep.formula_total) << "\n";
  }
  footer(p, timer);
  return 0;
}

fs::path resolve_dataset(const std::string& given) {
  fs::path p(given);
  if (fs::exists(p)) return p;
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ZETA4_DATA_DIR")) {
      fs::path q = fs::path(dir) / p;
      if (fs::exists(q)) return q;
    }
  }
  throw UsageError("spectral: dataset not found: " + given +
                   " (also looked under $ZETA4_DATA_DIR)");
}

zeta4::spectral::SpectralDataset fetch_dataset(const RunConfig& cfg) {
#ifdef ZETA4_HAVE_OPENSSL
  const std::string& url = cfg.fetch_url;
  require(url.rfind("https://", 0) == 0,
          "spectral: --fetch-url must be an https:// URL");
  require(fs::path(cfg.dataset).extension() == ".json",
          "spectral: --fetch-url downloads JSON; --dataset must end in .json");
  auto slash = url.find('/', 8);
  std::string host = url.substr(0, slash == std::string::npos ? url.size()
                                                              : slash);
  std::string path = slash == std::string::npos ? "/" : url.substr(slash);
  httplib::Client client(host);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto res = client.Get(path);
  if (!res)
    throw UsageError("spectral: fetch failed: " +
                     httplib::to_string(res.error()));
  if (res->status != 200)
    throw UsageError("spectral: fetch returned HTTP " +
                     std::to_string(res->status));
  auto ds = zeta4::spectral::parse_dataset_json(res->body, url);
  zeta4::report::write_file(cfg.dataset, res->body);
  return ds;
#else
  (void)cfg;
  throw UsageError(
      "spectral: this build has no TLS support; --fetch-url is unavailable");
#endif
}

int cmd_spectral(const RunConfig& cfg) {
  require(cfg.T1 >= 1.0 && cfg.T1 < cfg.T2 && cfg.T2 <= 1e6,
          "spectral: need 1 <= T1 < T2 <= 1e6");
  require(cfg.Delta > 0.0 && cfg.Delta <= cfg.T2 - cfg.T1,
          "spectral: --Delta must lie in (0, T2 - T1]");
  require(std::abs(cfg.delta) <= 100.0, "spectral: |delta| must be <= 100");

  zeta4::spectral::SpectralDataset ds;
  if (!cfg.fetch_url.empty()) {
    ds = fetch_dataset(cfg);
  } else {
    auto path = resolve_dataset(cfg.dataset);
    try {
      ds = path.extension() == ".csv"
               ? zeta4::spectral::load_dataset_csv(path.string())
               : zeta4::spectral::load_dataset_json(path.string());
    } catch (const std::exception& e) {
      throw UsageError(std::string("spectral: ") + e.what());
    }
  }

  zeta4::smoothing::Window win{zeta4::smoothing::WindowKind::gaussian_conv,
                               cfg.T1, cfg.T2, cfg.Delta};
  Timer timer;
  // Tail budget: |integrand| decays like e^{-pi y} past the window scale;
  // y_max = 200 leaves ~1e-6 absolute on desk-scale windows.
  constexpr double kYmax = 200.0;
  auto ec = zeta4::spectral::ec_integral(cfg.delta, win, kYmax, cfg.workers);
  auto ed = zeta4::spectral::ed_sum(ds, cfg.delta, win);

  auto p = artifact_paths(cfg, "spectral");
  emit(p,
       JsonObj{}
           .str("command", "spectral")
           .num("delta", cfg.delta)
           .num("T1", cfg.T1)
           .num("T2", cfg.T2)
           .num("Delta", cfg.Delta)
           .raw("dataset",
                JsonObj{}
                    .str("source", ds.source)
                    .integer("n_entries", (long long)ds.entries.size())
                    .integer("n_coef", ds.n_coef)
                    .done())
           .raw("ec",
                JsonObj{}
                    .num("value", ec.value)
                    .num("imag_accumulator", ec.imag_accumulator)
                    .num("truncation_estimate", ec.truncation_estimate)
                    .integer("n_zeta_evals", ec.n_zeta_evals)
                    .done())
           .raw("ed",
                JsonObj{}
                    .num("value", ed.value)
                    .boolean("coverage_warning", ed.coverage_warning)
                    .num("nu_last_over_peak", ed.nu_last_over_peak)
                    .done())
           .done(),
       "delta,T1,T2,Delta,ec_value,ec_truncation_estimate,ed_value,"
       "coverage_warning,nu_last_over_peak\n" +
           format_double(cfg.delta) + "," + format_double(cfg.T1) + "," +
           format_double(cfg.T2) + "," + format_double(cfg.Delta) + "," +
           format_double(ec.value) + "," +
           format_double(ec.truncation_estimate) + "," +
           format_double(ed.value) + "," +
           (ed.coverage_warning ? "true" : "false") + "," +
           format_double(ed.nu_last_over_peak) + "\n");

  std::cout << "== spectral ==\n"
            << "window [T1, T2], Delta : [" << format_double(cfg.T1) << ", "
            << format_double(cfg.T2) << "], " << format_double(cfg.Delta)
            << "  shift delta = " << format_double(cfg.delta) << "\n"
            << "dataset                : " << ds.entries.size()
            << " eigenvalues, " << ds.n_coef << " coefficients each ("
            << ds.source << ")\n"
            << "continuous-spectrum integral : " << format_double(ec.value)
            << "\n"
            << "  truncation estimate        : "
            << format_double(ec.truncation_estimate) << "\n"
            << "  imaginary-part residue     : "
            << format_double(ec.imag_accumulator) << "\n"
            << "discrete Maass-spectrum sum  : " << format_double(ed.value)
            << "\n";
  if (ed.coverage_warning)
    std::cout << "  warning: eigenvalue list ends while its weight is still "
              << format_double(ed.nu_last_over_peak)
              << " of peak; the sum is a partial lower segment\n";

  // Reality check: the folded integrand is a real part by construction, so
  // a large imaginary residue means the quadrature went wrong.
  double tol = 1e-8 * std::max(1.0, std::abs(ec.value));
  if (std::abs(ec.imag_accumulator) > tol) {
    std::cerr << "tolerance failure: imaginary residue "
              << format_double(std::abs(ec.imag_accumulator)) << " exceeds "
              << format_double(tol) << "\n";
    return 2;
  }
  footer(p, timer);
  return 0;
}

int dispatch(const std::string& sub, const RunConfig& cfg) {
  require(cfg.workers >= 1 && cfg.workers <= 64,
          "--workers must lie in [1, 64]");
  if (sub == "zeta") return cmd_zeta(cfg);
  if (sub == "afe") return cmd_afe(cfg);
  if (sub == "moment") return cmd_moment(cfg);
  if (sub == "main-term") return cmd_main_term(cfg);
  if (sub == "compare") return cmd_compare(cfg);
  if (sub == "divisor") return cmd_divisor(cfg);
  if (sub == "mom22") return cmd_mom22(cfg);
  if (sub == "spectral") return cmd_spectral(cfg);
  throw std::logic_error("unreachable subcommand " + sub);
}

int parse_args(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.push_back("zeta4");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> ptrs;
  ptrs.reserve(full.size());
  for (const auto& s : full) ptrs.push_back(s.c_str());
  app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    RunConfig cfg;
    CLI::App app{"zeta4"};
    build_app(app, cfg);
    try {
      parse_args(app, args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 1;
    }
    std::string sub = app.get_subcommands().front()->get_name();

    if (!cfg.config.empty()) {
      auto toks = config_tokens(cfg.config, app.get_subcommand(sub));
      // config values sit between the subcommand and the explicit flags, so
      // TakeLast lets the command line override the file
      std::vector<std::string> merged;
      merged.push_back(sub);
      merged.insert(merged.end(), toks.begin(), toks.end());
      merged.insert(merged.end(), args.begin() + 1, args.end());
      RunConfig cfg2;
      CLI::App app2{"zeta4"};
      build_app(app2, cfg2);
      try {
        parse_args(app2, merged);
      } catch (const CLI::ParseError& e) {
        app2.exit(e);
        return 1;
      }
      return dispatch(sub, cfg2);
    }
    return dispatch(sub, cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const zeta4::empirical::ToleranceError& e) {
    std::cerr << "tolerance failure: " << e.what()
              << " (achieved " << format_double(e.achieved) << ")\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return 2;
  }
}
