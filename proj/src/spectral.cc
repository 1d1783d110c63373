// Spectral-side machinery: profile transforms built on the Gauss
// hypergeometric kernel, the oscillatory weight on the discrete spectrum,
// the folded continuous-spectrum integral, and validated ingestion of Maass
// cusp-form data with its truncated Hecke series.
#include "zeta4/spectral.hh"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "zeta4/divisor.hh"
#include "zeta4/quadrature.hh"
#include "zeta4/special.hh"

namespace zeta4::spectral {
namespace {

constexpr double kPi = std::numbers::pi;

// zeta backend with Im s >= 0; negative heights go through conjugation.
cplx zeta_any(cplx s) {
  if (s.imag() < 0.0) return std::conj(special::zeta(std::conj(s)));
  return special::zeta(s);
}

// 2F1(k, k; 2k; u) for 0 < u < 1 by the plain Gauss series; every term is
// positive, the term ratio tends to u, so the loss-free stopping rule is the
// relative size of the last term.
double gauss_series(int k, double u) {
  double term = 1.0, sum = 1.0;
  for (int m = 0; m < 20000; ++m) {
    double km = static_cast<double>(k) + m;
    term *= km * km / ((2.0 * k + m) * (m + 1.0)) * u;
    sum += term;
    if (term <= 1e-17 * sum) return sum;
  }
  throw std::runtime_error("xi transform: hypergeometric series stalled");
}

int half_integer_order(cplx z) {
  // k >= 1 with z = k - 1/2 exactly (up to 1e-12), else 0.
  if (z.imag() != 0.0) return 0;
  double kr = z.real() + 0.5;
  long long k = std::llround(kr);
  if (k >= 1 && k <= 1000 && std::abs(kr - static_cast<double>(k)) < 1e-12)
    return static_cast<int>(k);
  return 0;
}

quad::AdaptiveResult integrate_profile_c(const std::function<cplx(double)>& f,
                                         double lo, double hi) {
  std::vector<double> seed;
  const std::vector<double>* seed_ptr = nullptr;
  if (lo > 0.0 && hi / lo > 32.0) {
    seed = quad::geometric_breakpoints(lo, hi, 2.0);
    seed_ptr = &seed;
  }
  return quad::integrate_adaptive_c(f, lo, hi, 1e-11, 1e-15, 16, 8192,
                                    seed_ptr);
}

std::string entry_label(const SpectralDataset& ds, std::size_t j) {
  std::ostringstream os;
  os << ds.source << " entry " << j;
  return os.str();
}

double parse_real(const std::string& token, const std::string& where) {
  try {
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": cannot parse number from '" + token +
                             "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Test-function profiles.

double TestFunction::value(double x) const {
  if (kind == ProfileKind::window_profile) return window->value(x);
  if (grid.empty() || x <= grid.front().first || x >= grid.back().first) {
    if (!grid.empty() && (x == grid.front().first || x == grid.back().first))
      return 0.0;  // endpoint samples are below 1e-12 anyway
    return 0.0;
  }
  auto it = std::upper_bound(
      grid.begin(), grid.end(), x,
      [](double v, const std::pair<double, double>& p) { return v < p.first; });
  auto lo = std::prev(it);
  double t = (x - lo->first) / (it->first - lo->first);
  return lo->second + t * (it->second - lo->second);
}

double TestFunction::support_lo() const {
  if (kind == ProfileKind::window_profile) return window->support_lo();
  return grid.front().first;
}

double TestFunction::support_hi() const {
  if (kind == ProfileKind::window_profile) return window->support_hi();
  return grid.back().first;
}

void check_test_function(const TestFunction& u) {
  if (u.kind == ProfileKind::window_profile) {
    if (!u.window) throw std::invalid_argument("profile: window missing");
    if (u.window->kind == smoothing::WindowKind::indicator)
      throw std::invalid_argument(
          "profile: indicator window has no endpoint decay");
    if (!(u.window->support_lo() > 0.0))
      throw std::invalid_argument("profile: support must stay in x > 0");
    if (!(std::abs(u.window->value(u.window->support_lo())) < 1e-12 &&
          std::abs(u.window->value(u.window->support_hi())) < 1e-12))
      throw std::invalid_argument("profile: window does not decay at support");
    return;
  }
  if (u.grid.size() < 2)
    throw std::invalid_argument("profile: grid needs at least two samples");
  if (!(u.grid.front().first > 0.0))
    throw std::invalid_argument("profile: grid must stay in x > 0");
  for (std::size_t i = 1; i < u.grid.size(); ++i)
    if (!(u.grid[i].first > u.grid[i - 1].first))
      throw std::invalid_argument("profile: grid abscissae not increasing");
  if (!(std::abs(u.grid.front().second) < 1e-12 &&
        std::abs(u.grid.back().second) < 1e-12))
    throw std::invalid_argument("profile: grid does not decay at its ends");
}

TestFunction bump_profile(double t1, double t2, double delta_w) {
  TestFunction u;
  u.kind = ProfileKind::window_profile;
  u.window = smoothing::Window{smoothing::WindowKind::bump, t1, t2, delta_w};
  check_test_function(u);
  return u;
}

TestFunction grid_profile(std::vector<std::pair<double, double>> samples) {
  TestFunction u;
  u.kind = ProfileKind::explicit_grid;
  u.grid = std::move(samples);
  check_test_function(u);
  return u;
}

// ---------------------------------------------------------------------------
// Integral transforms.

cplx xi_transform(cplx z, const std::function<double(double)>& u, double lo,
                  double hi) {
  if (!(z.real() >= 0.0))
    throw std::invalid_argument("xi transform: Re z must be >= 0");
  if (!(hi > lo))
    throw std::invalid_argument("xi transform: empty profile support");
  lo = std::max(lo, 1e-8);

  if (int k = half_integer_order(z); k > 0) {
    // Half-integer fast path: with z = k - 1/2 the Pfaff transformation turns
    // the kernel into x^{-k} (x/(1+x))^k 2F1(k,k;2k;1/(1+x)) = (1+x)^{-k}
    // times a positive series, all in real arithmetic.
    double pref =
        std::exp(2.0 * std::lgamma(static_cast<double>(k)) - std::lgamma(2.0 * k));
    auto f = [&](double x) {
      double ux = u(x);
      if (ux == 0.0) return 0.0;
      return ux * std::pow(1.0 + x, -static_cast<double>(k)) *
             gauss_series(k, 1.0 / (1.0 + x));
    };
    auto r = quad::integrate_adaptive(f, lo, hi, 1e-11, 1e-16, 16, 8192);
    if (!r.converged)
      throw std::runtime_error("xi transform: quadrature failed to converge");
    return pref * r.value;
  }

  cplx a = 0.5 + z;
  cplx c = 1.0 + 2.0 * z;
  cplx pref = special::beta_fn(a, a);
  auto f = [&](double x) -> cplx {
    double ux = u(x);
    if (ux == 0.0) return cplx(0.0, 0.0);
    return ux * std::exp(-a * std::log(x)) * special::hyp2f1_neg(a, a, c, x);
  };
  auto r = integrate_profile_c(f, lo, hi);
  if (!r.converged)
    throw std::runtime_error("xi transform: quadrature failed to converge");
  return pref * r.value;
}

cplx xi_transform(cplx z, const TestFunction& u) {
  check_test_function(u);
  auto f = [&u](double x) { return u.value(x); };
  return xi_transform(z, f, u.support_lo(), u.support_hi());
}

double theta_transform(double y, const TestFunction& u) {
  if (y == 0.0)
    throw std::invalid_argument(
        "theta transform: y = 0 excluded, use theta_limit");
  double ay = std::abs(y);
  cplx xi = xi_transform(cplx(0.0, ay), u);
  return 0.5 * (xi.real() - xi.imag() / std::sinh(kPi * ay));
}

double theta_limit(const TestFunction& u) {
  // Xi(iy;U) = A(y) + iB(y) with A even and B odd, so
  // Theta(y) -> A(0)/2 - B'(0)/(2 pi); B'(0) by Richardson from B(e)/e.
  double xi0 = xi_transform(cplx(0.0, 0.0), u).real();
  auto slope = [&](double e) {
    return xi_transform(cplx(0.0, e), u).imag() / e;
  };
  double b1 = slope(1e-3), b2 = slope(5e-4);
  double bprime = (4.0 * b2 - b1) / 3.0;
  return 0.5 * xi0 - bprime / (2.0 * kPi);
}

// ---------------------------------------------------------------------------
// Oscillatory spectral weight.

cplx nu_delta(double y, double delta, const smoothing::Window& window) {
  if (y == 0.0) throw std::invalid_argument("nu weight: y = 0 excluded");
  cplx pre(1.0, 1.0 / std::sinh(kPi * y));
  cplx xfac = special::chi(cplx(0.5, delta - y));
  cplx bfac = special::beta_fn(cplx(0.5, y), cplx(0.5, y));
  cplx mfac = smoothing::window_mellin(cplx(0.5, -y), window, delta);
  return pre * xfac * bfac * mfac;
}

cplx NuWeight::eval(double y) const { return nu_delta(y, delta, window); }

cplx nu_delta_rescaled(double y, double delta,
                       const smoothing::Window& window) {
  if (y == 0.0) throw std::invalid_argument("nu weight: y = 0 excluded");
  if (!(delta > 0.0))
    throw std::invalid_argument("rescaled nu weight: delta must be positive");
  double amp = std::sqrt(2.0 * kPi * delta);
  auto u = [&](double x) { return amp * window.value(delta * x); };
  double lo = std::max(window.support_lo() / delta, 1e-8);
  double hi = window.support_hi() / delta;
  cplx pre(1.0, 1.0 / std::sinh(kPi * y));
  cplx xfac = special::chi(cplx(0.5, delta - y));
  return pre * xfac * xi_transform(cplx(0.0, y), u, lo, hi);
}

// ---------------------------------------------------------------------------
// Continuous-spectrum remainder.

namespace {

// Folded integrand Z(y) [conj nu(y) + conj nu(-y)]; Z is even in y, the
// Mellin and beta factors of nu(-y) are conjugates of those of nu(+y), so
// one Mellin evaluation serves both signs.
cplx ec_folded(double y, double delta, const smoothing::Window& window,
               long* zeta_evals) {
  cplx zc = zeta_any(cplx(0.5, y));
  double z4 = std::norm(zc) * std::norm(zc);
  double den = std::norm(zeta_any(cplx(1.0, 2.0 * y)));
  cplx zp = zeta_any(cplx(0.5, delta + y));
  cplx zm = zeta_any(cplx(0.5, delta - y));
  if (zeta_evals) *zeta_evals += 4;
  cplx big_z = z4 * zp * zm / den;

  double inv_sh = 1.0 / std::sinh(kPi * y);
  cplx bfac = special::beta_fn(cplx(0.5, y), cplx(0.5, y));
  cplx mfac = smoothing::window_mellin(cplx(0.5, -y), window, delta);
  cplx nu_pos = cplx(1.0, inv_sh) * special::chi(cplx(0.5, delta - y)) * bfac * mfac;
  cplx nu_neg = cplx(1.0, -inv_sh) * special::chi(cplx(0.5, delta + y)) *
                std::conj(bfac) * std::conj(mfac);
  return big_z * (std::conj(nu_pos) + std::conj(nu_neg));
}

}  // namespace

EcResult ec_integral(double delta, const smoothing::Window& window,
                     double y_max, int workers, double panel_width) {
  if (!(y_max > 0.0) || y_max > 1e4)
    throw std::invalid_argument(
        "ec integral: y_max must lie in (0, 1e4] (zeta backend range)");
  if (!(panel_width > 0.0))
    throw std::invalid_argument("ec integral: panel width must be positive");
  workers = std::clamp(workers, 1, 32);
  // The sign of delta is a labeling choice: conjugating the shifted fourth
  // moment maps delta to -delta, so the decomposition is stated for
  // delta >= 0 and extends evenly.  Evaluating at |delta| keeps that
  // symmetry exact; the literal formula at negative delta would instead move
  // the window shift W(u - delta/2) the other way and break it at O(delta/T).
  delta = std::abs(delta);

  const int npan = std::max(1, static_cast<int>(std::ceil(y_max / panel_width)));
  const double h = y_max / npan;
  const auto& xs = quad::gl_nodes(16);
  const auto& ws = quad::gl_weights(16);

  std::vector<cplx> panel(static_cast<std::size_t>(npan));
  std::vector<long> evals(static_cast<std::size_t>(npan), 0);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= npan) return;
      double a = i * h, mid = a + 0.5 * h, half = 0.5 * h;
      cplx acc(0.0, 0.0);
      long ze = 0;
      for (int j = 0; j < 16; ++j)
        acc += ws[static_cast<std::size_t>(j)] *
               ec_folded(mid + half * xs[static_cast<std::size_t>(j)], delta,
                         window, &ze);
      panel[static_cast<std::size_t>(i)] = half * acc;
      evals[static_cast<std::size_t>(i)] = ze;
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::future<void>> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
  }

  quad::Kahan re, im;
  long zeta_evals = 0;
  for (int i = 0; i < npan; ++i) {
    re.add(panel[static_cast<std::size_t>(i)].real());
    im.add(panel[static_cast<std::size_t>(i)].imag());
    zeta_evals += evals[static_cast<std::size_t>(i)];
  }

  EcResult out;
  out.value = re.sum() / kPi;
  out.imag_accumulator = im.sum();
  out.n_zeta_evals = zeta_evals;

  // Tail beyond y_max from the measured local decay rate of the folded
  // integrand; the smooth-window Mellin factor decays superexponentially, so
  // the estimate collapses once y_max clears the window's oscillation scale.
  double f2 = std::abs(ec_folded(y_max, delta, window, &out.n_zeta_evals));
  if (f2 > 0.0) {
    double f1 =
        std::abs(ec_folded(0.98 * y_max, delta, window, &out.n_zeta_evals));
    double lambda = std::log(std::max(f1, 1e-300) / f2) / (0.02 * y_max);
    out.truncation_estimate =
        (lambda > 1e-12) ? f2 / lambda / kPi : f2 * y_max / kPi;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dataset ingestion.

void check_dataset(const SpectralDataset& dataset) {
  if (dataset.n_coef < 1)
    throw std::runtime_error(dataset.source + ": n_coef must be >= 1");
  if (dataset.entries.empty())
    throw std::runtime_error(dataset.source + ": no entries");
  if (std::abs(dataset.entries.front().kappa - 9.5337) > 0.01)
    throw std::runtime_error(
        dataset.source +
        ": first eigenvalue must match the known lowest one (9.5337)");

  auto table = divisor::sieve_divisors(dataset.n_coef);
  const double exponent = 7.0 / 64.0 + 0.01;
  double prev = 0.0;
  for (std::size_t j = 0; j < dataset.entries.size(); ++j) {
    const auto& e = dataset.entries[j];
    const std::string label = entry_label(dataset, j);
    if (!(e.kappa > prev))
      throw std::runtime_error(label + ": kappa not strictly increasing");
    prev = e.kappa;
    if (!(e.alpha > 0.0))
      throw std::runtime_error(label + ": alpha must be positive");
    if (e.parity != 1 && e.parity != -1)
      throw std::runtime_error(label + ": parity must be +1 or -1");
    if (e.hecke.size() != static_cast<std::size_t>(dataset.n_coef))
      throw std::runtime_error(label + ": Hecke vector length != n_coef");
    if (std::abs(e.hecke[0] - 1.0) > 1e-9)
      throw std::runtime_error(label + ": t(1) must be 1");
    for (int n = 1; n <= dataset.n_coef; ++n) {
      double bound = table(n) * std::pow(static_cast<double>(n), exponent);
      if (!(std::abs(e.hecke[static_cast<std::size_t>(n - 1)]) <=
            bound + 1e-9))
        throw std::runtime_error(label + ": |t(" + std::to_string(n) +
                                 ")| breaks the Ramanujan-type bound");
    }
  }
}

SpectralDataset parse_dataset_json(const std::string& text,
                                   const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(origin + ": JSON parse failure: " + e.what());
  }
  SpectralDataset ds;
  try {
    ds.source = j.value("source", origin);
    ds.n_coef = j.at("n_coef").get<int>();
    for (const auto& je : j.at("entries")) {
      SpectralEntry e;
      e.kappa = je.at("kappa").get<double>();
      e.alpha = je.at("alpha").get<double>();
      e.parity = je.at("parity").get<int>();
      e.H_half = je.at("H_half").get<double>();
      e.hecke = je.at("hecke").get<std::vector<double>>();
      ds.entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(origin + ": malformed dataset: " + e.what());
  }
  check_dataset(ds);
  return ds;
}

SpectralDataset load_dataset_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open dataset");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset_json(buf.str(), path);
}

SpectralDataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open dataset");
  auto dir = std::filesystem::path(path).parent_path();

  SpectralDataset ds;
  ds.source = path;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.find_first_not_of("0123456789+-. \t,eE") != std::string::npos)
        continue;  // header row
    }
    std::istringstream row(line);
    std::string token;
    std::vector<double> fields;
    while (std::getline(row, token, ','))
      fields.push_back(parse_real(token, path));
    if (fields.size() != 4)
      throw std::runtime_error(path + ": expected 4 columns, got " +
                               std::to_string(fields.size()));
    SpectralEntry e;
    e.kappa = fields[0];
    e.alpha = fields[1];
    e.parity = static_cast<int>(fields[2]);
    e.H_half = fields[3];
    ds.entries.push_back(std::move(e));
  }

  for (std::size_t i = 0; i < ds.entries.size(); ++i) {
    auto side = dir / ("hecke_" + std::to_string(i) + ".csv");
    std::ifstream hin(side);
    if (!hin)
      throw std::runtime_error(side.string() + ": missing Hecke sidecar");
    std::vector<double> t;
    while (std::getline(hin, line)) {
      if (line.empty()) continue;
      t.push_back(parse_real(line, side.string()));
    }
    ds.entries[i].hecke = std::move(t);
    if (i == 0) ds.n_coef = static_cast<int>(ds.entries[0].hecke.size());
  }
  check_dataset(ds);
  return ds;
}

// ---------------------------------------------------------------------------
// Truncated Hecke series and the discrete remainder.

cplx truncated_l_series(const SpectralEntry& entry, cplx s, double t_trunc,
                        double q) {
  if (!(t_trunc > 0.0))
    throw std::invalid_argument("l series: t_trunc must be positive");
  if (!(q > 0.0)) throw std::invalid_argument("l series: Q must be positive");
  double needed = t_trunc / (2.0 * kPi) * std::exp(6.0 / std::sqrt(q));
  if (static_cast<double>(entry.hecke.size()) < needed) {
    std::ostringstream os;
    os << "l series: insufficient coefficients: have " << entry.hecke.size()
       << ", need " << needed << " for t_trunc " << t_trunc << " at Q " << q;
    throw std::invalid_argument(os.str());
  }
  quad::KahanC acc;
  for (std::size_t r = 1; r <= entry.hecke.size(); ++r) {
    double w =
        smoothing::i_weight(t_trunc / (2.0 * kPi * static_cast<double>(r)), q);
    if (w == 0.0) continue;
    acc.add(entry.hecke[r - 1] * w *
            std::exp(-s * std::log(static_cast<double>(r))));
  }
  return acc.sum();
}

EdResult ed_sum(const SpectralDataset& dataset, double delta,
                const smoothing::Window& window, double q) {
  EdResult out;
  if (dataset.entries.empty()) return out;

  quad::Kahan acc;
  double peak = 0.0, last = 0.0;
  for (const auto& e : dataset.entries) {
    cplx nu = nu_delta(e.kappa, delta, window);
    cplx l = truncated_l_series(e, cplx(0.5, delta),
                                e.kappa + std::abs(delta), q);
    acc.add(e.alpha * e.H_half * e.H_half * (l * std::conj(nu)).real());
    double mag = std::abs(nu);
    peak = std::max(peak, mag);
    last = mag;  // entries are kappa-ascending
  }
  out.value = acc.sum();
  out.nu_last_over_peak = peak > 0.0 ? last / peak : 0.0;
  out.coverage_warning = last > 1e-6 * peak;
  return out;
}

}  // namespace zeta4::spectral
