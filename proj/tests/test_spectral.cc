#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "zeta4/quadrature.hh"
#include "zeta4/smoothing.hh"
#include "zeta4/special.hh"
#include "zeta4/spectral.hh"

using namespace zeta4;
using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace oracle {
// mpmath (mp.dps = 25..30), bump profile on [1, 2] with ramp width 0.3.
constexpr double xi_5i_re = 0.0032793173299415127;
constexpr double xi_5i_im = 0.37062346189545436;
constexpr double xi_half[5] = {0.40758407029102846, 0.03561895759672519,
                               6.721661920409921e-06, 8.71591273726743e-07,
                               1.1563281506306731e-07};  // k = 1,2,6,7,8
constexpr double theta_1 = -0.43129741983149956;
}  // namespace oracle

namespace {

spectral::TestFunction test_bump() { return spectral::bump_profile(1.0, 2.0, 0.3); }

smoothing::Window gaussian_window(double t1, double t2, double dw) {
  return smoothing::Window{smoothing::WindowKind::gaussian_conv, t1, t2, dw};
}

std::filesystem::path dataset_path() {
  return std::filesystem::path(__FILE__).parent_path().parent_path() / "data" /
         "maass_synthetic.json";
}

nlohmann::json valid_doc() {
  nlohmann::json e = {{"kappa", 9.5337},
                      {"alpha", 0.2},
                      {"parity", -1},
                      {"H_half", 1.25},
                      {"hecke", {1.0, 0.5, -0.3, 0.25}}};
  nlohmann::json e2 = e;
  e2["kappa"] = 12.173;
  e2["parity"] = 1;
  return {{"source", "inline"}, {"n_coef", 4}, {"entries", {e, e2}}};
}

}  // namespace

TEST_CASE("profiles: construction, evaluation, and rejection") {
  auto u = test_bump();
  CHECK(u.value(1.0) == 0.0);
  CHECK(u.value(2.0) == 0.0);
  CHECK(u.value(1.5) == 1.0);
  CHECK(u.support_lo() == 1.0);
  CHECK(u.support_hi() == 2.0);

  auto g = spectral::grid_profile(
      {{1.0, 0.0}, {1.25, 0.8}, {1.5, 0.5}, {2.0, 0.0}});
  CHECK(g.value(1.0) == 0.0);
  CHECK(g.value(1.125) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(g.value(1.375) == doctest::Approx(0.65).epsilon(1e-14));
  CHECK(g.value(0.5) == 0.0);
  CHECK(g.value(3.0) == 0.0);

  // sharp-edged, ill-ordered, or origin-crossing profiles fail loudly
  spectral::TestFunction bad;
  bad.window = smoothing::Window{smoothing::WindowKind::indicator, 1.0, 2.0, 0.0};
  CHECK_THROWS_AS(spectral::check_test_function(bad), std::invalid_argument);
  bad.window.reset();
  CHECK_THROWS_AS(spectral::check_test_function(bad), std::invalid_argument);
  bad.window = gaussian_window(1.0, 2.0, 0.5);  // support reaches x < 0
  CHECK_THROWS_AS(spectral::check_test_function(bad), std::invalid_argument);
  CHECK_THROWS_AS(spectral::grid_profile({{1.0, 0.3}, {2.0, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral::grid_profile({{1.0, 0.0}, {0.5, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral::grid_profile({{-1.0, 0.0}, {2.0, 0.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral::grid_profile({{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("hypergeometric transform: frozen values on both evaluation paths") {
  auto u = test_bump();

  // generic path (complex order)
  cplx x5 = spectral::xi_transform(cplx(0.0, 5.0), u);
  CHECK(std::abs(x5 - cplx(oracle::xi_5i_re, oracle::xi_5i_im)) < 1e-11);

  // half-integer fast path (real series)
  const double ks[5] = {0.5, 1.5, 5.5, 6.5, 7.5};
  for (int i = 0; i < 5; ++i) {
    double v = spectral::xi_transform(cplx(ks[i], 0.0), u).real();
    CHECK(std::abs(v - oracle::xi_half[i]) < 1e-11 * oracle::xi_half[i]);
  }

  // zero profile annihilates; the functional is linear
  auto z = spectral::grid_profile({{1.0, 0.0}, {1.5, 0.0}, {2.0, 0.0}});
  CHECK(std::abs(spectral::xi_transform(cplx(0.0, 1.0), z)) == 0.0);

  auto u1 = spectral::grid_profile(
      {{1.0, 0.0}, {1.25, 0.8}, {1.5, 0.5}, {1.75, 0.2}, {2.0, 0.0}});
  auto u2 = spectral::grid_profile(
      {{1.0, 0.0}, {1.25, 0.1}, {1.5, 0.9}, {1.75, 0.4}, {2.0, 0.0}});
  auto u12 = spectral::grid_profile(
      {{1.0, 0.0}, {1.25, 0.9}, {1.5, 1.4}, {1.75, 0.6}, {2.0, 0.0}});
  cplx zq(0.0, 1.3);
  cplx lhs = spectral::xi_transform(zq, u12);
  cplx rhs = spectral::xi_transform(zq, u1) + spectral::xi_transform(zq, u2);
  CHECK(std::abs(lhs - rhs) < 1e-10);

  CHECK_THROWS_AS(spectral::xi_transform(cplx(-0.1, 0.0), u),
                  std::invalid_argument);
}

TEST_CASE("hypergeometric transform: double-integral representation swap") {
  // B(1/2+iy,1/2+iy) x^{-1/2-iy} 2F1(...;-1/x) has the Euler form
  // int_0^1 (w(1-w))^{-1/2+iy} (x+w)^{-1/2-iy} dw; integrating the profile
  // against either side must agree.  The w-integral is folded about 1/2 so
  // the kernel w(1-w) is evaluated cancellation-free on both halves, with
  // geometric panels absorbing the endpoint oscillation.
  auto u = test_bump();
  const double y = 5.0;
  const cplx a(0.5, y);
  auto brk = quad::geometric_breakpoints(1e-18, 0.5, 1.4);
  auto inner = [&](double x) -> cplx {
    auto half = [&](bool mirrored) {
      auto f = [&](double w) -> cplx {
        double xw = mirrored ? x + (1.0 - w) : x + w;
        return std::exp((-0.5 + cplx(0.0, y)) * std::log(w * (1.0 - w)) -
                        a * std::log(xw));
      };
      return quad::integrate_panels_c(f, brk, 16);
    };
    return half(false) + half(true);
  };
  auto outer = [&](double x) -> cplx { return u.value(x) * inner(x); };
  auto rep = quad::integrate_adaptive_c(outer, 1.0, 2.0, 1e-10, 1e-13, 16, 2048);
  REQUIRE(rep.converged);
  cplx direct = spectral::xi_transform(cplx(0.0, y), u);
  CHECK(std::abs(direct - rep.value) < 1e-8);
}

TEST_CASE("hypergeometric transform: geometric decay at half-integers") {
  auto u = test_bump();
  double prev = std::abs(spectral::xi_transform(cplx(5.5, 0.0), u).real());
  for (int k = 7; k <= 10; ++k) {
    double cur = std::abs(spectral::xi_transform(cplx(k - 0.5, 0.0), u).real());
    CHECK(cur / prev <= 0.5);  // measured ~0.13
    prev = cur;
  }
}

TEST_CASE("theta transform: parity, composition, suppression, limit") {
  auto u = test_bump();

  double th = spectral::theta_transform(1.0, u);
  CHECK(std::abs(th - oracle::theta_1) < 1e-10);
  CHECK(spectral::theta_transform(-1.0, u) == th);  // |y| by construction

  cplx x1 = spectral::xi_transform(cplx(0.0, 1.0), u);
  double assembled = 0.5 * (x1.real() - x1.imag() / std::sinh(kPi));
  CHECK(std::abs(th - assembled) < 1e-12);

  auto z = spectral::grid_profile({{1.0, 0.0}, {1.5, 0.0}, {2.0, 0.0}});
  CHECK(spectral::theta_transform(2.0, z) == 0.0);

  // the 1/sinh factor is invisible once y is a few units out
  cplx x6 = spectral::xi_transform(cplx(0.0, 6.0), u);
  double th6 = spectral::theta_transform(6.0, u);
  CHECK(std::abs(th6 - 0.5 * x6.real()) < 1e-8 * std::abs(x6));

  double lim = spectral::theta_limit(u);
  CHECK(std::abs(spectral::theta_transform(1e-3, u) - lim) < 1e-4);

  CHECK_THROWS_AS(spectral::theta_transform(0.0, u), std::invalid_argument);
}

TEST_CASE("nu weight: reassembly, chi modulus, decay envelope") {
  auto win = gaussian_window(1000.0, 2000.0, 200.0);

  // compositional identity against the published factors
  {
    double y = 2.0, delta = 1.0;
    cplx expect = cplx(1.0, 1.0 / std::sinh(kPi * y)) *
                  special::chi(cplx(0.5, delta - y)) *
                  special::beta_fn(cplx(0.5, y), cplx(0.5, y)) *
                  smoothing::window_mellin(cplx(0.5, -y), win, delta);
    cplx got = spectral::nu_delta(y, delta, win);
    CHECK(std::abs(got - expect) <= 1e-12 * std::abs(expect));
    spectral::NuWeight nw{delta, win};
    CHECK(nw.eval(y) == got);
  }

  // delta = 0: the chi factor sits on the critical line, |chi| = 1
  {
    double y = 3.0;
    CHECK(std::abs(std::abs(special::chi(cplx(0.5, -y))) - 1.0) < 1e-12);
    cplx n0 = spectral::nu_delta(y, 0.0, win);
    cplx stripped = cplx(1.0, 1.0 / std::sinh(kPi * y)) *
                    special::beta_fn(cplx(0.5, y), cplx(0.5, y)) *
                    smoothing::window_mellin(cplx(0.5, -y), win, 0.0);
    CHECK(std::abs(std::abs(n0) - std::abs(stripped)) <
          1e-12 * std::abs(stripped));
    CHECK(spectral::nu_delta(y, -0.0, win) == n0);
  }

  // |nu| under 10 sqrt(T)(1 + 1/|y|)/(1+|y|)^{3/2}; measured peak ratio is
  // about 0.20 of the budget at y near 5
  {
    double st = std::sqrt(win.support_hi());
    for (double delta : {0.0, 1.0, 2.0, 10.0}) {
      for (double y : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 8.0, 12.0, 20.0, 35.0,
                       60.0, 100.0}) {
        double bound = 10.0 * st * (1.0 + 1.0 / y) / std::pow(1.0 + y, 1.5);
        CHECK(std::abs(spectral::nu_delta(y, delta, win)) <= bound);
      }
    }
  }

  CHECK_THROWS_AS(spectral::nu_delta(0.0, 1.0, win), std::invalid_argument);

  // wide-shift variant: finite, and guards its preconditions
  cplx nr = spectral::nu_delta_rescaled(3.0, 10.0, win);
  CHECK(std::isfinite(nr.real()));
  CHECK(std::isfinite(nr.imag()));
  CHECK_THROWS_AS(spectral::nu_delta_rescaled(3.0, 0.0, win),
                  std::invalid_argument);
  CHECK_THROWS_AS(spectral::nu_delta_rescaled(0.0, 10.0, win),
                  std::invalid_argument);
}

TEST_CASE("continuous remainder: reality, tail, symmetry, magnitude") {
  auto win = gaussian_window(1000.0, 2000.0, 300.0);

  auto e200 = spectral::ec_integral(2.0, win, 200.0, 8);
  CHECK(std::isfinite(e200.value));
  CHECK(std::abs(e200.imag_accumulator) <= 1e-10);

  auto e400 = spectral::ec_integral(2.0, win, 400.0, 8);
  CHECK(std::abs(e200.value - e400.value) <= 1e-3 * std::abs(e400.value));
  CHECK(e200.truncation_estimate <= 1e-5);  // measured ~8e-7, and honest:
  CHECK(std::abs(e200.value - e400.value) <=
        10.0 * e200.truncation_estimate + 1e-9);

  // the shift sign is a labeling choice; canonicalization makes the flip exact
  auto ep = spectral::ec_integral(2.0, win, 50.0, 8);
  auto em = spectral::ec_integral(-2.0, win, 50.0, 8);
  CHECK(std::abs(em.value - ep.value) <= 1e-9 * std::abs(ep.value));

  // worker count must not leak into the value
  auto w1 = spectral::ec_integral(2.0, win, 50.0, 1);
  CHECK(std::abs(w1.value - ep.value) <= 1e-12 * std::abs(ep.value));

  // |E_c| <= 10 sqrt(T) (1 + delta^{1/3}) across the test shifts
  double st = std::sqrt(win.support_hi());
  for (double delta : {0.0, 10.0}) {
    auto e = spectral::ec_integral(delta, win, 200.0, 8);
    CHECK(std::abs(e.value) <= 10.0 * st * (1.0 + std::cbrt(delta)));
    CHECK(std::abs(e.imag_accumulator) <= 1e-10);
  }
  CHECK(std::abs(e200.value) <= 10.0 * st * (1.0 + std::cbrt(2.0)));

  // bounded through y = 0 (nodes shifted off the origin, no blowup)
  auto tiny = spectral::ec_integral(2.0, win, 0.5, 1);
  CHECK(std::isfinite(tiny.value));

  CHECK_THROWS_AS(spectral::ec_integral(2.0, win, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(spectral::ec_integral(2.0, win, 2e4), std::invalid_argument);
  CHECK_THROWS_AS(spectral::ec_integral(2.0, win, 100.0, 1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("dataset: json loading, validation, hecke structure") {
  auto ds = spectral::load_dataset_json(dataset_path().string());
  CHECK(ds.entries.size() == 10);
  CHECK(ds.n_coef == 100);
  CHECK(std::abs(ds.entries.front().kappa - 9.5337) <= 0.01);

  // multiplicativity holds on the ingested coefficients
  for (const auto& e : ds.entries) {
    CHECK(e.hecke[5] == doctest::Approx(e.hecke[1] * e.hecke[2]).epsilon(1e-15));
    CHECK(e.hecke[11] == doctest::Approx(e.hecke[3] * e.hecke[2]).epsilon(1e-15));
    CHECK(e.hecke[0] == 1.0);
  }

  // corrupt files fail loudly, each for its own reason
  auto reject = [](nlohmann::json doc) {
    CHECK_THROWS_AS(
        spectral::parse_dataset_json(doc.dump(), "inline"), std::runtime_error);
  };
  CHECK_NOTHROW(spectral::parse_dataset_json(valid_doc().dump(), "inline"));
  {
    auto d = valid_doc();
    d["entries"][0]["kappa"] = 10.2;  // wrong lowest eigenvalue
    reject(d);
  }
  {
    auto d = valid_doc();
    d["entries"][1]["kappa"] = 9.4;  // not increasing
    reject(d);
  }
  {
    auto d = valid_doc();
    d["entries"][0]["alpha"] = -0.1;
    reject(d);
  }
  {
    auto d = valid_doc();
    d["entries"][0]["parity"] = 2;
    reject(d);
  }
  {
    auto d = valid_doc();
    d["entries"][0]["hecke"][0] = 0.9;  // t(1) != 1
    reject(d);
  }
  {
    auto d = valid_doc();
    d["entries"][0]["hecke"][1] = 5.0;  // outside the Ramanujan band
    reject(d);
  }
  {
    auto d = valid_doc();
    d["entries"][0]["hecke"].push_back(0.0);  // length != n_coef
    reject(d);
  }
  {
    auto d = valid_doc();
    d["entries"] = nlohmann::json::array();
    reject(d);
  }
  CHECK_THROWS_AS(spectral::parse_dataset_json("{", "inline"),
                  std::runtime_error);
  CHECK_THROWS_AS(spectral::parse_dataset_json("{\"n_coef\": 4}", "inline"),
                  std::runtime_error);
  CHECK_THROWS_AS(spectral::load_dataset_json("/nonexistent/ds.json"),
                  std::runtime_error);
}

TEST_CASE("dataset: csv loader with hecke sidecars") {
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "zeta4_csv_test";
  fs::create_directories(dir);
  {
    std::ofstream main(dir / "ds.csv");
    main << "kappa,alpha,parity,H_half\n";
    main << "9.5337,0.2,-1,1.25\n";
    main << "12.173,0.15,1,0.8\n";
  }
  {
    std::ofstream h0(dir / "hecke_0.csv");
    h0 << "1.0\n0.5\n-0.3\n0.25\n";
    std::ofstream h1(dir / "hecke_1.csv");
    h1 << "1.0\n-0.2\n0.1\n0.05\n";
  }
  auto ds = spectral::load_dataset_csv((dir / "ds.csv").string());
  CHECK(ds.entries.size() == 2);
  CHECK(ds.n_coef == 4);
  CHECK(ds.entries[0].kappa == 9.5337);
  CHECK(ds.entries[0].parity == -1);
  CHECK(ds.entries[1].alpha == 0.15);
  CHECK(ds.entries[1].hecke[1] == -0.2);

  auto dir2 = fs::temp_directory_path() / "zeta4_csv_missing";
  fs::create_directories(dir2);
  {
    std::ofstream main(dir2 / "ds.csv");
    main << "kappa,alpha,parity,H_half\n9.5337,0.2,-1,1.25\n";
  }
  CHECK_THROWS_AS(spectral::load_dataset_csv((dir2 / "ds.csv").string()),
                  std::runtime_error);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("truncated series: cutoffs, degenerate data, insufficiency") {
  auto ds = spectral::load_dataset_json(dataset_path().string());

  // smooth cutoff vs hard truncation once Q is large and the edge sits
  // mid-gap: t_trunc/2pi = 3.5 keeps every weight within 1e-20 of 0 or 1
  {
    const auto& e = ds.entries[0];
    cplx s(0.5, 0.0);
    cplx smooth = spectral::truncated_l_series(e, s, 7.0 * kPi, 1e4);
    cplx hard(0.0, 0.0);
    for (int r = 1; r <= 3; ++r)
      hard += e.hecke[static_cast<std::size_t>(r - 1)] / std::sqrt(double(r));
    CHECK(std::abs(smooth - hard) <= 1e-6);
  }

  // lone t(1) = 1 reproduces the constant function 1
  {
    spectral::SpectralEntry e;
    e.kappa = 9.5337;
    e.alpha = 0.2;
    e.H_half = 1.0;
    e.hecke.assign(15, 0.0);
    e.hecke[0] = 1.0;
    cplx v = spectral::truncated_l_series(e, cplx(0.5, 0.7), 12.0 * kPi, 49.0);
    CHECK(std::abs(v - 1.0) < 1e-12);

    CHECK_THROWS_AS(
        spectral::truncated_l_series(e, cplx(0.5, 0.0), 200.0 * kPi, 49.0),
        std::invalid_argument);
    CHECK_THROWS_AS(spectral::truncated_l_series(e, cplx(0.5, 0.0), 0.0, 49.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        spectral::truncated_l_series(e, cplx(0.5, 0.0), 2.0 * kPi, 0.0),
        std::invalid_argument);
  }
}

TEST_CASE("discrete remainder: assembly, degenerate data, coverage") {
  auto ds = spectral::load_dataset_json(dataset_path().string());
  auto win = gaussian_window(1000.0, 2000.0, 200.0);

  // empty data and silent data
  {
    spectral::SpectralDataset empty;
    auto r = spectral::ed_sum(empty, 1.0, win);
    CHECK(r.value == 0.0);
    CHECK(!r.coverage_warning);

    auto muted = ds;
    for (auto& e : muted.entries) e.H_half = 0.0;
    CHECK(spectral::ed_sum(muted, 1.0, win).value == 0.0);
  }

  // single entry equals the hand-assembled pipeline
  {
    spectral::SpectralDataset one;
    one.n_coef = ds.n_coef;
    one.source = "single";
    one.entries.push_back(ds.entries[0]);
    const auto& e = one.entries[0];
    double delta = 1.0;
    cplx nu = spectral::nu_delta(e.kappa, delta, win);
    cplx l = spectral::truncated_l_series(e, cplx(0.5, delta),
                                          e.kappa + delta, 49.0);
    double expect = e.alpha * e.H_half * e.H_half * (l * std::conj(nu)).real();
    auto r = spectral::ed_sum(one, delta, win);
    CHECK(std::abs(r.value - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }

  // ten eigenvalues genuinely under-cover this window: the weight at the
  // last kappa is still ~1e-1..1e-2 of its peak, so the warning must fire
  {
    auto r = spectral::ed_sum(ds, 2.0, win);
    CHECK(std::isfinite(r.value));
    CHECK(r.coverage_warning);
    CHECK(r.nu_last_over_peak > 1e-6);
  }

  // ...and goes quiet once the list reaches heights where the weight died
  {
    spectral::SpectralDataset far;
    far.n_coef = 80;
    far.source = "constructed";
    spectral::SpectralEntry a;
    a.kappa = 9.5337;
    a.alpha = 0.2;
    a.parity = 1;
    a.H_half = 1.0;
    a.hecke.assign(80, 0.0);
    a.hecke[0] = 1.0;
    spectral::SpectralEntry b = a;
    b.kappa = 200.0;
    far.entries = {a, b};
    auto r = spectral::ed_sum(far, 1.0, gaussian_window(1000.0, 2000.0, 300.0));
    CHECK(!r.coverage_warning);
    CHECK(r.nu_last_over_peak <= 1e-6);
  }
}
