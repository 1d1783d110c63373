#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "zeta4/smoothing.hh"
#include "zeta4/special.hh"
#include "oracle_values.hh"

using namespace zeta4::smoothing;
using zeta4::special::chi;
using zeta4::special::rs_theta;
using std::abs;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("gaussian-convolved window: values, mass, derivatives") {
  Window w{WindowKind::gaussian_conv, 100.0, 200.0, 5.0};
  CHECK(w.value(150.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.value(100.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w.value(200.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w.value(40.0) < 1e-20);
  CHECK(w.value(260.0) < 1e-20);
  CHECK(w.mass() == doctest::Approx(100.0).epsilon(1e-13));
  CHECK(w.support_lo() < 100.0);
  CHECK(w.support_hi() > 200.0);
  CHECK(w.value(w.support_lo()) < 1e-18);
  // Exact derivative vs central differences, orders 1 and 2.
  for (double t : {95.0, 103.0, 150.0, 201.5}) {
    double h = 1e-4;
    double fd1 = (w.value(t + h) - w.value(t - h)) / (2 * h);
    CHECK(abs(w.deriv(t, 1) - fd1) < 1e-7);
    double fd2 = (w.value(t + h) - 2 * w.value(t) + w.value(t - h)) / (h * h);
    CHECK(abs(w.deriv(t, 2) - fd2) < 1e-5);
  }
  // Hermite recursion consistency at higher order: d6 finite-difference of d4.
  double h = 1e-3, t = 104.0;
  double fd = (w.deriv(t + h, 5) - w.deriv(t - h, 5)) / (2 * h);
  CHECK(abs(w.deriv(t, 6) - fd) < 1e-4 * (1.0 + abs(w.deriv(t, 6))));
}

TEST_CASE("bump window: compact support and smooth ramps") {
  Window w{WindowKind::bump, 100.0, 200.0, 10.0};
  CHECK(w.value(99.9999) == 0.0);
  CHECK(w.value(200.0001) == 0.0);
  CHECK(w.value(115.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.value(150.0) == 1.0);
  double prev = 0.0;
  for (int i = 0; i <= 40; ++i) {  // ramp is monotone
    double v = w.value(100.0 + 10.0 * i / 40.0);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK(w.mass() < 100.0);
  CHECK(w.mass() > 80.0);
  CHECK(w.support_lo() == 100.0);
  CHECK(w.support_hi() == 200.0);
  double t = 104.0, h = 1e-4;
  double fd1 = (w.value(t + h) - w.value(t - h)) / (2 * h);
  CHECK(abs(w.deriv(t, 1) - fd1) < 1e-4);
}

TEST_CASE("indicator window") {
  Window w{WindowKind::indicator, 10.0, 30.0, 0.0};
  CHECK(w.value(20.0) == 1.0);
  CHECK(w.value(9.999) == 0.0);
  CHECK(w.value(30.001) == 0.0);
  CHECK(w.mass() == 20.0);
  CHECK_THROWS_AS((void)w.deriv(20.0, 1), std::domain_error);
}

TEST_CASE("smoothed step weight") {
  CHECK(i_weight(0.0, 25.0) == 0.0);
  CHECK(i_weight(1.0, 25.0) == doctest::Approx(0.5).epsilon(1e-14));
  for (double ww : {0.1, 0.5, 2.0, 7.0}) {
    CHECK(i_weight(ww, 16.0) + i_weight(1.0 / ww, 16.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
  // I(e^{2/sqrt Q}) = (1 + erf(1))/2.
  double Q = 36.0;
  CHECK(i_weight(std::exp(2.0 / std::sqrt(Q)), Q) ==
        doctest::Approx((1.0 + oracle::erf_1) / 2).epsilon(1e-13));
  // Monotone increasing.
  CHECK(i_weight(0.5, 25.0) < i_weight(0.9, 25.0));
  CHECK(i_weight(1.1, 25.0) < i_weight(2.0, 25.0));
  // j_weight is I on the moment scale.
  double t = 200.0, delta = 1.0, x = 500.0;
  double wv = t * (t + delta) / (4.0 * kPi * kPi * x);
  CHECK(j_weight(x, t, delta, 25.0) == doctest::Approx(i_weight(wv, 25.0)).epsilon(1e-14));
}

TEST_CASE("contour cutoff weight against reference values") {
  CHECK(abs(v_weight(10.0, 200.0, 1.0, 25.0).real() - oracle::vweight_x10_t200) < 1e-8);
  CHECK(abs(v_weight(100.0, 200.0, 1.0, 25.0).real() - oracle::vweight_x100_t200) < 1e-8);
  CHECK(abs(v_weight(1000.0, 200.0, 1.0, 25.0).real() - oracle::vweight_x1000_t200) < 1e-8);
  CHECK(abs(v_weight(3000.0, 200.0, 1.0, 25.0).real() - oracle::vweight_x3000_t200) < 1e-9);
  CHECK(abs(v_weight(4.0, 100.0, 0.0, 16.0).real() - oracle::vweight_x4_t100) < 1e-8);
  // Zero shift makes the contour integrand conjugate-symmetric: V is real.
  CHECK(abs(v_weight(900.0, 200.0, 0.0, 25.0).imag()) < 1e-9);
}

TEST_CASE("contour cutoff stays within the erf-step error envelope") {
  for (double t : {100.0, 200.0, 500.0}) {
    for (double delta : {0.0, 1.0}) {
      double Q = (t == 100.0) ? 16.0 : 25.0;
      double xstar = t * (t + delta) / (4.0 * kPi * kPi);
      for (double f : {0.05, 0.3, 0.8, 1.0, 1.3, 2.2, 3.0}) {
        double x = f * xstar;
        double diff = abs(v_weight(x, t, delta, Q) - j_weight(x, t, delta, Q));
        CHECK(diff <= b_error_bound(x, t, delta, Q));
      }
    }
  }
}

TEST_CASE("fixed-node contour evaluator matches the adaptive one") {
  double t = 200.0, delta = 1.0, Q = 25.0, xmax = 2500.0;
  VWeightLine line(t, delta, Q, xmax, 1e-10);
  CHECK(line.nodes() > 10);
  for (double x : {1.0, 7.0, 55.0, 300.0, 1013.0, 1800.0, 2500.0}) {
    CHECK(abs(line.eval(x) - v_weight(x, t, delta, Q)) < 3e-9);
  }
  // Zero-shift variant.
  VWeightLine line0(100.0, 0.0, 16.0, 500.0, 1e-10);
  for (double x : {2.0, 100.0, 253.0, 500.0}) {
    CHECK(abs(line0.eval(x) - v_weight(x, 100.0, 0.0, 16.0)) < 3e-9);
  }
}

TEST_CASE("functional-equation phase factor") {
  for (auto [t, delta] : {std::pair{50.0, 0.7}, {200.0, 1.0}, {120.0, 0.0}}) {
    auto [kappa, phi] = kappa_phi(t, delta);
    CHECK(abs(abs(kappa) - 1.0) < 1e-12);
    // Direct product of functional-equation factors.
    cplx direct = chi({0.5, -t}) * chi({0.5, t + delta});
    CHECK(abs(kappa - direct) < 1e-9);
    // Phase derived from the theta function.
    cplx via_theta = std::polar(1.0, 2.0 * (rs_theta(t) - rs_theta(t + delta)));
    CHECK(abs(kappa - via_theta) < 1e-9);
    // Stationary-phase exponent.
    double want_phi = t * std::log(t / (2.0 * kPi * std::exp(1.0))) -
                      (t + delta) * std::log((t + delta) / (2.0 * kPi * std::exp(1.0)));
    CHECK(phi == doctest::Approx(want_phi).epsilon(1e-12));
  }
}

TEST_CASE("window mellin transform") {
  Window w{WindowKind::gaussian_conv, 100.0, 200.0, 10.0};
  cplx got = window_mellin({0.5, -3.0}, w, 1.0);
  CHECK(abs(got - cplx(oracle::wmellin_spot_re, oracle::wmellin_spot_im)) <
        1e-9 * abs(got));
  // Indicator window: closed form ((T2+d/2)^s - (T1+d/2)^s)/s.
  Window ind{WindowKind::indicator, 50.0, 80.0, 0.0};
  cplx s{0.7, 5.0};
  cplx want = (std::pow(cplx(80.5, 0.0), s) - std::pow(cplx(50.5, 0.0), s)) / s;
  CHECK(abs(window_mellin(s, ind, 1.0) - want) < 1e-9 * abs(want));
}

TEST_CASE("box-kernel fourier factor") {
  CHECK(g_window_fourier(0.0, 2.0) == 1.0);
  CHECK(abs(g_window_fourier(kPi / 2.0, 2.0)) < 1e-15);
  CHECK(g_window_fourier(0.3, 2.0) == doctest::Approx(std::sin(0.6) / 0.6).epsilon(1e-14));
  CHECK(g_window_fourier(-0.3, 2.0) == g_window_fourier(0.3, 2.0));
  // Series branch continuity near zero.
  CHECK(abs(g_window_fourier(1e-8, 3.0) - g_window_fourier(2e-8, 3.0)) < 1e-14);
}
