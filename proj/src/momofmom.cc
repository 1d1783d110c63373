#include "zeta4/momofmom.hh"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "zeta4/analytic.hh"
#include "zeta4/quadrature.hh"
#include "zeta4/smoothing.hh"
#include "zeta4/special.hh"

namespace zeta4::momofmom {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

double gamma0() {
  static const double g = special::stieltjes(0)[0];
  return g;
}

const analytic::MomentPolynomial& p3() {
  return analytic::moment_polynomial(analytic::PolyKind::P3);
}

void validate_kernel(const AveragingKernel& k) {
  if (!(k.c > 0.0))
    throw std::invalid_argument("momofmom: kernel scale must be positive");
  if (k.kind == KernelShape::smooth_exp && !(k.A > 0.0))
    throw std::invalid_argument("momofmom: smooth kernel needs decay rate > 0");
}

double big_n(double T) { return std::log(T / kTwoPi); }

}  // namespace

double AveragingKernel::value(double x) const {
  if (kind == KernelShape::indicator)
    return std::abs(x) <= c ? 1.0 / (2.0 * c) : 0.0;
  double s = A * c;
  return s / (kPi * (s * s + x * x));
}

double AveragingKernel::autocorr_fourier(double y) const {
  if (kind == KernelShape::indicator) {
    double g = smoothing::g_window_fourier(y, c);
    return g * g;
  }
  return std::exp(-2.0 * A * c * std::abs(y));
}

cplx laplace_ghat2_indicator(cplx s, double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("laplace_ghat2_indicator: c must be positive");
  cplx w = kPi * s / c;
  if (w.real() < 0.0 ||
      (w.real() == 0.0 &&
       (std::abs(w) < 1e-12 || std::abs(w - cplx(0.0, kTwoPi)) < 1e-12 ||
        std::abs(w + cplx(0.0, kTwoPi)) < 1e-12)))
    throw std::invalid_argument(
        "laplace_ghat2_indicator: s on a branch cut of the closed form");
  const cplx i2pi(0.0, kTwoPi);
  if (std::abs(w) >= 50.0) {
    // The three w log w-sized terms cancel to ~1/w, so evaluate the
    // cancellation-free tail series sum_k (-1)^{k+1} (4pi^2)^{k-1}
    // w^{1-2k} / (k(2k-1)) (convergent for |w| > 2pi) instead.
    cplx iw2 = 1.0 / (w * w), pw = 1.0 / w, acc = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 40; ++k) {
      cplx term = sign * pw / (k * (2.0 * k - 1.0));
      acc += term;
      if (std::abs(term) <= 1e-18 * std::abs(acc)) break;
      sign = -sign;
      pw *= 4.0 * kPi * kPi * iw2;
    }
    return (kPi / c) * acc;
  }
  cplx f;
  if (w.imag() == 0.0) {
    // real axis: the +-2pi i pair is conjugate, so the value is exactly real
    cplx up = (w + i2pi) * std::log(w + i2pi);
    f = cplx(2.0 * up.real() - 2.0 * w.real() * std::log(w.real()), 0.0);
  } else {
    f = (w + i2pi) * std::log(w + i2pi) + (w - i2pi) * std::log(w - i2pi) -
        2.0 * w * std::log(w);
  }
  return (kPi / c) * (-f / (4.0 * kPi * kPi));
}

namespace {

// 2 int_0^N ghat^2(y/2pi) P3(N-y) dy over an explicit breakpoint list;
// `split` doubles the panel count for the consistency pass.
double dbar_quadrature(double N, const AveragingKernel& k, bool split) {
  std::vector<double> brk;
  if (k.kind == KernelShape::indicator) {
    double period = kPi / k.c;  // half-period of sin^2(cy)
    brk.push_back(0.0);
    for (double y = period; y < N; y += period) brk.push_back(y);
    brk.push_back(N);
  } else {
    double lam = 2.0 * k.A * k.c;
    double yend = std::min(N, 65.0 / lam);
    double w = std::min(2.5 / lam, yend / 4.0);
    long np = std::lround(std::ceil(yend / w));
    brk.resize(static_cast<size_t>(np) + 1);
    for (long i = 0; i <= np; ++i) brk[static_cast<size_t>(i)] = yend * i / np;
  }
  if (split) {
    std::vector<double> fine;
    fine.reserve(2 * brk.size());
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
      fine.push_back(brk[i]);
      fine.push_back(0.5 * (brk[i] + brk[i + 1]));
    }
    fine.push_back(brk.back());
    brk.swap(fine);
  }
  auto f = [&](double y) { return k.autocorr_fourier(y) * p3().value(N - y); };
  return 2.0 * quad::integrate_panels(f, brk, 16);
}

}  // namespace

double dbar(double T, const AveragingKernel& kernel) {
  validate_kernel(kernel);
  if (!(T >= 100.0)) throw std::invalid_argument("dbar: requires T >= 100");
  double N = big_n(T);
  double coarse = dbar_quadrature(N, kernel, false);
  double fine = dbar_quadrature(N, kernel, true);
  if (std::abs(fine - coarse) > 1e-10 * (1.0 + std::abs(fine)))
    throw std::runtime_error("dbar: quadrature failure (split mismatch)");
  return fine;
}

double dbar_closed_form(double T, const AveragingKernel& kernel) {
  validate_kernel(kernel);
  if (!(T >= 100.0))
    throw std::invalid_argument("dbar_closed_form: requires T >= 100");
  double N = big_n(T);
  const auto& poly = p3();
  if (kernel.kind == KernelShape::smooth_exp) {
    double lam = 2.0 * kernel.A * kernel.c;
    double acc = 0.0, sign = 1.0, pw = lam;
    for (int j = 0; j <= 3; ++j) {
      double pj = j == 0 ? poly.value(N) : poly.deriv(N, j);
      acc += sign * pj / pw;
      sign = -sign;
      pw *= lam;
    }
    return 2.0 * acc;
  }
  double c = kernel.c, c2 = c * c;
  double b0 = poly.coeffs[3], b2 = poly.coeffs[1], b3 = poly.coeffs[0];
  return (kPi / c) * poly.value(N) -
         poly.deriv(N, 1) * (std::log(2.0 * c * N) + gamma0()) / c2 +
         (3.0 * b0 * N * N - 2.0 * b2) / (2.0 * c2) - b0 / (4.0 * c2 * c2) -
         b3 / (c2 * N);
}

double odbar(double T, const AveragingKernel& kernel) {
  validate_kernel(kernel);
  if (!(T >= 100.0)) throw std::invalid_argument("odbar: requires T >= 100");
  double M = big_n(T) + 2.0 * gamma0();
  auto kind = kernel.kind == KernelShape::indicator
                  ? analytic::KernelKind::box
                  : analytic::KernelKind::poisson;
  double scale = kernel.kind == KernelShape::indicator ? kernel.c
                                                       : kernel.A * kernel.c;
  double a0 = analytic::a_coeff(kind, scale, 0);
  double a1 = analytic::a_coeff(kind, scale, 1);
  double a2 = analytic::a_coeff(kind, scale, 2);
  return a0 * M * M + 2.0 * a1 * M + a2;
}

double log_anomaly_constant(double c) {
  if (!(c > 0.0))
    throw std::invalid_argument("log_anomaly_constant: c must be positive");
  return p3().coeffs[0] * (kPi / c) * (kPi / c);
}

double log_anomaly_constant(const AveragingKernel& kernel) {
  if (kernel.kind != KernelShape::indicator)
    throw std::invalid_argument(
        "log_anomaly_constant: defined for indicator kernels only");
  return log_anomaly_constant(kernel.c);
}

MoMReport m22_formula(double T, const AveragingKernel& kernel) {
  MoMReport r;
  r.T = T;
  r.kernel = kernel;
  r.dbar = dbar(T, kernel);
  r.odbar = odbar(T, kernel);
  r.formula_total = T * (r.dbar + r.odbar);
  if (kernel.kind == KernelShape::indicator)
    r.a_constant = log_anomaly_constant(kernel.c);
  return r;
}

namespace {

double zeta_sq(double u) {
  u = std::abs(u);
  auto method = u >= 2000.0 ? special::ZetaMethod::riemann_siegel
                            : special::ZetaMethod::euler_maclaurin;
  return std::norm(special::zeta(cplx(0.5, u), method));
}

// Normalized lattice weights of the indicator average over [-c, c] at step
// h: interior trapezoid plus linearly interpolated end strips, rescaled to
// unit sum so a constant signal passes through exactly.
struct ConvTaps {
  long jmin = 0;                // tap j multiplies sample at k + j
  std::vector<double> w;
};

ConvTaps indicator_taps(double c, double h) {
  ConvTaps taps;
  if (c == 0.0) {  // point mass
    taps.jmin = 0;
    taps.w = {1.0};
    return taps;
  }
  long kR = static_cast<long>(std::floor(c / h));
  long kL = -kR;
  taps.jmin = kL - 1;
  taps.w.assign(static_cast<size_t>(kR - kL + 3), 0.0);
  auto at = [&](long j) -> double& {
    return taps.w[static_cast<size_t>(j - taps.jmin)];
  };
  for (long j = kL; j <= kR; ++j) at(j) = h;
  at(kL) = at(kR) = 0.5 * h;
  double e = c - kR * h;  // end strip width, in [0, h)
  if (e > 0.0) {
    double th = e / h;  // interpolation fraction toward the outer neighbor
    at(kR) += e * (2.0 - th) / 2.0;
    at(kR + 1) += e * th / 2.0;
    at(kL) += e * (2.0 - th) / 2.0;
    at(kL - 1) += e * th / 2.0;
  }
  double mass = 0.0;
  for (double x : taps.w) mass += x;
  for (double& x : taps.w) x /= mass;
  return taps;
}

// Outer trapezoid of the convolved-square over samples f at stride `str`
// (grid step str*h); K is the fine-lattice index of T.
double outer_pass(const std::vector<double>& f, long off, long K, double h,
                  long str, const ConvTaps& taps) {
  quad::Kahan acc;
  for (long k = 0; k <= K; k += str) {
    double s = 0.0;
    for (size_t q = 0; q < taps.w.size(); ++q) {
      long j = taps.jmin + static_cast<long>(q);
      s += taps.w[q] * f[static_cast<size_t>(off + k + j * str)];
    }
    double wt = (k == 0 || k == K) ? 0.5 : 1.0;
    acc.add(wt * s * s);
  }
  return acc.sum() * h * static_cast<double>(str);
}

}  // namespace

double m22_empirical(double T, const AveragingKernel& kernel, double grid_step,
                     const std::function<double(double)>* line_signal,
                     double* err_estimate) {
  if (kernel.kind != KernelShape::indicator)
    throw std::invalid_argument(
        "m22_empirical: indicator kernels only (smooth tails exceed the "
        "sampled range)");
  if (!(kernel.c >= 0.0))
    throw std::invalid_argument("m22_empirical: kernel scale must be >= 0");
  if (!(T > 0.0) || T > 1e4)
    throw std::invalid_argument("m22_empirical: requires 0 < T <= 1e4");
  if (!(grid_step > 0.0) || grid_step > 0.05)
    throw std::invalid_argument("m22_empirical: requires grid_step <= 0.05");

  // Even step count over [0, T] so the stride-2 sublattice shares endpoints.
  long K = 2 * std::max<long>(1, std::lround(T / (2.0 * grid_step)));
  double h = T / static_cast<double>(K);
  long pad = static_cast<long>(std::ceil((kernel.c + 5.0) / h)) + 2;
  long kmin = -pad, kmax = K + pad;
  std::vector<double> f(static_cast<size_t>(kmax - kmin + 1));

  unsigned hw = std::thread::hardware_concurrency();
  int workers = static_cast<int>(std::clamp<unsigned>(hw ? hw : 1, 1, 32));
  std::atomic<long> next{kmin};
  auto sample = [&] {
    constexpr long chunk = 256;
    for (;;) {
      long k0 = next.fetch_add(chunk);
      if (k0 > kmax) return;
      long k1 = std::min(kmax, k0 + chunk - 1);
      for (long k = k0; k <= k1; ++k) {
        double u = k * h;
        f[static_cast<size_t>(k - kmin)] =
            line_signal ? (*line_signal)(u) : zeta_sq(u);
      }
    }
  };
  if (workers == 1) {
    sample();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(sample);
    for (auto& th : pool) th.join();
  }

  double fine = outer_pass(f, -kmin, K, h, 1, indicator_taps(kernel.c, h));
  double coarse =
      outer_pass(f, -kmin, K, h, 2, indicator_taps(kernel.c, 2.0 * h));
  double err = std::abs(fine - coarse);
  if (err_estimate) *err_estimate = err;
  if (err > 0.01 * std::max(std::abs(fine), 1e-300))
    throw std::runtime_error(
        "m22_empirical: grid step too coarse (halving moves the result by "
        "more than 1%)");
  return fine;
}

}  // namespace zeta4::momofmom
