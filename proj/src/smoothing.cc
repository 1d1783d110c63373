#include "zeta4/smoothing.hh"

#include <cmath>
#include <stdexcept>

#include "zeta4/quadrature.hh"
#include "zeta4/special.hh"

namespace zeta4::smoothing {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// C^infty ramp p: (0,1) -> (0,1), flat to all orders at both ends.
double bump_ramp(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::exp(-std::exp(-1.0 / (1.0 - x)) / x);
}

double bump_window_value(const Window& w, double t) {
  if (t <= w.t1 || t >= w.t2) return 0.0;
  if (t < w.t1 + w.delta_w) return bump_ramp((t - w.t1) / w.delta_w);
  if (t > w.t2 - w.delta_w) return bump_ramp((w.t2 - t) / w.delta_w);
  return 1.0;
}

double bump_ramp_mass() {
  static const double mass = [] {
    auto res = quad::integrate_adaptive([](double x) { return bump_ramp(x); },
                                        0.0, 1.0, 1e-13, 1e-13, 32);
    return res.value.real();
  }();
  return mass;
}

// Hermite polynomials H_m (physicists'), m <= 8.
double hermite(int m, double u) {
  double h0 = 1.0, h1 = 2.0 * u;
  if (m == 0) return h0;
  for (int k = 2; k <= m; ++k) {
    double h2 = 2.0 * u * h1 - 2.0 * (k - 1) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

void check_window(const Window& w) {
  if (!(w.t2 > w.t1)) throw std::invalid_argument("window needs t2 > t1");
  if (w.kind != WindowKind::indicator) {
    if (!(w.delta_w > 0.0)) throw std::invalid_argument("window needs delta_w > 0");
    if (w.kind == WindowKind::bump && w.t2 - w.t1 < 2.0 * w.delta_w)
      throw std::invalid_argument("bump window needs t2 - t1 >= 2 delta_w");
  }
}

}  // namespace

double Window::value(double t) const {
  check_window(*this);
  switch (kind) {
    case WindowKind::indicator:
      return (t >= t1 && t <= t2) ? 1.0 : 0.0;
    case WindowKind::gaussian_conv:
      return 0.5 * (std::erf((t - t1) / delta_w) - std::erf((t - t2) / delta_w));
    case WindowKind::bump:
      return bump_window_value(*this, t);
  }
  return 0.0;
}

double Window::deriv(double t, int order) const {
  check_window(*this);
  if (order < 1 || order > 6) throw std::invalid_argument("deriv order in [1, 6]");
  if (kind == WindowKind::indicator)
    throw std::domain_error("indicator window is not differentiable");
  if (kind == WindowKind::gaussian_conv) {
    // W'(t) = F(t-t1) - F(t-t2), F(u) = exp(-u^2/D^2)/(sqrt(pi) D);
    // F^(m)(u) = F(u) (-1/D)^m H_m(u/D).
    int m = order - 1;
    auto F_m = [&](double u) {
      double v = u / delta_w;
      return std::exp(-v * v) / (std::sqrt(kPi) * delta_w) *
             std::pow(-1.0 / delta_w, m) * hermite(m, v);
    };
    return F_m(t - t1) - F_m(t - t2);
  }
  // bump: central differences, order by nesting
  double h = 1e-2 * delta_w;
  if (order == 1) return (value(t + h) - value(t - h)) / (2.0 * h);
  double up = deriv(t + h, order - 1), dn = deriv(t - h, order - 1);
  return (up - dn) / (2.0 * h);
}

double Window::mass() const {
  check_window(*this);
  switch (kind) {
    case WindowKind::indicator:
    case WindowKind::gaussian_conv:
      return t2 - t1;  // erf smoothing preserves total mass
    case WindowKind::bump:
      return (t2 - t1) - 2.0 * delta_w * (1.0 - bump_ramp_mass());
  }
  return 0.0;
}

double Window::support_lo() const {
  return kind == WindowKind::gaussian_conv ? t1 - 10.0 * delta_w : t1;
}

double Window::support_hi() const {
  return kind == WindowKind::gaussian_conv ? t2 + 10.0 * delta_w : t2;
}

double i_weight(double w, double Q) {
  if (w < 0.0) throw std::invalid_argument("i_weight needs w >= 0");
  if (w == 0.0) return 0.0;
  return 0.5 * (1.0 + std::erf(0.5 * std::sqrt(Q) * std::log(w)));
}

double j_weight(double x, double t, double delta, double Q) {
  if (!(x > 0.0) || !(t > 0.0)) throw std::invalid_argument("j_weight needs x, t > 0");
  double xi = std::log(t * (t + delta) / (4.0 * kPi * kPi * x));
  return 0.5 * (1.0 + std::erf(0.5 * std::sqrt(Q) * xi));
}

namespace {

// log of Y_delta(1/2 + z)/Y_delta(1/2) plus z^2/Q - z log(pi^2 x); the
// polynomial pair enters as an explicit ratio (no cancellation).
struct VIntegrand {
  double t, delta, Q, log_pi2x;  // log_pi2x = 0 gives the x-independent factor
  cplx a0, b0;
  cplx den4, lg_a0, lg_b0;

  VIntegrand(double t_, double delta_, double Q_, double log_pi2x_)
      : t(t_), delta(delta_), Q(Q_), log_pi2x(log_pi2x_) {
    a0 = cplx(0.25, t / 2.0);
    b0 = cplx(0.25, -(t + delta) / 2.0);
    den4 = poly4(cplx(0.5, 0.0));
    lg_a0 = special::log_gamma(a0);
    lg_b0 = special::log_gamma(b0);
  }

  cplx poly4(cplx w) const {
    return (w + cplx(0, t)) * (w - 1.0 + cplx(0, t)) * (w - cplx(0, t + delta)) *
           (w - 1.0 - cplx(0, t + delta));
  }

  cplx operator()(double y) const {
    cplx z(1.0, y);
    cplx lg = 2.0 * (special::log_gamma(a0 + 0.5 * z) - lg_a0) +
              2.0 * (special::log_gamma(b0 + 0.5 * z) - lg_b0);
    cplx pr = poly4(0.5 + z) / den4;
    return std::exp(lg + z * z / Q - z * log_pi2x) * pr * pr / z / kTwoPi;
  }
};

double contour_halfwidth(double Q) { return 6.0 * std::sqrt(Q) + 12.0; }

}  // namespace

cplx v_weight(double x, double t, double delta, double Q, double abs_tol) {
  if (!(x > 0.0) || !(t > 0.0) || !(Q > 0.0))
    throw std::invalid_argument("v_weight needs x, t, Q > 0");
  VIntegrand f(t, delta, Q, std::log(kPi * kPi * x));
  double y0 = contour_halfwidth(Q);
  // seed panels sized to the oscillation e^{-i y log(pi^2 x)}
  double width = std::min(2.0, 10.0 * kPi / std::max(1.0, f.log_pi2x));
  std::vector<double> seed;
  for (double y = -y0; y < y0; y += width) seed.push_back(y);
  seed.push_back(y0);
  auto res = quad::integrate_adaptive_c([&](double y) { return f(y); }, -y0, y0,
                                        1e-12, abs_tol, 32, 16384, &seed);
  if (!res.converged) throw std::runtime_error("v_weight quadrature did not converge");
  return res.value;
}

double b_error_bound(double x, double t, double delta, double Q) {
  double xi = std::log(t * (t + delta) / (4.0 * kPi * kPi * x));
  double amp = delta * Q / (t * (t + delta)) + std::pow(Q, 1.5) / (t * t);
  return amp * std::exp(-Q * xi * xi / 8.0) + 1e-8;
}

std::pair<cplx, double> kappa_phi(double t, double delta) {
  if (!(t > 0.0) || !(t + delta > 0.0))
    throw std::invalid_argument("kappa_phi needs t > 0 and t + delta > 0");
  double th = special::rs_theta(t) - special::rs_theta(t + delta);
  cplx kappa = std::polar(1.0, 2.0 * th);
  double phi = t * std::log(t / (kTwoPi * M_E)) -
               (t + delta) * std::log((t + delta) / (kTwoPi * M_E));
  return {kappa, phi};
}

cplx window_mellin(cplx s, const Window& win, double delta) {
  double lo = std::max(1.0, win.support_lo() + delta / 2.0);
  double hi = win.support_hi() + delta / 2.0;
  if (hi <= lo) return 0.0;
  double ratio = 1.0 + std::min(0.25, kPi / (2.0 * (1.0 + std::abs(s.imag()))));
  auto brk = quad::geometric_breakpoints(lo, hi, ratio);
  return quad::integrate_panels_c(
      [&](double x) {
        return win.value(x - delta / 2.0) * std::exp((s - 1.0) * std::log(x));
      },
      brk, 16);
}

double g_window_fourier(double y, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("g_window_fourier needs c > 0");
  double u = c * y;
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

VWeightLine::VWeightLine(double t, double delta, double Q, double x_max,
                         double abs_tol) {
  if (!(x_max > 0.0)) throw std::invalid_argument("x_max > 0 required");
  VIntegrand f(t, delta, Q, 0.0);  // x-dependence folded in at eval time
  double y0 = contour_halfwidth(Q);
  double l_max = std::log(kPi * kPi * x_max);
  double width = std::min(1.5, 10.0 * kPi / std::max(1.0, l_max));
  for (int pass = 0; pass < 4; ++pass) {
    y_.clear();
    k_.clear();
    int panels = static_cast<int>(std::ceil(2.0 * y0 / width));
    const auto& xs = quad::gl_nodes(32);
    const auto& ws = quad::gl_weights(32);
    for (int pnl = 0; pnl < panels; ++pnl) {
      double a = -y0 + 2.0 * y0 * pnl / panels;
      double b = -y0 + 2.0 * y0 * (pnl + 1) / panels;
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i < 32; ++i) {
        double y = mid + half * xs[i];
        cplx k = ws[i] * half * f(y);
        if (std::abs(k) < abs_tol * 1e-5) continue;
        y_.push_back(y);
        k_.push_back(k);
      }
    }
    // probe against the adaptive evaluator at the worst-oscillation point
    cplx probe = eval(x_max);
    cplx ref = v_weight(x_max, t, delta, Q, abs_tol * 0.1);
    if (std::abs(probe - ref) <= abs_tol) return;
    width *= 0.5;
  }
  throw std::runtime_error("VWeightLine failed to reach requested accuracy");
}

cplx VWeightLine::eval(double x) const {
  double L = std::log(kPi * kPi * x);
  quad::KahanC acc;
  for (size_t i = 0; i < y_.size(); ++i)
    acc.add(k_[i] * std::polar(1.0, -y_[i] * L));
  return std::exp(-L) * acc.sum();
}

}  // namespace zeta4::smoothing
