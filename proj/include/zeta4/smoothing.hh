#pragma once
// Averaging windows, smoothed cutoff weights (erf form, Mellin-contour form,
// and the cached fixed-node contour evaluator), the unimodular phase factor
// of the functional equation, and window Mellin transforms.
#include <complex>
#include <utility>
#include <vector>

namespace zeta4::smoothing {

using cplx = std::complex<double>;

enum class WindowKind { indicator, gaussian_conv, bump };

// Weight over a t-range [t1, t2].  gaussian_conv: indicator convolved with a
// Gaussian of width delta_w (erf closed form).  bump: C^infty ramps of width
// delta_w inside the interval.  indicator: sharp.
struct Window {
  WindowKind kind = WindowKind::gaussian_conv;
  double t1 = 0.0;
  double t2 = 0.0;
  double delta_w = 0.0;

  double value(double t) const;
  // order >= 1; exact for gaussian_conv (Hermite form), finite differences
  // for bump (convenience accuracy ~1e-6); throws for indicator.
  double deriv(double t, int order) const;
  double mass() const;        // integral over the real line
  double support_lo() const;  // effective support (tails below ~1e-22)
  double support_hi() const;
};

// Smoothed step I(w) = (1 + erf((sqrt(Q)/2) log w)) / 2; I(0) = 0.
double i_weight(double w, double Q);

// I evaluated on the moment scale: xi = log(t (t+delta) / (4 pi^2 x)),
// J = (1 + erf((sqrt(Q)/2) xi)) / 2.
double j_weight(double x, double t, double delta, double Q);

// Mellin-contour cutoff V_delta(x, t): (1/2 pi i) integral over Re z = 1 of
// (pi^2 x)^{-z} Y_delta(1/2 + z; t)/Y_delta(1/2; t) e^{z^2/Q} dz/z, where
// Y_delta = (Gamma-square pair) * (polynomial pair).  Adaptive quadrature.
cplx v_weight(double x, double t, double delta, double Q, double abs_tol = 1e-10);

// Envelope for |V - J|: (delta Q / (t(t+delta)) + Q^{ 3/2 }/t^2) e^{-Q xi^2/8} + 1e-8.
double b_error_bound(double x, double t, double delta, double Q);

// kappa = chi(1/2 - it) chi(1/2 + i(t+delta)) (unimodular) and the phase
// phi = t log(t/(2 pi e)) - (t+delta) log((t+delta)/(2 pi e)); kappa = e^{i 2(theta(t)-theta(t+delta))}.
std::pair<cplx, double> kappa_phi(double t, double delta);

// Mellin transform integral_1^inf W(x - delta/2) x^{s-1} dx with oscillation-
// aware geometric panels; relative accuracy ~1e-10.
cplx window_mellin(cplx s, const Window& win, double delta);

// Fourier transform of the box kernel g = 1_{|x| <= c} / (2c) at frequency
// y/(2 pi): sin(c y)/(c y).
double g_window_fourier(double y, double c);

// Fixed-node evaluator of v_weight for many x at one (t, delta, Q): caches
// per-node contour factors; eval cost is one complex exponential per node.
class VWeightLine {
 public:
  VWeightLine(double t, double delta, double Q, double x_max,
              double abs_tol = 1e-10);
  cplx eval(double x) const;
  int nodes() const { return static_cast<int>(y_.size()); }

 private:
  std::vector<double> y_;
  std::vector<cplx> k_;
};

}  // namespace zeta4::smoothing
