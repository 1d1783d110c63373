#pragma once
// Second moment of the locally averaged |zeta|^2: the diagonal mean dbar
// (autocorrelation-weighted cubic), the off-diagonal mean odbar (kernel
// coefficients a_j), their assembly into a formula-side report, and a
// desk-scale empirical evaluator on a uniform grid.
#include <complex>
#include <functional>
#include <optional>
#include <string>

namespace zeta4::momofmom {

using cplx = std::complex<double>;

enum class KernelShape { indicator, smooth_exp };

// Even unit-mass averaging kernel g for the local average
// s(t) = int g(h) |zeta(1/2 + i(t+h))|^2 dh.
//   indicator:  g = 1_{[-c,c]} / (2c); autocorrelation transform
//               ghat(y/2pi)^2 = (sin(cy)/(cy))^2.
//   smooth_exp: g the Cauchy kernel of scale A*c (g(x) = c^{-1} g0(x/c)
//               with g0 of scale A), ghat(y/2pi) = e^{-A c |y|}.
struct AveragingKernel {
  KernelShape kind = KernelShape::indicator;
  double c = 3.14159265358979323846;  // half-width / length scale
  double A = 1.0;                     // smooth_exp decay rate

  double value(double x) const;             // g(x)
  double autocorr_fourier(double y) const;  // ghat(y/2pi)^2
};

struct MoMReport {
  double T = 0.0;
  AveragingKernel kernel;
  double dbar = 0.0;
  double odbar = 0.0;
  double formula_total = 0.0;  // T * (dbar + odbar) as stored
  std::optional<double> empirical;
  std::optional<double> a_constant;  // indicator kernels only
};

// Laplace transform int_0^inf ghat(y/2pi)^2 e^{-sy} dy of the indicator
// autocorrelation, in closed form with principal logs:
//   (pi/c) F(pi s / c),  F(w) = -(1/4pi^2) [(w+2pi i) log(w+2pi i)
//                               + (w-2pi i) log(w-2pi i) - 2 w log w].
// Requires Re s > 0, or Re s = 0 away from the branch points 0 and
// +-2ic (throws std::invalid_argument on or across a cut).
cplx laplace_ghat2_indicator(cplx s, double c);

// Diagonal mean: 2 int_0^N ghat(y/2pi)^2 P3(N-y) dy with N = log(T/2pi),
// by breakpoint-aware panel quadrature (half-periods of sinc^2 for the
// indicator, decay-scaled panels for smooth_exp).  A refined pass must
// agree to 1e-10 or std::runtime_error is thrown.  Requires T >= 100.
double dbar(double T, const AveragingKernel& kernel);

// The corollary closed forms for the same quantity (secondary route):
//   indicator:  (pi/c) P3(N) - P3'(N)(log(2cN)+gamma0)/c^2
//               + (3 b0 N^2 - 2 b2)/(2c^2) - b0/(4c^4) - b3/(c^2 N);
//   smooth_exp: 2 sum_{j=0..3} (-1)^j P3^(j)(N) / (2Ac)^{j+1}.
double dbar_closed_form(double T, const AveragingKernel& kernel);

// Off-diagonal mean: a0 (N+2 gamma0)^2 + 2 a1 (N+2 gamma0) + a2 with the
// kernel coefficients a_j of the autocorrelation g*g (box triangle for the
// indicator, Cauchy of scale 2Ac for smooth_exp).  Requires T >= 100.
double odbar(double T, const AveragingKernel& kernel);

// Size of the N^{-1} defect in the T-normalized formula for the indicator
// kernel, quoted in the half-width-pi normalization: b3 (pi/c)^2, where b3
// is the constant coefficient of the cubic P3.  (The raw N^{-1} term of the
// closed form is -b3/(c^2 N); the conventional quoted value ~0.46 at c = pi
// is b3 itself.)  Scales as c^{-2}.
double log_anomaly_constant(double c);
double log_anomaly_constant(const AveragingKernel& kernel);  // indicator only

// Formula-side report: dbar (quadrature route), odbar, total = T*(dbar+odbar);
// a_constant filled for indicator kernels.
MoMReport m22_formula(double T, const AveragingKernel& kernel);

// Desk-scale empirical second moment of the local average:
// |zeta(1/2+iu)|^2 sampled on a uniform grid over [-c-5, T+c+5] (step
// adjusted so the outer range [0, T] is an even number of steps), inner
// average by discrete convolution with g (lattice weights normalized to
// unit mass), outer trapezoid of s(t)^2 over [0, T].  A coarse pass on the
// stride-2 sublattice provides the step-halving estimate; if it moves the
// result by more than 1% a std::runtime_error is thrown (step too coarse).
// c = 0 is accepted here only, as the point-mass kernel (s = signal).
// Indicator kernels only: the smooth kernel's tails extend far beyond the
// sampled range.  Requires T <= 1e4 and grid_step <= 0.05.
// line_signal, if given, replaces |zeta(1/2+iu)|^2 (engine self-tests);
// err_estimate, if given, receives the halving estimate.
double m22_empirical(double T, const AveragingKernel& kernel,
                     double grid_step,
                     const std::function<double(double)>* line_signal = nullptr,
                     double* err_estimate = nullptr);

}  // namespace zeta4::momofmom
