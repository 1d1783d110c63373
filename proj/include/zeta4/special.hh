#pragma once
// Complex special functions: log-gamma, zeta (three evaluation schemes with
// automatic selection), the functional-equation factor chi, Riemann-Siegel
// theta, beta, Gauss 2F1 at negative argument, and Stieltjes constants.
#include <complex>
#include <vector>

namespace zeta4::special {

using cplx = std::complex<double>;

// log Gamma(s), asymptotic series after shifting Re s into the convergent
// regime.  Single-valued; the value is what matters downstream (every use
// exponentiates differences), Im is continuous along vertical lines with
// Re s > 0.  Throws std::domain_error at the poles s = 0, -1, -2, ...
cplx log_gamma(cplx s);

// Riemann-Siegel theta(t): continuous phase with zeta(1/2+it) = e^{-i theta} Z(t).
// Asymptotic series for |t| >= 20, log_gamma below.  Odd in t.
double rs_theta(double t);

// chi(s) = pi^{s-1/2} Gamma((1-s)/2) / Gamma(s/2); zeta(s) = chi(s) zeta(1-s).
// Returns 0 at s = 0, -2, -4, ...; throws std::domain_error at s = 1, 3, 5, ...
cplx chi(cplx s);

enum class ZetaMethod { automatic, euler_maclaurin, riemann_siegel, dirichlet_tail };

// zeta(s).  automatic: Riemann-Siegel (C0..C2 remainder) on the critical line
// for |t| >= rs_threshold(); Dirichlet series with Euler-Maclaurin tail for
// Re s >= 1.5 and small |t|; Euler-Maclaurin with N = max(30, ceil(2|t|)) and
// Bernoulli corrections through B12 elsewhere; reflection for Re s < -1.
// Throws std::domain_error at s = 1.
cplx zeta(cplx s, ZetaMethod method = ZetaMethod::automatic);

// Lowest |t| at which automatic selection uses Riemann-Siegel: chosen so the
// C0..C2 remainder stays below the 1e-10 accuracy target.
double rs_threshold();

// True when s lies in the validated accuracy region (critical line |t| <= 1e7,
// off the critical line |t| <= 1e4).  False signals degraded accuracy.
bool zeta_validated(cplx s);

// d^k/ds^k zeta(s) for k = 0..kmax (kmax <= 12), Euler-Maclaurin based.
// Valid away from s = 1; intended for moderate |Im s| (<= ~2e4).
std::vector<cplx> zeta_derivs(cplx s, int kmax);

// Euler beta B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b) via log_gamma.
cplx beta_fn(cplx a, cplx b);

// Gauss 2F1(a, b, c; -1/x) for x > 0: hypergeometric series for x >= 2,
// Euler integral (trigonometric substitution, geometric endpoint panels)
// for x < 2.  Requires Re b > 0, Re(c-b) > 0 on the integral path.
cplx hyp2f1_neg(cplx a, cplx b, cplx c, double x);

// Stieltjes constants gamma_0..gamma_{n_max} (n_max <= 8) from circle-contour
// Taylor coefficients of zeta(1+s) - 1/s; >= 12 correct digits.
std::vector<double> stieltjes(int n_max);

}  // namespace zeta4::special
