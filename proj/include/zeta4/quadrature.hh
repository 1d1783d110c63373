#pragma once
// Gauss-Legendre panel quadrature: fixed composite rules over breakpoint
// lists and a deterministic worst-panel-first adaptive driver.
#include <complex>
#include <functional>
#include <vector>

namespace zeta4::quad {

using cplx = std::complex<double>;

// Nodes/weights of the n-point Gauss-Legendre rule on (-1, 1); n in [2, 64].
// Computed once per n by Newton iteration and cached.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

// Composite n-point rule over consecutive intervals [brk[i], brk[i+1]].
double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& brk, int n = 16);
cplx integrate_panels_c(const std::function<cplx(double)>& f,
                        const std::vector<double>& brk, int n = 16);

struct AdaptiveResult {
  cplx value{};
  double err_estimate = 0.0;   // sum of per-panel |GL_n - split GL_n|
  long n_evals = 0;
  bool converged = false;
  int panels = 0;
};

// Worst-panel-first bisection until err <= max(abs_tol, rel_tol * |value|)
// or max_panels is hit.  Deterministic: ties broken by panel position.
AdaptiveResult integrate_adaptive_c(const std::function<cplx(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol, int n = 16,
                                    int max_panels = 4096,
                                    const std::vector<double>* seed = nullptr);
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol,
                                  double abs_tol, int n = 16,
                                  int max_panels = 4096,
                                  const std::vector<double>* seed = nullptr);

// Geometrically spaced breakpoints a * ratio^k filling [a, b], ratio > 1.
std::vector<double> geometric_breakpoints(double a, double b, double ratio);

// Kahan-compensated accumulator.
struct Kahan {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c, t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double sum() const { return s; }
};

struct KahanC {
  Kahan re, im;
  void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
  cplx sum() const { return {re.sum(), im.sum()}; }
};

}  // namespace zeta4::quad
