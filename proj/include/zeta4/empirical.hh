#pragma once
// Oscillation-aware quadrature of |zeta|^4-type moment integrals, the
// empirical shifted fourth moment and its main-term counterpart, and the
// exact approximate-functional-equation identity check.
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "zeta4/shift.hh"
#include "zeta4/smoothing.hh"

namespace zeta4::empirical {

struct QuadratureSpec {
  double panel_width = 0.25;  // <= pi/log(T2/2pi): >= 2 panels per zero gap
  int nodes_per_panel = 16;   // one of {8, 16, 32}
  double tolerance = 1e-8;    // halving estimate <= tolerance * |result|
};

// Thrown when the panel-halving estimate misses the requested tolerance.
struct ToleranceError : std::runtime_error {
  double achieved;
  ToleranceError(const std::string& what, double estimate)
      : std::runtime_error(what), achieved(estimate) {}
};

// |zeta(1/2 + i(t+alpha))|^2 |zeta(1/2 + i(t+beta))|^2.  Critical-line
// evaluator; ordinates >= 2000 take the Riemann-Siegel path (remainder
// ~1e-7 there, far below the quadrature tolerances used at that scale).
double integrand(double t, const ShiftConfig& shift);

// Composite Gauss-Legendre over fixed-width panels with a panel-halving
// certificate; panels are independent work units mapped over `workers`
// threads (0 = hardware), summed in panel order so every worker count
// produces identical bits.
double panel_quadrature(const std::function<double(double)>& f, double a,
                        double b, const QuadratureSpec& spec, int workers = 0,
                        long* n_evals = nullptr);

// integral over [T1, T2] of integrand * (window value, if given).
double moment_quadrature(double T1, double T2, const ShiftConfig& shift,
                         const std::optional<smoothing::Window>& window,
                         const QuadratureSpec& spec, int workers = 0,
                         long* n_evals = nullptr);

// Main-term counterpart: integral of (window value) * q2(t; shift) dt over
// [T1, T2] through the same panel engine.
double main_term_quadrature(double T1, double T2, const ShiftConfig& shift,
                            const std::optional<smoothing::Window>& window,
                            int workers = 0, long* n_evals = nullptr);

// Exact weighted double-Dirichlet-series identity for
// |zeta(1/2+it) zeta(1/2-it-i delta)|^2: lhs evaluated directly, rhs as
// 2 Re sum_{nm <= M} d(n)d(m) (nm)^{-1/2} m^{i delta} (m/n)^{it} kappa(t)
// V_delta(nm, t) with M = t(t+delta)/(4 pi^2) * exp(cutoff_sigma/sqrt(Q)),
// summed in increasing nm with compensated accumulation.
struct AfeResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};
AfeResult afe_check(double t, const ShiftConfig& shift, double q,
                    double cutoff_sigma = 12.0);

struct MomentReport {
  double T1 = 0.0, T2 = 0.0;
  ShiftConfig shift;
  std::optional<smoothing::Window> window;
  double empirical = 0.0;
  double main_term = 0.0;
  double abs_diff = 0.0;  // |empirical - main_term| exactly as stored
  double rel_diff = 0.0;
  long n_evals = 0;
  double wall_seconds = 0.0;
};

// Evaluates both sides over the window's effective support (soft windows
// extend past [t1, t2]; the report's T1/T2 keep the nominal range).
MomentReport make_moment_report(const ShiftConfig& shift,
                                const smoothing::Window& window,
                                const QuadratureSpec& spec, int workers = 0);

}  // namespace zeta4::empirical
