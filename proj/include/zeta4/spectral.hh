#pragma once
// Spectral-side objects: ingestion and validation of Maass cusp-form data,
// the hypergeometric integral transforms attached to a smooth profile, the
// oscillatory weight that multiplies the discrete spectrum, and the continuous
// and discrete remainder terms they assemble into.
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeta4/smoothing.hh"

namespace zeta4::spectral {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Test-function profiles.

enum class ProfileKind { window_profile, explicit_grid };

// Profile U of the integral transforms.  Either a smoothing window reused as
// the profile or an explicit sampled grid (x_i, U(x_i)) with linear
// interpolation between samples and zero outside.  U must live on x > 0 and
// decay below 1e-12 at both ends of its declared support, so sharp-edged
// indicator windows are rejected up front.
struct TestFunction {
  ProfileKind kind = ProfileKind::window_profile;
  std::optional<smoothing::Window> window;              // window_profile
  std::vector<std::pair<double, double>> grid;          // explicit_grid

  double value(double x) const;
  double support_lo() const;
  double support_hi() const;
};

// Throws std::invalid_argument when the profile violates the contract above.
void check_test_function(const TestFunction& u);

// Conveniences used throughout the tests.
TestFunction bump_profile(double t1, double t2, double delta_w);
TestFunction grid_profile(std::vector<std::pair<double, double>> samples);

// ---------------------------------------------------------------------------
// Integral transforms.
//
//   Xi(z; U) = B(1/2+z, 1/2+z) Int_0^inf U(x) x^{-1/2-z}
//                 2F1(1/2+z, 1/2+z; 1+2z; -1/x) dx ,       Re z >= 0,
//   Theta(y; U) = (1/2) Re[ (1 + i/sinh(pi y)) Xi(iy; U) ] .
//
// Generic z integrates the hypergeometric factor adaptively.  Half-integer
// z = k - 1/2 (the holomorphic points) takes a real-arithmetic series fast
// path: after the Pfaff transformation the Gauss series runs in powers of
// 1/(1+x), so every term is positive and the ratio is at most 1/(1+x).

cplx xi_transform(cplx z, const TestFunction& u);

// Same transform for a raw profile on [lo, hi]; the TestFunction overload
// delegates here.  Needed for rescaled profiles that are not expressible as
// smoothing windows.
cplx xi_transform(cplx z, const std::function<double(double)>& u, double lo,
                  double hi);

// Even in y by construction (evaluated at |y|); y = 0 is excluded, the limit
// is exposed separately below.
double theta_transform(double y, const TestFunction& u);

// y -> 0 limit of Theta(y; U):  Xi(0;U)/2 - Xi_im'(0)/(2 pi), the derivative
// taken along the imaginary axis by Richardson extrapolation.
double theta_limit(const TestFunction& u);

// ---------------------------------------------------------------------------
// Oscillatory spectral weight.
//
//   nu_delta(y) = (1 + i/sinh(pi y)) chi(1/2 - iy + i delta)
//                 B(1/2+iy, 1/2+iy) Int_1^inf W(u - delta/2) u^{-1/2-iy} du.
//
// The 1/sinh pole at y = 0 is never evaluated: quadratures place nodes away
// from 0 and the +-y pairing keeps the paired combination bounded.

struct NuWeight {
  double delta = 0.0;
  smoothing::Window window;

  cplx eval(double y) const;  // y != 0
};

cplx nu_delta(double y, double delta, const smoothing::Window& window);

// Wide-shift variant of the same weight: the Mellin factor is replaced by
// Xi(iy; W1) of the rescaled profile W1(x) = sqrt(2 pi delta) W(delta x),
// and chi is taken at the same point 1/2 + i(delta - y).  The two variants
// agree only in overlapping asymptotic regimes and are intentionally not
// unified; requires delta > 0.
cplx nu_delta_rescaled(double y, double delta, const smoothing::Window& window);

// ---------------------------------------------------------------------------
// Continuous-spectrum remainder.
//
//   E_c = Re (1/pi) Int_{-ymax}^{ymax} |zeta(1/2+iy)|^4
//           zeta(1/2 + i delta - iy) zeta(1/2 + i delta + iy)
//           / |zeta(1+2iy)|^2 * conj(nu_delta(y))  dy .
//
// Evaluated in the folded form Int_0^{ymax} Z(y) [conj nu(y) + conj nu(-y)] dy
// (Z is even), which keeps the integrand bounded through y = 0 and makes the
// delta -> -delta symmetry exact up to rounding.

struct EcResult {
  double value = 0.0;             // Re part, divided by pi
  double imag_accumulator = 0.0;  // Im of the same two-sided integral
  double truncation_estimate = 0.0;  // tail beyond y_max from the local decay
  long n_zeta_evals = 0;
};

// y_max <= 1e4 (validated range of the zeta backend on the two lines used).
// Panel width is the Gauss-Legendre panel size in y; workers parallelize
// panel evaluation with a reduction order independent of the worker count.
// delta enters as |delta|: the decomposition is stated for delta >= 0 and
// extends to negative shifts by the conjugation symmetry of the moment, so
// the sign is a labeling choice and the integral is exactly even in delta.
EcResult ec_integral(double delta, const smoothing::Window& window,
                     double y_max, int workers = 1, double panel_width = 0.5);

// ---------------------------------------------------------------------------
// Discrete spectrum: ingested data, truncated Hecke series, remainder sum.

struct SpectralEntry {
  double kappa = 0.0;   // spectral parameter, > 0
  double alpha = 0.0;   // normalized spectral weight, > 0
  int parity = 1;       // +1 even, -1 odd
  double H_half = 0.0;  // central value H_j(1/2)
  std::vector<double> hecke;  // hecke[n-1] = t_j(n), 1 <= n <= n_coef
};

struct SpectralDataset {
  std::vector<SpectralEntry> entries;  // kappa strictly increasing
  int n_coef = 0;
  std::string source;
};

// Validates: kappa > 0 strictly increasing with the first entry within 0.01
// of 9.5337 (the lowest eigenvalue for the full modular group), alpha > 0,
// parity +-1, every Hecke vector of length n_coef with t_j(1) = 1 and
// |t_j(n)| <= d(n) n^{7/64 + 0.01}.  Throws std::runtime_error with the
// offending entry spelled out.
void check_dataset(const SpectralDataset& dataset);

// JSON text -> dataset (validated); `origin` labels error messages and the
// source field when the text carries none.  Layout:
//   {"source": ..., "n_coef": n, "entries": [{"kappa": ..., "alpha": ...,
//    "parity": +-1, "H_half": ..., "hecke": [t(1), ..., t(n)]}, ...]}
SpectralDataset parse_dataset_json(const std::string& text,
                                   const std::string& origin);
SpectralDataset load_dataset_json(const std::string& path);

// CSV alternative: header `kappa,alpha,parity,H_half`, one entry per row,
// with Hecke coefficients in sidecar files hecke_<row-index>.csv (one value
// per line, line n = t_j(n)) next to the main file.
SpectralDataset load_dataset_csv(const std::string& path);

// Truncated Hecke L-series
//   sum_r t_j(r) I(t_trunc / (2 pi r)) r^{-s},
// I the smoothed cutoff i_weight(., Q).  The weight truncates the sum near
// r = t_trunc/2pi; requires n_coef >= (t_trunc/2pi) e^{6/sqrt(Q)} so the
// discarded tail sits below the weight's noise floor (throws
// std::invalid_argument "insufficient coefficients" otherwise).
cplx truncated_l_series(const SpectralEntry& entry, cplx s, double t_trunc,
                        double q);

struct EdResult {
  double value = 0.0;
  bool coverage_warning = false;  // dataset stops before the weight decayed
  double nu_last_over_peak = 0.0;  // |nu(kappa_max)| / max_j |nu(kappa_j)|
};

// Discrete-spectrum remainder over the ingested data:
//   E_d = Re sum_j alpha_j H_j(1/2)^2 H_j(1/2 + i delta) conj(nu_delta(kappa_j)),
// with H_j(1/2 + i delta) replaced by truncated_l_series at
// t_trunc = kappa_j + |delta| (the series the exact value approximates; the
// substitution is the documented approximation, not an oversight).  Sets
// coverage_warning when |nu| at the last kappa still exceeds 1e-6 of its peak
// over the dataset, i.e. when the eigenvalue list ends before the weight has
// died off.
EdResult ed_sum(const SpectralDataset& dataset, double delta,
                const smoothing::Window& window, double q = 49.0);

}  // namespace zeta4::spectral
