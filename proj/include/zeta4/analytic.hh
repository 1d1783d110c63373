#pragma once
// Residue/Laurent engine and the closed-form main terms: the diagonal and
// off-diagonal pieces of the shifted fourth moment, their entire combination,
// the cubic and quartic mean-value polynomials, and the kernel coefficients
// a_j entering the averaged second moment of |zeta|^2-moments.
#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "zeta4/shift.hh"

namespace zeta4::analytic {

using cplx = std::complex<double>;

// Finite Laurent expansion about a center: coeffs[k] multiplies
// (s - center)^{min_order + k}.
struct LaurentSeries {
  cplx center;
  int min_order = 0;
  std::vector<cplx> coeffs;

  cplx coeff(int order) const;  // 0 outside the stored range
  cplx residue() const { return coeff(-1); }
  cplx eval(cplx s) const;
};

// Circle-contour trapezoid (128 nodes) extracting coefficients of orders
// -pole_order .. -pole_order + n_coeffs - 1.  Re-extracts at radius/2 and
// requires 1e-9 relative agreement coefficient-by-coefficient; throws
// std::runtime_error on mismatch ("radius inconsistency").
LaurentSeries cauchy_coeffs(const std::function<cplx(cplx)>& f, cplx center,
                            int pole_order, int n_coeffs, double radius);

// Laurent coefficients (orders -4..+5) of zeta^4(1+s)/zeta(2+2s) about s=0.
const std::array<double, 10>& phi_coeffs();

// h(z, s) = e^{2 gamma_0 s}/zeta(2+2s) * [zeta(1+z+s) zeta(1-z+s)
//           - 2 s zeta(1+2s)/(s^2 - z^2)],
// total on |z| <= 10, |s| <= 1: the removable points s = 0, s = +-z (and the
// doubly-degenerate origin) evaluate through local Taylor models.
cplx h_offdiag(cplx z, cplx s);

// { h(z,0), d/du h(z,u)|_0, d^2/du^2 h(z,u)|_0 }.
std::array<cplx, 3> h_derivs(cplx z);

enum class PolyKind { P3, P4 };

struct MomentPolynomial {
  PolyKind kind;
  std::vector<double> coeffs;  // ascending powers
  double value(double x) const;
  double deriv(double x, int order) const;
};

// Cached: P3 = residue polynomial of zeta^4(1+s) e^{sx}/(zeta(2+2s)(1+s)),
// P4 = the zero-shift quartic moment density in log(t/2pi).
const MomentPolynomial& moment_polynomial(PolyKind kind);

// Diagonal term: 2 Re of the residues at s = 0 and s = i delta of
// zeta^4(1+s) (t/2pi)^s / (zeta(2+2s)(s - i delta)).  The s=0 residue comes
// from cauchy_coeffs at radius min(0.25, |delta|/2).  Throws
// std::domain_error for |delta| < 1e-6 (use q2_eval: the split is
// catastrophically ill-conditioned there).
double diag_term(double t, const ShiftConfig& sh);

// Off-diagonal term: d^2/ds1 ds2 of h(i delta, s1+s2) A1^{s1} A2^{s2} at 0,
// A_i = (t + shift_i)/(2pi), expanded through h_derivs.
double offdiag_term(double t, const ShiftConfig& sh);

// Full shifted main-term density Q2(t; alpha, beta).  Split evaluation for
// |delta| >= 0.05; below that the diagonal residue pair is re-expanded as the
// entire power series in i*delta (exact rearrangement), which stays
// well-conditioned through delta = 0.
double q2_eval(double t, const ShiftConfig& sh);

// Contour-extraction oracle: res_{w=0} w^{-1} F(w, t) of the entire
// combination evaluated in split form on |w| = 0.2.  Slow; test use.
double q2_center_oracle(double t);

enum class KernelKind { box, poisson };

// Integrand of the kernel coefficients:
//   D_j(t) = d^j/ds^j [h(it,s) e^{-2 gamma0 s} / (1+s)] at s = 0, j = 0..2
// (even in t).  The e^{-2 gamma0 s} cancels the like factor inside h: the
// height integral of (t/2pi)^s over [0,T] is T e^{sN}/(1+s) with
// N = log(T/2pi), and regrouping e^{sN} = e^{-2 gamma0 s} e^{sM} in powers
// of M = N + 2 gamma0 pins this combination as the integrand.  Its mean
// over t is exactly d^j/ds^j [1/(1+s)]_0 = {1, -1, 2}.  For t >= 2 the
// zeta pair is evaluated through one shared local Taylor model of zeta
// about 1+it with a two-radius consistency check; below that it reduces
// to cauchy_coeffs on h_offdiag.
std::array<double, 3> a_integrand(double t);

// Kernel coefficients a_j, j = 0..2: the (g*g)-weighted integrals of
// a_integrand, so a_j -> {1, -1, 2} as the kernel widens.  box:
// g = 1_{[-c,c]}/(2c), so g*g is the triangle kernel on |t| <= 2c;
// poisson: g the Cauchy kernel of scale c (g*g of scale 2c,
// decay-truncated).  Cached per (kind, c).
double a_coeff(KernelKind kind, double c, int j);

}  // namespace zeta4::analytic
