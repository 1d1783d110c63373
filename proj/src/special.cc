#include "zeta4/special.hh"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "zeta4/quadrature.hh"

namespace zeta4::special {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kLogPi = 1.1447298858494001741;

// Bernoulli numbers B_2..B_18.
constexpr double kB[10] = {1.0,
                           1.0 / 6.0,
                           -1.0 / 30.0,
                           1.0 / 42.0,
                           -1.0 / 30.0,
                           5.0 / 66.0,
                           -691.0 / 2730.0,
                           7.0 / 6.0,
                           -3617.0 / 510.0,
                           43867.0 / 798.0};

// Stirling series coefficients a_j = B_2j / (2j (2j-1)).
constexpr double kStirling[10] = {0.0,
                                  1.0 / 12.0,
                                  -1.0 / 360.0,
                                  1.0 / 1260.0,
                                  -1.0 / 1680.0,
                                  1.0 / 1188.0,
                                  -691.0 / 360360.0,
                                  1.0 / 156.0,
                                  -3617.0 / 122400.0,
                                  43867.0 / 244188.0};

bool near_nonpositive_integer(cplx s, double tol = 1e-12) {
  if (s.real() > 0.5) return false;
  double r = std::round(s.real());
  return r <= 0.5 && std::abs(s.real() - r) < tol && std::abs(s.imag()) < tol;
}

// Cached natural logs of small integers (read-only after first use).
const std::vector<double>& log_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(70001, 0.0);
    for (size_t n = 1; n < t.size(); ++n) t[n] = std::log(double(n));
    return t;
  }();
  return table;
}

inline double log_int(long n) {
  const auto& t = log_table();
  return n < static_cast<long>(t.size()) ? t[n] : std::log(double(n));
}

// ------------------------------------------------------------ log gamma

cplx log_gamma_impl(cplx s) {
  if (near_nonpositive_integer(s)) throw std::domain_error("log_gamma pole");
  if (s.real() < -0.5) {
    // reflection: the asymptotic series degrades near the negative axis
    cplx ls;  // log sin(pi s); branch irrelevant downstream (exponentiated)
    if (std::abs(s.imag()) > 8.0) {
      cplx z = kPi * s;
      ls = (s.imag() > 0) ? cplx(0, 1) * (-z) + std::log(cplx(0, 0.5))
                          : cplx(0, 1) * z + std::log(cplx(0, -0.5));
    } else {
      ls = std::log(std::sin(kPi * s));
    }
    return kLogPi - ls - log_gamma_impl(1.0 - s);
  }
  cplx acc = 0.0;
  cplx w = s;
  while (w.real() < 12.0 && std::abs(w) < 25.0) {
    acc -= std::log(w);
    w += 1.0;
  }
  cplx iw = 1.0 / w;
  cplx iw2 = iw * iw;
  cplx series = 0.0;
  cplx p = iw;
  for (int j = 1; j <= 9; ++j) {
    series += kStirling[j] * p;
    p *= iw2;
  }
  cplx half_log_2pi = 0.91893853320467274178;
  return acc + (w - 0.5) * std::log(w) - w + half_log_2pi + series;
}

// ------------------------------------------------- Euler-Maclaurin zeta

int em_terms(double abs_t) {
  double n = std::max(30.0, std::ceil(2.0 * abs_t));
  return static_cast<int>(std::min(n, 3.0e5));
}

cplx zeta_em(cplx s, int N) {
  quad::KahanC acc;
  double sig = s.real(), t = s.imag();
  for (long n = 1; n < N; ++n) {
    double ln = log_int(n);
    acc.add(std::polar(std::exp(-sig * ln), -t * ln));
  }
  double lnN = log_int(N);
  cplx Ns = std::polar(std::exp(-sig * lnN), -t * lnN);  // N^{-s}
  cplx sum = acc.sum() + Ns * (double(N) / (s - 1.0)) + 0.5 * Ns;
  // Bernoulli tail: sum_j B_2j/(2j)! (s)_{2j-1} N^{1-s-2j}
  cplx NsN = Ns / double(N);  // N^{-s-1}
  cplx rising = s;            // (s)_1
  double fact = 2.0;          // (2j)!
  cplx tail = 0.0;
  for (int j = 1; j <= 6; ++j) {
    tail += kB[j] / fact * rising * NsN;
    rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
    fact *= (2 * j + 1) * (2 * j + 2);
    NsN /= double(N) * double(N);
  }
  return sum + tail;
}

// ------------------------------------------------------- Riemann-Siegel

// Chebyshev models on p in [0,1] of the entire function
// psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) and derivatives 0..6,
// built once from Cauchy circles with half-offset nodes (no node touches the
// real axis, where the removable zeros of the denominator live).
struct PsiModels {
  static constexpr int kDeg = 64;
  std::array<std::array<double, kDeg>, 7> cheb{};
};

cplx psi_fn(cplx w) {
  cplx arg = kTwoPi * (w * w - w - cplx(1.0 / 16.0));
  return std::cos(arg) / std::cos(kTwoPi * w);
}

const PsiModels& psi_models() {
  static const PsiModels models = [] {
    PsiModels m;
    constexpr int M = 64;      // Cauchy nodes
    constexpr double r = 0.37; // circle radius
    constexpr int N = PsiModels::kDeg;
    std::array<std::array<double, N>, 7> vals{};
    for (int i = 0; i < N; ++i) {
      double x = std::cos(kPi * (i + 0.5) / N);  // Chebyshev point in (-1,1)
      double p = 0.5 + 0.5 * x;
      std::array<cplx, M> f;
      for (int k = 0; k < M; ++k) {
        double th = kTwoPi * (k + 0.5) / M;
        f[k] = psi_fn(p + r * std::polar(1.0, th));
      }
      double fact = 1.0, rj = 1.0;
      for (int j = 0; j <= 6; ++j) {
        cplx c = 0.0;
        for (int k = 0; k < M; ++k) {
          double th = kTwoPi * (k + 0.5) / M;
          c += f[k] * std::polar(1.0, -j * th);
        }
        vals[j][i] = (c / double(M)).real() * fact / rj;
        fact *= (j + 1.0);
        rj *= r;
      }
    }
    for (int j = 0; j <= 6; ++j) {
      for (int mdeg = 0; mdeg < N; ++mdeg) {
        double a = 0.0;
        for (int i = 0; i < N; ++i)
          a += vals[j][i] * std::cos(kPi * mdeg * (i + 0.5) / N);
        m.cheb[j][mdeg] = 2.0 / N * a;
      }
    }
    return m;
  }();
  return models;
}

double psi_deriv(int j, double p) {
  const auto& a = psi_models().cheb[j];
  double x = 2.0 * p - 1.0;
  double b1 = 0.0, b2 = 0.0;
  for (int k = PsiModels::kDeg - 1; k >= 1; --k) {
    double b0 = 2.0 * x * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + 0.5 * a[0];
}

double rs_z(double t) {
  double tau = t / kTwoPi;
  double rtau = std::sqrt(tau);
  long N = static_cast<long>(rtau);
  double p = rtau - double(N);
  double th = rs_theta(t);
  quad::Kahan acc;
  for (long n = 1; n <= N; ++n)
    acc.add(std::cos(th - t * log_int(n)) / std::sqrt(double(n)));
  double c0 = psi_deriv(0, p);
  double c1 = -psi_deriv(3, p) / (96.0 * kPi * kPi);
  double c2 = psi_deriv(2, p) / (64.0 * kPi * kPi) +
              psi_deriv(6, p) / (18432.0 * kPi * kPi * kPi * kPi);
  double sign = (N % 2 == 1) ? 1.0 : -1.0;
  double corr = sign * std::pow(tau, -0.25) * (c0 + c1 / rtau + c2 / tau);
  return 2.0 * acc.sum() + corr;
}

cplx zeta_rs(double t) {
  double at = std::abs(t);
  cplx v = std::polar(rs_z(at), -rs_theta(at));
  return t >= 0 ? v : std::conj(v);
}

}  // namespace

cplx log_gamma(cplx s) { return log_gamma_impl(s); }

double rs_theta(double t) {
  if (t < 0) return -rs_theta(-t);
  if (t >= 20.0) {
    double u = t / kTwoPi;
    return 0.5 * t * std::log(u) - 0.5 * t - kPi / 8 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t * t) + 31.0 / (80640.0 * std::pow(t, 5)) +
           127.0 / (430080.0 * std::pow(t, 7));
  }
  return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * kLogPi;
}

cplx chi(cplx s) {
  // zeros where Gamma(s/2) has poles
  if (near_nonpositive_integer(0.5 * s)) return 0.0;
  if (near_nonpositive_integer(0.5 * (1.0 - s)))
    throw std::domain_error("chi pole at odd positive integers");
  return std::exp((s - 0.5) * kLogPi + log_gamma(0.5 * (1.0 - s)) -
                  log_gamma(0.5 * s));
}

double rs_threshold() { return 3.0e4; }

cplx zeta(cplx s, ZetaMethod method) {
  if (std::abs(s - 1.0) < 1e-10) throw std::domain_error("zeta pole at s = 1");
  double sig = s.real(), t = s.imag();
  switch (method) {
    case ZetaMethod::riemann_siegel:
      if (std::abs(sig - 0.5) > 1e-12 || std::abs(t) < 20.0)
        throw std::domain_error(
            "riemann_siegel requires the critical line and |t| >= 20");
      return zeta_rs(t);
    case ZetaMethod::dirichlet_tail:
      // Short-series tail corrections blow up like |s|^13 / 30^{Re s + 13}.
      if (sig < 1.5 || std::abs(t) > 30.0)
        throw std::domain_error("dirichlet_tail requires Re s >= 1.5, |Im s| <= 30");
      return zeta_em(s, 30);
    case ZetaMethod::euler_maclaurin:
      return zeta_em(s, em_terms(std::abs(t)));
    case ZetaMethod::automatic:
      break;
  }
  if (std::abs(sig - 0.5) < 1e-14 && std::abs(t) >= rs_threshold())
    return zeta_rs(t);
  if (sig >= 1.5 && std::abs(t) <= 30.0) return zeta_em(s, 30);
  if (sig >= -1.0) return zeta_em(s, em_terms(std::abs(t)));
  return chi(s) * zeta(1.0 - s, ZetaMethod::automatic);
}

bool zeta_validated(cplx s) {
  double t = std::abs(s.imag());
  if (std::abs(s.real() - 0.5) < 1e-14) return t <= 1.0e7;
  return t <= 1.0e4;
}

std::vector<cplx> zeta_derivs(cplx s, int kmax) {
  if (kmax < 0 || kmax > 12) throw std::invalid_argument("kmax in [0, 12]");
  if (std::abs(s - 1.0) < 1e-10) throw std::domain_error("zeta pole at s = 1");
  int N = std::max(64, em_terms(std::abs(s.imag())));
  double sig = s.real(), t = s.imag();
  std::vector<quad::KahanC> acc(kmax + 1);
  for (long n = 1; n < N; ++n) {
    double ln = log_int(n);
    cplx base = std::polar(std::exp(-sig * ln), -t * ln);
    double lp = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      acc[k].add(lp * base);
      lp *= -ln;
    }
  }
  double lnN = log_int(N);
  cplx Ns = std::polar(std::exp(-sig * lnN), -t * lnN);
  // binomial table
  std::array<std::array<double, 13>, 13> C{};
  for (int k = 0; k <= 12; ++k) {
    C[k][0] = C[k][k] = 1.0;
    for (int i = 1; i < k; ++i) C[k][i] = C[k - 1][i - 1] + C[k - 1][i];
  }
  // rising factorial polynomials (s)_{2j-1} as coefficient arrays
  std::array<std::vector<double>, 7> P;
  P[0] = {1.0};
  for (int j = 1; j <= 6; ++j) {
    // (s)_{2j-1} = (s)_{2j-3} * (s + 2j-3)(s + 2j-2)
    std::vector<double> q = (j == 1) ? std::vector<double>{0.0, 1.0}  // s
                                     : P[j - 1];
    if (j > 1) {
      for (double a : {double(2 * j - 3), double(2 * j - 2)}) {
        std::vector<double> nq(q.size() + 1, 0.0);
        for (size_t i = 0; i < q.size(); ++i) {
          nq[i] += q[i] * a;
          nq[i + 1] += q[i];
        }
        q = nq;
      }
    }
    P[j] = q;
  }
  auto poly_deriv_at = [](const std::vector<double>& p, int order, cplx x) {
    // order-th derivative of the polynomial with ascending coefficients p
    cplx v = 0.0, xp = 1.0;
    for (size_t i = order; i < p.size(); ++i) {
      double fac = 1.0;
      for (int q = 0; q < order; ++q) fac *= double(i - q);
      v += fac * p[i] * xp;
      xp *= x;
    }
    return v;
  };
  std::vector<cplx> out(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    cplx v = acc[k].sum();
    // d^k [ N^{1-s}/(s-1) ]
    cplx term = 0.0;
    for (int i = 0; i <= k; ++i) {
      double sgn = (i % 2 == 0) ? 1.0 : -1.0;
      double fct = 1.0;
      for (int q = 1; q <= i; ++q) fct *= q;
      term += C[k][i] * std::pow(-lnN, k - i) * sgn * fct /
              std::pow(s - 1.0, i + 1);
    }
    v += double(N) * Ns * term;
    // d^k [ N^{-s}/2 ]
    v += 0.5 * Ns * std::pow(-lnN, k);
    // Bernoulli corrections
    double fact = 2.0;
    cplx Npow = Ns / double(N);
    for (int j = 1; j <= 6; ++j) {
      cplx inner = 0.0;
      for (int i = 0; i <= k; ++i)
        inner += C[k][i] * std::pow(-lnN, k - i) * poly_deriv_at(P[j], i, s);
      v += kB[j] / fact * Npow * inner;
      fact *= (2 * j + 1) * (2 * j + 2);
      Npow /= double(N) * double(N);
    }
    out[k] = v;
  }
  return out;
}

cplx beta_fn(cplx a, cplx b) {
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

cplx hyp2f1_neg(cplx a, cplx b, cplx c, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("hyp2f1_neg requires x > 0");
  if (x >= 2.0) {
    cplx term = 1.0, sum = 1.0;
    for (int j = 0; j < 500; ++j) {
      term *= (a + double(j)) * (b + double(j)) /
              ((c + double(j)) * double(j + 1)) * (-1.0 / x);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum) && j > 3) return sum;
    }
    return sum;
  }
  // Euler integral with w = sin^2(theta):
  // 2F1 = Gamma(c)/(Gamma(b)Gamma(c-b)) * I,
  // I = 2 int_0^{pi/2} sin^{2b-1} cos^{2(c-b)-1} (1 + sin^2/x)^{-a} dtheta
  cplx bb = b, cb = c - b;
  if (bb.real() <= 0.0 || cb.real() <= 0.0)
    throw std::domain_error("hyp2f1_neg integral path needs Re b, Re(c-b) > 0");
  auto g = [&](double th) {
    double sn = std::sin(th), cs = std::cos(th);
    return 2.0 * std::exp((2.0 * bb - 1.0) * std::log(sn) +
                          (2.0 * cb - 1.0) * std::log(cs) -
                          a * std::log1p(sn * sn / x));
  };
  const double h0 = 1e-13;
  double nu = std::max({std::abs(bb.imag()), std::abs(cb.imag()), 1.0});
  int nsub = 1 + static_cast<int>(0.3 * nu);
  const auto& xs = quad::gl_nodes(16);
  const auto& ws = quad::gl_weights(16);
  quad::KahanC acc;
  auto add_octaves = [&](bool left) {
    for (double lo = h0; lo < kPi / 4 - 1e-15; lo *= 2.0) {
      double hi = std::min(2.0 * lo, kPi / 4);
      double step = (hi - lo) / nsub;
      for (int ss = 0; ss < nsub; ++ss) {
        double pa = lo + ss * step, pb = pa + step;
        double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
        for (int i = 0; i < 16; ++i) {
          double th = mid + half * xs[i];
          double point = left ? th : kPi / 2 - th;
          acc.add(ws[i] * half * g(point));
        }
      }
    }
  };
  add_octaves(true);
  add_octaves(false);
  // analytic heads on [0, h0] at both endpoints
  cplx head0 = std::exp(2.0 * bb * std::log(h0)) / bb;
  cplx head1 = std::exp(2.0 * cb * std::log(h0)) / cb *
               std::exp(-a * std::log1p(1.0 / x));
  cplx I = acc.sum() + head0 + head1;
  return std::exp(log_gamma(c) - log_gamma(b) - log_gamma(c - b)) * I;
}

std::vector<double> stieltjes(int n_max) {
  if (n_max < 0 || n_max > 8) throw std::invalid_argument("n_max in [0, 8]");
  static const std::vector<double> all = [] {
    auto compute = [](double r) {
      constexpr int M = 64;
      std::vector<double> g(9);
      std::array<cplx, M> f;
      for (int k = 0; k < M; ++k) {
        cplx s = r * std::polar(1.0, kTwoPi * (k + 0.5) / M);
        // Full zeta (with reflection): fixed-N Euler-Maclaurin alone degrades
        // to ~1e-11 near Re(1+s) = -5 on the outer circle.
        f[k] = zeta(1.0 + s) - 1.0 / s;
      }
      double fact = 1.0, rn = 1.0;
      for (int n = 0; n <= 8; ++n) {
        cplx c = 0.0;
        for (int k = 0; k < M; ++k)
          c += f[k] * std::polar(1.0, -kTwoPi * (k + 0.5) * n / M);
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        g[n] = sign * fact * (c / double(M)).real() / rn;
        fact *= (n + 1.0);
        rn *= r;
      }
      return g;
    };
    auto g6 = compute(6.0), g4 = compute(4.0);
    for (int n = 0; n <= 8; ++n)
      if (std::abs(g6[n] - g4[n]) > 1e-12 * std::max(1.0, std::abs(g6[n])))
        throw std::runtime_error("stieltjes radius cross-check failed");
    return g6;
  }();
  return {all.begin(), all.begin() + n_max + 1};
}

}  // namespace zeta4::special
