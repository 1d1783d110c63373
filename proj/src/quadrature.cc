#include "zeta4/quadrature.hh"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace zeta4::quad {

namespace {

struct Rule {
  std::vector<double> x, w;
};

// Legendre P_n(x) and P_n'(x) by upward recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

Rule make_rule(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 60; ++it) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    auto [p, dp] = legendre(n, x);
    (void)p;
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  std::sort(r.x.begin(), r.x.end());
  // recompute weights in sorted order
  for (int i = 0; i < n; ++i) {
    auto [p, dp] = legendre(n, r.x[i]);
    (void)p;
    r.w[i] = 2.0 / ((1.0 - r.x[i] * r.x[i]) * dp * dp);
  }
  return r;
}

const Rule& rule(int n) {
  if (n < 2 || n > 64) throw std::invalid_argument("gauss-legendre order out of range");
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

cplx panel_c(const std::function<cplx(double)>& f, double a, double b, int n) {
  const Rule& r = rule(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  KahanC acc;
  for (int i = 0; i < n; ++i) acc.add(r.w[i] * f(mid + half * r.x[i]));
  return half * acc.sum();
}

}  // namespace

const std::vector<double>& gl_nodes(int n) { return rule(n).x; }
const std::vector<double>& gl_weights(int n) { return rule(n).w; }

cplx integrate_panels_c(const std::function<cplx(double)>& f,
                        const std::vector<double>& brk, int n) {
  if (brk.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  KahanC acc;
  for (size_t i = 0; i + 1 < brk.size(); ++i)
    acc.add(panel_c(f, brk[i], brk[i + 1], n));
  return acc.sum();
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& brk, int n) {
  return integrate_panels_c([&](double t) { return cplx(f(t), 0.0); }, brk, n)
      .real();
}

AdaptiveResult integrate_adaptive_c(const std::function<cplx(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol, int n, int max_panels,
                                    const std::vector<double>* seed) {
  struct Panel {
    double a, b, err;
    cplx val;
  };
  AdaptiveResult out;
  std::vector<Panel> panels;
  auto eval_panel = [&](double pa, double pb) {
    cplx coarse = panel_c(f, pa, pb, n);
    double m = 0.5 * (pa + pb);
    cplx fine = panel_c(f, pa, m, n) + panel_c(f, m, pb, n);
    out.n_evals += 3 * n;
    return Panel{pa, pb, std::abs(fine - coarse), fine};
  };
  std::vector<double> brk;
  if (seed && seed->size() >= 2)
    brk = *seed;
  else
    brk = {a, b};
  for (size_t i = 0; i + 1 < brk.size(); ++i)
    panels.push_back(eval_panel(brk[i], brk[i + 1]));

  for (;;) {
    cplx total{};
    double err = 0.0;
    for (const Panel& p : panels) {
      total += p.val;
      err += p.err;
    }
    out.value = total;
    out.err_estimate = err;
    out.panels = static_cast<int>(panels.size());
    if (err <= std::max(abs_tol, rel_tol * std::abs(total))) {
      out.converged = true;
      return out;
    }
    if (static_cast<int>(panels.size()) >= max_panels) return out;
    size_t worst = 0;
    for (size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[worst].err) worst = i;
    Panel p = panels[worst];
    double m = 0.5 * (p.a + p.b);
    panels[worst] = eval_panel(p.a, m);
    panels.insert(panels.begin() + worst + 1, eval_panel(m, p.b));
  }
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol,
                                  double abs_tol, int n, int max_panels,
                                  const std::vector<double>* seed) {
  return integrate_adaptive_c([&](double t) { return cplx(f(t), 0.0); }, a, b,
                              rel_tol, abs_tol, n, max_panels, seed);
}

std::vector<double> geometric_breakpoints(double a, double b, double ratio) {
  if (!(a > 0.0) || !(b > a) || !(ratio > 1.0))
    throw std::invalid_argument("geometric_breakpoints requires 0 < a < b, ratio > 1");
  std::vector<double> brk{a};
  for (double x = a * ratio; x < b; x *= ratio) brk.push_back(x);
  brk.push_back(b);
  return brk;
}

}  // namespace zeta4::quad
