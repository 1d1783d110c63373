#include "zeta4/divisor.hh"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <stdexcept>

#include "zeta4/analytic.hh"
#include "zeta4/quadrature.hh"
#include "zeta4/special.hh"

namespace zeta4::divisor {
namespace {

using cplx = std::complex<double>;

// Memory budget: 4 bytes per entry, 800 MB at the cap.
constexpr std::int64_t kSieveCap = 200'000'000;

double gamma0() {
  static const double g = special::stieltjes(0)[0];
  return g;
}

// zeta and its first two derivatives at 2, by the differentiated
// Euler-Maclaurin tail sum; computed once.
const std::array<double, 3>& zeta2_derivs() {
  static const std::array<double, 3> z = [] {
    auto v = special::zeta_derivs(cplx(2.0, 0.0), 2);
    return std::array<double, 3>{v[0].real(), v[1].real(), v[2].real()};
  }();
  return z;
}

struct Factorization {
  std::vector<std::int64_t> primes;
  std::vector<int> exps;
};

Factorization factorize(std::int64_t r) {
  Factorization f;
  for (std::int64_t p = 2; p * p <= r; p += (p == 2) ? 1 : 2) {
    if (r % p) continue;
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    f.primes.push_back(p);
    f.exps.push_back(e);
  }
  if (r > 1) {
    f.primes.push_back(r);
    f.exps.push_back(1);
  }
  return f;
}

std::vector<double> divisor_list(std::int64_t r) {
  auto f = factorize(r);
  std::vector<double> divs{1.0};
  for (std::size_t i = 0; i < f.primes.size(); ++i) {
    const std::size_t base = divs.size();
    double pk = 1.0;
    for (int e = 1; e <= f.exps[i]; ++e) {
      pk *= double(f.primes[i]);
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  return divs;
}

// Per-r constants of the expanded density: F(h) = sigma_{1+2h}(r)/zeta(2+2h)
// evaluated with its first two h-derivatives at 0, plus the shift constant.
struct DensityConsts {
  double F0, Fp, Fpp, c;
};

DensityConsts density_consts(std::int64_t r) {
  const auto& z = zeta2_derivs();
  const double z2 = z[0], zp = z[1], zpp = z[2];
  double s0 = 0, s1 = 0, s2 = 0;
  for (double d : divisor_list(r)) {
    const double l = std::log(d);
    s0 += d;
    s1 += d * l;
    s2 += d * l * l;
  }
  DensityConsts k{};
  k.F0 = s0 / z2;
  k.Fp = 2 * s1 / z2 - 2 * s0 * zp / (z2 * z2);
  k.Fpp = 4 * s2 / z2 - 8 * s1 * zp / (z2 * z2) +
          s0 * (-4 * zpp / (z2 * z2) + 8 * zp * zp / (z2 * z2 * z2));
  k.c = 2 * gamma0() - std::log(double(r));
  return k;
}

double density_eval(double x, const DensityConsts& k) {
  const double u = std::log(x);
  const double v = std::log1p(x);
  return k.F0 * (u * v + (u + v) * k.c + k.c * k.c) +
         (u + v + 2 * k.c) * k.Fp + k.Fpp;
}

// int_2^b of the density: composite Gauss-Legendre over geometric panels,
// certified by a panel-doubling comparison.
double density_integral(double b, const DensityConsts& k) {
  auto f = [&k](double x) { return density_eval(x, k); };
  auto brk = [&](double ratio) {
    std::vector<double> pts{2.0};
    for (double p = 2.0 * ratio; p < b; p *= ratio) pts.push_back(p);
    pts.push_back(b);
    return pts;
  };
  const double coarse = quad::integrate_panels(f, brk(4.0), 32);
  const double fine = quad::integrate_panels(f, brk(2.0), 32);
  if (std::abs(coarse - fine) > 1e-9 * (1.0 + std::abs(fine)))
    throw std::runtime_error("correlation_report: quadrature failure");
  return fine;
}

CorrelationRecord make_record(std::int64_t X, std::int64_t r,
                              const DivisorTable& table) {
  CorrelationRecord rec;
  rec.X = X;
  rec.r = r;
  rec.sum = correlation_sum(X, r, table);
  // Exact boundary where the density's 1 + O(1/x) form is unreliable:
  // n <= 2r, i.e. x = n/r <= 2; the density integral covers x in [2, X/r].
  const std::int64_t cut = std::min(X, 2 * r);
  double main = 0.0;
  for (std::int64_t n = 1; n <= cut; ++n)
    main += double(table(n)) * double(table(n + r));
  if (X > 2 * r) main += density_integral(double(X) / double(r), density_consts(r));
  rec.main = main;
  rec.error = double(rec.sum) - main;
  rec.normalized_error = rec.error / std::cbrt(double(X) * double(X));
  return rec;
}

void append_real(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  out += buf;
}

}  // namespace

DivisorTable sieve_divisors(std::int64_t N) {
  if (N < 1 || N > kSieveCap)
    throw std::length_error("sieve_divisors: N outside capacity budget");
  DivisorTable t;
  t.N = N;
  t.d.assign(std::size_t(N) + 1, 0);
  for (std::int64_t k = 1; k <= N; ++k)
    for (std::int64_t m = k; m <= N; m += k) ++t.d[std::size_t(m)];
  return t;
}

cplx sigma_z(std::int64_t r, cplx z, int log_power) {
  if (r < 1 || r > 1'000'000'000)
    throw std::invalid_argument("sigma_z: r outside [1, 1e9]");
  if (log_power < 0) throw std::invalid_argument("sigma_z: negative log power");
  quad::KahanC acc;
  for (double d : divisor_list(r)) {
    const double l = std::log(d);
    cplx term = std::exp(z * l);
    for (int j = 0; j < log_power; ++j) term *= l;
    acc.add(term);
  }
  return acc.sum();
}

std::int64_t correlation_sum(std::int64_t X, std::int64_t r,
                             const DivisorTable& table) {
  if (r < 1) throw std::invalid_argument("correlation_sum: r must be >= 1");
  if (X < 0) throw std::invalid_argument("correlation_sum: X must be >= 0");
  if (X + r > table.N)
    throw std::out_of_range("correlation_sum: X + r exceeds table size");
  __int128 acc = 0;
  for (std::int64_t n = 1; n <= X; ++n)
    acc += __int128(table(n)) * __int128(table(n + r));
  if (acc > __int128(std::numeric_limits<std::int64_t>::max()))
    throw std::overflow_error("correlation_sum: result exceeds 64 bits");
  return std::int64_t(acc);
}

double motohashi_main_density(double x, std::int64_t r) {
  if (!(x >= 2.0))
    throw std::invalid_argument("motohashi_main_density: x must be >= 2");
  if (r < 1) throw std::invalid_argument("motohashi_main_density: r >= 1");
  return density_eval(x, density_consts(r));
}

double motohashi_main_density_contour(double x, std::int64_t r) {
  if (!(x >= 2.0))
    throw std::invalid_argument("motohashi_main_density: x must be >= 2");
  if (r < 1) throw std::invalid_argument("motohashi_main_density: r >= 1");
  const auto divs = divisor_list(r);
  const double z2 = zeta2_derivs()[0];
  double s1 = 0;
  for (double d : divs) s1 += d;
  const double lx = std::log(x), l1x = std::log1p(x), lr = std::log(double(r));
  auto family = [&](cplx h) {
    cplx sp = 0, sm = 0;  // sigma_{1 +/- 2h}(r)
    for (double d : divs) {
      const double l = std::log(d);
      sp += std::exp((1.0 + 2.0 * h) * l);
      sm += std::exp((1.0 - 2.0 * h) * l);
    }
    const cplx zp = special::zeta(1.0 + h), zm = special::zeta(1.0 - h);
    cplx t = sp / special::zeta(2.0 + 2.0 * h) * zp * zp *
             std::exp(h * (lx + l1x));
    t += std::exp(2.0 * h * lr) * sm / special::zeta(2.0 - 2.0 * h) * zm * zm;
    t += std::exp(h * lr) * (s1 / z2) * zp * zm *
         (std::exp(h * lx) + std::exp(h * l1x));
    return t;
  };
  auto L = analytic::cauchy_coeffs(family, cplx(0.0), 2, 3, 0.2);
  const cplx c0 = L.coeff(0);
  const double scale = std::abs(c0) + 1.0;
  if (std::abs(L.coeff(-2)) > 1e-7 * scale || std::abs(L.coeff(-1)) > 1e-7 * scale ||
      std::abs(c0.imag()) > 1e-9 * scale)
    throw std::logic_error("motohashi_main_density: singular part did not cancel");
  return c0.real();
}

std::vector<CorrelationRecord> correlation_report(
    std::int64_t X, const std::vector<std::int64_t>& r_list,
    const DivisorTable& table) {
  if (X < 1) throw std::invalid_argument("correlation_report: X must be >= 1");
  for (auto r : r_list) {
    if (r < 1) throw std::invalid_argument("correlation_report: r must be >= 1");
    if (X + r > table.N)
      throw std::out_of_range("correlation_report: X + r exceeds table size");
  }
  std::vector<std::future<CorrelationRecord>> jobs;
  jobs.reserve(r_list.size());
  for (auto r : r_list)
    jobs.push_back(std::async(std::launch::async,
                              [&table, X, r] { return make_record(X, r, table); }));
  std::vector<CorrelationRecord> out;
  out.reserve(r_list.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string correlation_csv(const std::vector<CorrelationRecord>& records) {
  std::string out = "X,r,sum,main,error,normalized_error\n";
  for (const auto& rec : records) {
    out += std::to_string(rec.X);
    out += ',';
    out += std::to_string(rec.r);
    out += ',';
    out += std::to_string(rec.sum);
    out += ',';
    append_real(out, rec.main);
    out += ',';
    append_real(out, rec.error);
    out += ',';
    append_real(out, rec.normalized_error);
    out += '\n';
  }
  return out;
}

}  // namespace zeta4::divisor
