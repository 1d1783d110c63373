#pragma once
// Divisor-function tables, shifted correlation sums, and the closed-form
// density of their main term, with a contour-extraction cross-check route.
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace zeta4::divisor {

// Exact table of d(n) = #{k >= 1 : k | n} for 1 <= n <= N.
struct DivisorTable {
  std::int64_t N = 0;
  std::vector<std::uint32_t> d;  // index 0 unused

  std::uint32_t operator()(std::int64_t n) const {
    return d[static_cast<std::size_t>(n)];
  }
};

// Multiple-marking sieve, O(N log N); N is capped by the memory budget.
DivisorTable sieve_divisors(std::int64_t N);

// sum_{d | r} d^z log(d)^log_power by divisor enumeration from the trial
// division factorization of r (r <= 1e9).
std::complex<double> sigma_z(std::int64_t r, std::complex<double> z,
                             int log_power = 0);

// Exact sum_{n <= X} d(n) d(n+r), overflow-checked integer arithmetic.
std::int64_t correlation_sum(std::int64_t X, std::int64_t r,
                             const DivisorTable& table);

// Density m(x, r) of the correlation main term in the scaled variable
// x = n/r:  sum_{n<=X} d(n) d(n+r) ~ [exact sum over n <= 2r]
//           + int_2^{X/r} m(x, r) dx.   Expanded closed form; x >= 2.
double motohashi_main_density(double x, std::int64_t r);

// Same value through the contour route: the h -> 0 limit of the three-term
// shifted-divisor family (each term has a double pole at h = 0, the sum is
// regular), extracted as the constant Cauchy coefficient.
double motohashi_main_density_contour(double x, std::int64_t r);

struct CorrelationRecord {
  std::int64_t X = 0;
  std::int64_t r = 0;
  std::int64_t sum = 0;           // exact correlation sum
  double main = 0.0;              // integrated density + exact boundary
  double error = 0.0;             // sum - main
  double normalized_error = 0.0;  // error / X^{2/3}
};

// One record per r; distinct r values are evaluated concurrently but the
// result order (and every bit of it) matches the serial loop.
std::vector<CorrelationRecord> correlation_report(
    std::int64_t X, const std::vector<std::int64_t>& r_list,
    const DivisorTable& table);

// CSV with header `X,r,sum,main,error,normalized_error`; reals carry 15
// significant digits.
std::string correlation_csv(const std::vector<CorrelationRecord>& records);

}  // namespace zeta4::divisor
