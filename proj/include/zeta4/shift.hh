#pragma once
// Shift pair (alpha, beta) for correlated-moment objects; the gap delta and
// the geometric-mean ordinate derive from it.
#include <cmath>

namespace zeta4 {

struct ShiftConfig {
  double alpha = 0.0;
  double beta = 0.0;

  double delta() const { return beta - alpha; }
  double t_tilde(double T) const { return std::sqrt(T * (T + delta())); }
};

}  // namespace zeta4
