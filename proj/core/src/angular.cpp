#include "sprint/angular.hpp"

#include <algorithm>
#include <cmath>

namespace sprint {

namespace {

// Angular momenta as twice their value, so half-integers are exact ints.
int twice(double j) { return static_cast<int>(std::lround(2.0 * j)); }

double log_fact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

bool triangle(int a, int b, int c) {
  return c >= std::abs(a - b) && c <= a + b && ((a + b + c) % 2 == 0);
}

// log of the triangle coefficient Delta(abc), arguments doubled
double log_delta(int a, int b, int c) {
  return log_fact((a + b - c) / 2) + log_fact((a - b + c) / 2) + log_fact((-a + b + c) / 2) -
         log_fact((a + b + c) / 2 + 1);
}

}  // namespace

double wigner_3j(double j1d, double j2d, double j3d, double m1d, double m2d, double m3d) {
  const int j1 = twice(j1d), j2 = twice(j2d), j3 = twice(j3d);
  const int m1 = twice(m1d), m2 = twice(m2d), m3 = twice(m3d);
  if (m1 + m2 + m3 != 0) return 0.0;
  if (!triangle(j1, j2, j3)) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if ((j1 + m1) % 2 || (j2 + m2) % 2 || (j3 + m3) % 2) return 0.0;

  const double pre = 0.5 * (log_delta(j1, j2, j3) + log_fact((j1 + m1) / 2) + log_fact((j1 - m1) / 2) +
                            log_fact((j2 + m2) / 2) + log_fact((j2 - m2) / 2) +
                            log_fact((j3 + m3) / 2) + log_fact((j3 - m3) / 2));
  const int kmin = std::max({0, (j2 - j3 - m1) / 2, (j1 - j3 + m2) / 2});
  const int kmax = std::min({(j1 + j2 - j3) / 2, (j1 - m1) / 2, (j2 + m2) / 2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double term = log_fact(k) + log_fact((j1 + j2 - j3) / 2 - k) + log_fact((j1 - m1) / 2 - k) +
                        log_fact((j2 + m2) / 2 - k) + log_fact((j3 - j2 + m1) / 2 + k) +
                        log_fact((j3 - j1 - m2) / 2 + k);
    sum += ((k % 2) ? -1.0 : 1.0) * std::exp(pre - term);
  }
  const int phase = (j1 - j2 - m3) / 2;
  return ((phase % 2) ? -1.0 : 1.0) * sum;
}

double wigner_6j(double j1d, double j2d, double j3d, double j4d, double j5d, double j6d) {
  const int a = twice(j1d), b = twice(j2d), c = twice(j3d);
  const int d = twice(j4d), e = twice(j5d), f = twice(j6d);
  if (!triangle(a, b, c) || !triangle(a, e, f) || !triangle(d, b, f) || !triangle(d, e, c)) return 0.0;

  const double pre = 0.5 * (log_delta(a, b, c) + log_delta(a, e, f) + log_delta(d, b, f) +
                            log_delta(d, e, c));
  const int t1 = (a + b + c) / 2, t2 = (a + e + f) / 2, t3 = (d + b + f) / 2, t4 = (d + e + c) / 2;
  const int p1 = (a + b + d + e) / 2, p2 = (b + c + e + f) / 2, p3 = (a + c + d + f) / 2;
  const int kmin = std::max({t1, t2, t3, t4});
  const int kmax = std::min({p1, p2, p3});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double term = log_fact(k + 1) - log_fact(k - t1) - log_fact(k - t2) - log_fact(k - t3) -
                        log_fact(k - t4) - log_fact(p1 - k) - log_fact(p2 - k) - log_fact(p3 - k);
    sum += ((k % 2) ? -1.0 : 1.0) * std::exp(pre + term);
  }
  return sum;
}

double hyperfine_branching(double J_exc, double F_exc, double m_exc, double J_gnd, double F_gnd,
                           double m_gnd, double I) {
  const double six = wigner_6j(J_gnd, J_exc, 1.0, F_exc, F_gnd, I);
  double polar = 0.0;
  for (int q = -1; q <= 1; ++q) {
    const double three = wigner_3j(F_gnd, 1.0, F_exc, m_gnd, q, -m_exc);
    polar += three * three;
  }
  return (2.0 * J_exc + 1.0) * (2.0 * F_gnd + 1.0) * (2.0 * F_exc + 1.0) * six * six * polar;
}

}  // namespace sprint
