#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// long-double direct summation (no compensation, its own stop rule), a
// Stirling log-gamma, and finite differences built on the reference sum.

#include <cmath>
#include <stdexcept>

namespace testoracle {

// Straightforward 2F1 series in extended precision. Throws if the budget
// is exhausted before the tail is below tol relatively.
inline double ref_series(double a, double b, double c, double x,
                         long double tol = 1e-17L, long max_terms = 60000000) {
  const long double xa = a, xb = b, xc = c, xx = x;
  long double sum = 1.0L, term = 1.0L;
  for (long n = 0; n < max_terms; ++n) {
    term *= (xa + n) * (xb + n) / ((xc + n) * (n + 1.0L)) * xx;
    sum += term;
    if (term < tol * sum && (xa + n) * (xb + n) * xx < (xc + n) * (n + 1.0L)) {
      return static_cast<double>(sum);
    }
  }
  throw std::runtime_error("ref_series: no convergence");
}

// Zero-balanced convenience form: F(a,b;a+b;x).
inline double ref_zb(double a, double b, double x) {
  return ref_series(a, b, a + b, x);
}

// log gamma via Stirling's series with Bernoulli terms after shifting the
// argument above 12; independent of the Lanczos path under test.
inline double stirling_lgamma(double x) {
  long double shift = 0.0L;
  long double z = x;
  while (z < 12.0L) {
    shift -= std::log(z);
    z += 1.0L;
  }
  const long double z2 = 1.0L / (z * z);
  // B2/(1*2) = 1/12, B4/(3*4) = -1/360, ...
  const long double s =
      1.0L / 12 -
      z2 * (1.0L / 360 -
            z2 * (1.0L / 1260 - z2 * (1.0L / 1680 - z2 * (1.0L / 1188))));
  const long double half_log_2pi = 0.91893853320467274178L;
  const long double v =
      (z - 0.5L) * std::log(z) - z + half_log_2pi + s / z + shift;
  return static_cast<double>(v);
}

// Central finite difference of the reference series.
inline double fd_derivative(double a, double b, double c, double x,
                            double h = 1e-6) {
  return (ref_series(a, b, c, x + h) - ref_series(a, b, c, x - h)) / (2.0 * h);
}

}  // namespace testoracle
