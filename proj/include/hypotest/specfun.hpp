#pragma once

#include "hypotest/errors.hpp"

namespace hypotest::specfun {

// Value plus a conservative a-priori absolute error bound for the method
// that produced it. The bound is not a running error analysis; it answers
// "how many digits are trustworthy".
struct SpecialValue {
  double value;
  double abs_error_est;
};

// Euler-Mascheroni constant, correct to double precision.
constexpr double euler_gamma() noexcept { return 0.57721566490153286061; }

// gamma(x) for 0 < x <= 170. Lanczos rational approximation (the 13-term
// double-precision coefficient set), reflection for x < 1/2.
SpecialValue gamma(double x);

// log gamma(x) for x > 0. Same approximation evaluated in log form, so it
// stays finite where gamma overflows.
SpecialValue log_gamma(double x);

// psi(x) = gamma'(x)/gamma(x) for x > 0. Upward recurrence until the
// argument reaches 8, then the asymptotic series through the B14 term.
SpecialValue digamma(double x);

// B(x,y) = gamma(x)gamma(y)/gamma(x+y), via log_gamma differences.
// Bit-exact under argument swap.
SpecialValue beta(double x, double y);

// R(a,b) = -2*euler_gamma - psi(a) - psi(b). Bit-exact under swap.
SpecialValue r_coeff(double a, double b);

}  // namespace hypotest::specfun
