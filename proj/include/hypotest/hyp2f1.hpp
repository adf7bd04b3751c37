#pragma once

#include <cstdint>

#include "hypotest/errors.hpp"

namespace hypotest::hyp2f1 {

// Parameters (a,b,c) of F(a,b;c;x), all strictly positive and finite.
struct ParamTriple {
  double a;
  double b;
  double c;

  ParamTriple(double a_, double b_, double c_);
};

// Behavior of F near x = 1 is decided by the sign of c - a - b:
// finite limit, logarithmic singularity, or power-law blowup.
enum class RegimeTag : std::uint8_t {
  ConvergentAtOne,  // c > a + b
  ZeroBalanced,     // c = a + b
  DivergentAtOne,   // c < a + b
};

struct Regime {
  RegimeTag tag;
  double slack;  // c - a - b
};

enum class Method : std::uint8_t {
  Series,
  ZbAsymptotic,
  TransformedSeries,
  ClosedForm,
};

const char* method_name(Method m) noexcept;
const char* regime_name(RegimeTag t) noexcept;

struct EvalResult {
  double value;
  double abs_error_est;
  Method method;
  long terms_used;
  // false iff max_terms was reached before the stop criterion; the value
  // and abs_error_est are still meaningful (the estimate stays honest).
  bool converged;
};

struct SeriesOptions {
  double rel_tol = 1e-14;
  long max_terms = 100000;
};

// Ties |c-a-b| <= 1e-12*max(1,c) count as zero-balanced.
Regime classify(const ParamTriple& t) noexcept;

// Partial sum of the defining series with the multiplicative term
// recurrence; compensated accumulation. Stops once the current term is
// below rel_tol * sum and the term ratio is below one (tail geometrically
// dominated). Requires 0 <= x < 1.
EvalResult eval_series(const ParamTriple& t, double x, double rel_tol,
                       long max_terms);

// Regime-dispatched evaluation:
//   divergent:     (1-x)^{c-a-b} F(c-a,c-b;c;x) when the reduced pair is
//                  positive, direct series otherwise;
//   zero-balanced: series up to x_switch, then the logarithmic asymptote
//                  (R - log(1-x))/B;
//   convergent:    series everywhere, term budget enlarged near 1.
EvalResult eval(const ParamTriple& t, double x, const SeriesOptions& opt = {});

// F(a,b;c;1) for c > a+b, via log-gamma sums. Throws hypothesis_error in
// the other regimes.
double value_at_one(const ParamTriple& t);

// d/dx F(a,b;c;x) = (ab/c) F(a+1,b+1;c+1;x).
EvalResult derivative(const ParamTriple& t, double x,
                      const SeriesOptions& opt = {});

// g(x) = x F(c,d;c+d;x), the zero-balanced product.
EvalResult g_zb(double c, double d, double x, const SeriesOptions& opt = {});

// Zero-balanced dispatch point and the x>0.95 enlarged term budget.
inline constexpr double kZbAsymptoteSwitch = 0.999;
inline constexpr long kEnlargedMaxTerms = 2000000;

}  // namespace hypotest::hyp2f1
