#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypotest/hyp2f1.hpp"

namespace hypotest::inequalities {

using hyp2f1::ParamTriple;
using hyp2f1::SeriesOptions;

// Arguments (x,y) in (0,1)^2 with the derived z = x+y-xy = 1-(1-x)(1-y).
// z is computed in extended precision so it is correctly rounded;
// z >= max(x,y) and z in (0,1).
struct PointPair {
  double x;
  double y;
  double z;

  PointPair(double x_, double y_);
};

// B = B(a,b), R = R(a,b); A = F(a,b;c;1) present iff c > a+b.
struct BoundConstants {
  double B;
  double R;
  std::optional<double> A;
};

// ---------------------------------------------------------------------
// Functionals under test. The *_v variants carry a propagated evaluation
// error budget (sum of constituent error estimates, quotient-weighted);
// the plain forms return just the value.
// ---------------------------------------------------------------------

struct Valued {
  double value;
  double budget;
};

// Q_F(x,y) = (F(x)+F(y)) / F(x+y-xy)
Valued q_f_v(const ParamTriple& t, const PointPair& p, const SeriesOptions& opt = {});
double q_f(const ParamTriple& t, const PointPair& p);

// D_F(x,y) = F(x)+F(y) - F(x+y-xy)
Valued d_f_v(const ParamTriple& t, const PointPair& p, const SeriesOptions& opt = {});
double d_f(const ParamTriple& t, const PointPair& p);

// Q_g, D_g: the same functionals applied to g(x) = x F(c,d;c+d;x).
Valued q_g_v(double c, double d, const PointPair& p, const SeriesOptions& opt = {});
double q_g(double c, double d, const PointPair& p);
Valued d_g_v(double c, double d, const PointPair& p, const SeriesOptions& opt = {});
double d_g(double c, double d, const PointPair& p);

// S(t) = g(t) / g(1 - sqrt(1-t)), t in (0,1); equals 2/Q_g(x,x) at
// x = 1 - sqrt(1-t).
Valued s_func_v(double a, double b, double t, const SeriesOptions& opt = {});
double s_func(double a, double b, double t);

// Auxiliary monotone functions of the zero-balanced function, 0 < x < 1:
//   f1 = (F-1)/log(1/(1-x))        f2 = B F + log(1-x)
//   f3 = B F + (1/x) log(1-x)      f4 = x F / log(1/(1-x))
// The triple must be zero-balanced; x = 0 is a domain error (the limits
// are f1 -> ab/(a+b), f2 -> B, f3 -> B-1, f4 -> 1).
double f1(const ParamTriple& t, double x);
double f2(const ParamTriple& t, double x);
double f3(const ParamTriple& t, double x);
double f4(const ParamTriple& t, double x);

// Parameter-pair spellings used by the refinement lemma: identical to
// f4 and f3 on the triple (c,d,c+d).
double f_pv(double c, double d, double x);
double h_pv(double c, double d, double x);

BoundConstants bound_constants(const ParamTriple& t);

// ---------------------------------------------------------------------
// Theorem registry: every bound statement in scope, as a checkable
// predicate with explicit hypothesis and strictness flags.
// ---------------------------------------------------------------------

enum class TheoremId : std::uint8_t {
  T1_1, T1_2, T1_3,
  T3_2, T3_3_1, T3_3_2, T3_4, T3_5_1, T3_5_2,
  T3_6_1, T3_6_2, C3_8_1, C3_8_2, T3_9_1, T3_9_2, R3_7,
};

inline constexpr int kTheoremCount = 16;

enum class ParamKind : std::uint8_t {
  Triple,  // (a,b,c)
  ZbPair,  // (a,b), zero-balanced triple (a,b,a+b)
  CdPair,  // (c,d) of g(x) = x F(c,d;c+d;x)
};

enum class PointKind : std::uint8_t {
  Pair,    // (x,y) in (0,1)^2
  Scalar,  // t in (0,1)
  None,    // parameter-only statement
};

struct TheoremInfo {
  TheoremId id;
  std::string_view name;
  ParamKind param_kind;
  PointKind point_kind;
  std::string_view hypothesis;  // condition on the parameters
  std::string_view statement;   // the inequality being checked
  bool strict_lower;
  bool strict_upper;
  bool has_lower;
  bool has_upper;
  std::string_view note;  // sharpness / exclusion remarks
};

std::span<const TheoremInfo> registry();
const TheoremInfo& info(TheoremId id);
std::optional<TheoremId> theorem_from_name(std::string_view name);

// One theorem predicate evaluated at one parameter/argument point.
// pass = every present margin >= -(eval_error_budget + slack); strictness
// is recorded, not enforced (strict margins can vanish at domain corners).
struct CheckRecord {
  TheoremId id;
  double p1, p2, p3;  // parameters, NaN-padded
  double x, y;        // point; scalar t lives in x; NaN when absent
  double value;
  std::optional<double> lower, upper;
  std::optional<double> margin_lower, margin_upper;
  double eval_error_budget;
  bool pass;
  std::string error;  // nonempty if evaluation failed; pass is then false
};

struct CheckOptions {
  double slack = 1e-10;
  // Test-fixture knob: shrink the admissible interval by this amount
  // (raises lower bounds, lowers upper bounds). Harness self-tests use it
  // to prove the sweep machinery can fail.
  double tighten = 0.0;
  SeriesOptions series;
};

// params: 3 values for Triple theorems, 2 for pair theorems.
// point: (x,y) for Pair theorems, t in x for Scalar, ignored for None.
// Throws hypothesis_error when the parameters violate the hypothesis.
CheckRecord check(TheoremId id, std::span<const double> params,
                  std::optional<PointPair> point, std::optional<double> t,
                  const CheckOptions& opt = {});

}  // namespace hypotest::inequalities
