#include "hypotest/inequalities.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "hypotest/specfun.hpp"

namespace hypotest::inequalities {

using hyp2f1::EvalResult;

PointPair::PointPair(double x_, double y_) : x(x_), y(y_) {
  if (!(x > 0.0) || !(x < 1.0) || !(y > 0.0) || !(y < 1.0)) {
    throw domain_error("PointPair: x, y must lie in (0,1)");
  }
  // x + y is exact in 64-bit-significand arithmetic; the product and the
  // subtraction round once, so z lands within half an ulp of the exact
  // x+y-xy and stays symmetric under swap.
  const long double zl =
      (static_cast<long double>(x) + static_cast<long double>(y)) -
      static_cast<long double>(x) * static_cast<long double>(y);
  z = static_cast<double>(zl);
}

namespace {

Valued quotient(const EvalResult& nx, const EvalResult& ny, const EvalResult& dz) {
  if (dz.value == 0.0) {
    throw numeric_error("quotient functional: denominator underflowed to zero");
  }
  const double v = (nx.value + ny.value) / dz.value;
  const double budget =
      (nx.abs_error_est + ny.abs_error_est + std::abs(v) * dz.abs_error_est) /
      std::abs(dz.value);
  return {v, budget};
}

Valued difference(const EvalResult& nx, const EvalResult& ny, const EvalResult& dz) {
  return {nx.value + ny.value - dz.value,
          nx.abs_error_est + ny.abs_error_est + dz.abs_error_est};
}

}  // namespace

Valued q_f_v(const ParamTriple& t, const PointPair& p, const SeriesOptions& opt) {
  return quotient(eval(t, p.x, opt), eval(t, p.y, opt), eval(t, p.z, opt));
}
double q_f(const ParamTriple& t, const PointPair& p) { return q_f_v(t, p).value; }

Valued d_f_v(const ParamTriple& t, const PointPair& p, const SeriesOptions& opt) {
  return difference(eval(t, p.x, opt), eval(t, p.y, opt), eval(t, p.z, opt));
}
double d_f(const ParamTriple& t, const PointPair& p) { return d_f_v(t, p).value; }

Valued q_g_v(double c, double d, const PointPair& p, const SeriesOptions& opt) {
  return quotient(hyp2f1::g_zb(c, d, p.x, opt), hyp2f1::g_zb(c, d, p.y, opt),
                  hyp2f1::g_zb(c, d, p.z, opt));
}
double q_g(double c, double d, const PointPair& p) { return q_g_v(c, d, p).value; }

Valued d_g_v(double c, double d, const PointPair& p, const SeriesOptions& opt) {
  return difference(hyp2f1::g_zb(c, d, p.x, opt), hyp2f1::g_zb(c, d, p.y, opt),
                    hyp2f1::g_zb(c, d, p.z, opt));
}
double d_g(double c, double d, const PointPair& p) { return d_g_v(c, d, p).value; }

Valued s_func_v(double a, double b, double t, const SeriesOptions& opt) {
  if (!(t > 0.0) || !(t < 1.0)) {
    throw domain_error("s_func: t must lie in (0,1)");
  }
  // 1 - sqrt(1-t) = t / (1 + sqrt(1-t)), cancellation-free for small t.
  const double xs = t / (1.0 + std::sqrt(1.0 - t));
  const EvalResult gt = hyp2f1::g_zb(a, b, t, opt);
  const EvalResult gs = hyp2f1::g_zb(a, b, xs, opt);
  if (gs.value == 0.0) throw numeric_error("s_func: denominator underflow");
  const double v = gt.value / gs.value;
  return {v, (gt.abs_error_est + std::abs(v) * gs.abs_error_est) / gs.value};
}
double s_func(double a, double b, double t) { return s_func_v(a, b, t).value; }

namespace {

const ParamTriple& require_zero_balanced(const ParamTriple& t) {
  if (classify(t).tag != hyp2f1::RegimeTag::ZeroBalanced) {
    throw domain_error("f1..f4: zero-balanced triple (c = a+b) required");
  }
  return t;
}

double require_open_unit(double x) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw domain_error("x must lie in (0,1)");
  }
  return x;
}

double eval_zb(const ParamTriple& t, double x) {
  return eval(t, x).value;
}

}  // namespace

double f1(const ParamTriple& t, double x) {
  require_zero_balanced(t);
  require_open_unit(x);
  return (eval_zb(t, x) - 1.0) / -std::log1p(-x);
}

double f2(const ParamTriple& t, double x) {
  require_zero_balanced(t);
  require_open_unit(x);
  return specfun::beta(t.a, t.b).value * eval_zb(t, x) + std::log1p(-x);
}

double f3(const ParamTriple& t, double x) {
  require_zero_balanced(t);
  require_open_unit(x);
  return specfun::beta(t.a, t.b).value * eval_zb(t, x) + std::log1p(-x) / x;
}

double f4(const ParamTriple& t, double x) {
  require_zero_balanced(t);
  require_open_unit(x);
  return x * eval_zb(t, x) / -std::log1p(-x);
}

double f_pv(double c, double d, double x) { return f4({c, d, c + d}, x); }
double h_pv(double c, double d, double x) { return f3({c, d, c + d}, x); }

BoundConstants bound_constants(const ParamTriple& t) {
  BoundConstants bc{specfun::beta(t.a, t.b).value,
                    specfun::r_coeff(t.a, t.b).value, std::nullopt};
  if (classify(t).tag == hyp2f1::RegimeTag::ConvergentAtOne) {
    bc.A = value_at_one(t);
  }
  return bc;
}

// ---------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------

namespace {

// Bound columns read: lower <= value <= upper with the recorded
// strictness; "--" marks an absent side.
constexpr std::array<TheoremInfo, kTheoremCount> kRegistry = {{
    {TheoremId::T1_1, "T1_1", ParamKind::Triple, PointKind::Pair,
     "a, b, c > 0",
     "0 < Q_F(x,y) <= 2",
     true, false, true, true,
     "both ends best possible (binomial family F(a,b;b;x))"},
    {TheoremId::T1_2, "T1_2", ParamKind::Triple, PointKind::Pair,
     "a, b > 0 and c > a+b",
     "|D_F(x,y)| <= A,  A = G(c)G(c-a-b)/(G(c-a)G(c-b)) = F(a,b;c;1)",
     false, false, true, true,
     "A is the best possible constant"},
    {TheoremId::T1_3, "T1_3", ParamKind::ZbPair, PointKind::Pair,
     "a, b > 0, zero-balanced c = a+b",
     "2R/B - 1 < D_F(x,y) <= 1",
     true, false, true, true,
     "upper constant 1 is best possible; lower bound valid but not sharp "
     "(best constant open)"},
    {TheoremId::T3_2, "T3_2", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0",
     "0 < Q_g(x,y) < 2",
     true, true, true, true, ""},
    {TheoremId::T3_3_1, "T3_3_1", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and c*d <= 1",
     "1/B(c,d) <= Q_g(x,y) <= B(c,d)",
     false, false, true, true, ""},
    {TheoremId::T3_3_2, "T3_3_2", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and 1/c + 1/d <= 2",
     "B(c,d) <= Q_g(x,y) <= 1/B(c,d)",
     false, false, true, true, ""},
    {TheoremId::T3_4, "T3_4", ParamKind::CdPair, PointKind::Pair,
     "c*d <= 1 and (c,d) != (1,1)",
     "(B(c,d)-1)/R(c,d) <= Q_g(x,y) <= 2R(c,d)/(B(c,d)-1)",
     false, false, true, true,
     "(1,1) excluded: both bounds degenerate to 0/0 there"},
    {TheoremId::T3_5_1, "T3_5_1", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and c*d <= 1",
     "Q_g(x,y) >= 1",
     false, false, true, false, "equality holds identically at (1,1)"},
    {TheoremId::T3_5_2, "T3_5_2", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and 1/c + 1/d <= 2",
     "Q_g(x,y) <= 1",
     false, false, false, true, "equality holds identically at (1,1)"},
    {TheoremId::T3_6_1, "T3_6_1", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and c*d <= 1",
     "0 <= D_g(x,y) < (2R(c,d)+1)/B(c,d) - 1",
     false, true, true, true,
     "upper bound non-strict at (1,1), where it degenerates to 0 = D_g"},
    {TheoremId::T3_6_2, "T3_6_2", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and 1/c + 1/d <= 2",
     "(2R(c,d)+1)/B(c,d) - 1 < D_g(x,y) <= 0",
     true, false, true, true,
     "lower bound non-strict at (1,1)"},
    {TheoremId::C3_8_1, "C3_8_1", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and c*d <= 1",
     "1 <= Q_g(x,y) < min{B(c,d), 2}",
     false, true, true, true,
     "upper bound attained at (1,1), where min{B,2} = 1 = Q_g"},
    {TheoremId::C3_8_2, "C3_8_2", ParamKind::CdPair, PointKind::Pair,
     "c, d > 0 and 1/c + 1/d <= 2",
     "B(c,d) < Q_g(x,y) <= 1",
     true, false, true, true, ""},
    {TheoremId::T3_9_1, "T3_9_1", ParamKind::ZbPair, PointKind::Scalar,
     "a, b > 0 and a*b <= 1",
     "1 < S(t) <= 2",
     true, false, true, true, ""},
    {TheoremId::T3_9_2, "T3_9_2", ParamKind::ZbPair, PointKind::Scalar,
     "a, b > 0 and 1/a + 1/b <= 2",
     "2 <= S(t) < 2/B(a,b)",
     false, true, true, true,
     "upper bound attained at (1,1), where 2/B = 2 = S"},
    {TheoremId::R3_7, "R3_7", ParamKind::CdPair, PointKind::None,
     "c*d <= 1 and (c,d) != (1,1)",
     "R(c,d) > B(c,d) - 1 > 0",
     true, false, true, false,
     "checked as min(R-(B-1), B-1) > 0"},
}};

}  // namespace

std::span<const TheoremInfo> registry() { return kRegistry; }

const TheoremInfo& info(TheoremId id) {
  return kRegistry[static_cast<std::size_t>(id)];
}

std::optional<TheoremId> theorem_from_name(std::string_view name) {
  for (const auto& ti : kRegistry) {
    if (ti.name == name) return ti.id;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------
// check
// ---------------------------------------------------------------------

namespace {

bool cd_le_one(double c, double d) { return c * d <= 1.0; }
bool inv_sum_le_two(double c, double d) { return 1.0 / c + 1.0 / d <= 2.0; }
bool is_one_one(double c, double d) { return c == 1.0 && d == 1.0; }

void require_hypothesis(bool ok, const TheoremInfo& ti, const std::string& why) {
  if (!ok) {
    throw hypothesis_error(std::string(ti.name) + ": hypothesis violated: " + why);
  }
}

struct BoundPair {
  std::optional<double> lower, upper;
};

}  // namespace

CheckRecord check(TheoremId id, std::span<const double> params,
                  std::optional<PointPair> point, std::optional<double> t,
                  const CheckOptions& opt) {
  const TheoremInfo& ti = info(id);

  const std::size_t want = ti.param_kind == ParamKind::Triple ? 3 : 2;
  if (params.size() != want) {
    throw domain_error(std::string(ti.name) + ": expected " +
                       std::to_string(want) + " parameters");
  }
  for (double p : params) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw domain_error(std::string(ti.name) + ": parameters must be positive");
    }
  }
  if (ti.point_kind == PointKind::Pair && !point) {
    throw domain_error(std::string(ti.name) + ": needs a point (x,y)");
  }
  if (ti.point_kind == PointKind::Scalar) {
    if (!t) throw domain_error(std::string(ti.name) + ": needs a scalar t");
    if (!(*t > 0.0) || !(*t < 1.0)) {
      throw domain_error(std::string(ti.name) + ": t must lie in (0,1)");
    }
  }

  CheckRecord rec;
  rec.id = id;
  rec.p1 = params[0];
  rec.p2 = params[1];
  rec.p3 = want == 3 ? params[2] : std::numeric_limits<double>::quiet_NaN();
  rec.x = rec.y = std::numeric_limits<double>::quiet_NaN();
  if (ti.point_kind == PointKind::Pair) {
    rec.x = point->x;
    rec.y = point->y;
  } else if (ti.point_kind == PointKind::Scalar) {
    rec.x = *t;
  }

  const double cA = params[0];
  const double cB = params[1];

  Valued val{};
  BoundPair bp;
  double bound_budget = 0.0;

  switch (id) {
    case TheoremId::T1_1: {
      const ParamTriple tri(cA, cB, params[2]);
      val = q_f_v(tri, *point, opt.series);
      bp = {0.0, 2.0};
      break;
    }
    case TheoremId::T1_2: {
      const ParamTriple tri(cA, cB, params[2]);
      require_hypothesis(
          classify(tri).tag == hyp2f1::RegimeTag::ConvergentAtOne, ti,
          "c > a+b required");
      const double A = value_at_one(tri);
      val = d_f_v(tri, *point, opt.series);
      bp = {-A, A};
      bound_budget = 2e-13 * A;
      break;
    }
    case TheoremId::T1_3: {
      const ParamTriple tri(cA, cB, cA + cB);
      const auto B = specfun::beta(cA, cB);
      const auto R = specfun::r_coeff(cA, cB);
      val = d_f_v(tri, *point, opt.series);
      bp = {2.0 * R.value / B.value - 1.0, 1.0};
      bound_budget = 2.0 * (R.abs_error_est + B.abs_error_est) / B.value;
      break;
    }
    case TheoremId::T3_2: {
      val = q_g_v(cA, cB, *point, opt.series);
      bp = {0.0, 2.0};
      break;
    }
    case TheoremId::T3_3_1: {
      require_hypothesis(cd_le_one(cA, cB), ti, "c*d <= 1 required");
      const auto B = specfun::beta(cA, cB);
      val = q_g_v(cA, cB, *point, opt.series);
      bp = {1.0 / B.value, B.value};
      bound_budget = B.abs_error_est * (1.0 + 1.0 / (B.value * B.value));
      break;
    }
    case TheoremId::T3_3_2: {
      require_hypothesis(inv_sum_le_two(cA, cB), ti, "1/c + 1/d <= 2 required");
      const auto B = specfun::beta(cA, cB);
      val = q_g_v(cA, cB, *point, opt.series);
      bp = {B.value, 1.0 / B.value};
      bound_budget = B.abs_error_est * (1.0 + 1.0 / (B.value * B.value));
      break;
    }
    case TheoremId::T3_4: {
      require_hypothesis(cd_le_one(cA, cB) && !is_one_one(cA, cB), ti,
                         "c*d <= 1 and (c,d) != (1,1) required");
      const auto B = specfun::beta(cA, cB);
      const auto R = specfun::r_coeff(cA, cB);
      val = q_g_v(cA, cB, *point, opt.series);
      const double bm1 = B.value - 1.0;
      bp = {bm1 / R.value, 2.0 * R.value / bm1};
      bound_budget =
          (B.abs_error_est + R.abs_error_est) * (1.0 / std::abs(R.value) +
          2.0 * (R.value + bm1) / (bm1 * bm1));
      break;
    }
    case TheoremId::T3_5_1: {
      require_hypothesis(cd_le_one(cA, cB), ti, "c*d <= 1 required");
      val = q_g_v(cA, cB, *point, opt.series);
      bp.lower = 1.0;
      break;
    }
    case TheoremId::T3_5_2: {
      require_hypothesis(inv_sum_le_two(cA, cB), ti, "1/c + 1/d <= 2 required");
      val = q_g_v(cA, cB, *point, opt.series);
      bp.upper = 1.0;
      break;
    }
    case TheoremId::T3_6_1: {
      require_hypothesis(cd_le_one(cA, cB), ti, "c*d <= 1 required");
      const auto B = specfun::beta(cA, cB);
      const auto R = specfun::r_coeff(cA, cB);
      val = d_g_v(cA, cB, *point, opt.series);
      bp = {0.0, (2.0 * R.value + 1.0) / B.value - 1.0};
      bound_budget = (2.0 * R.abs_error_est + 3.0 * B.abs_error_est) / B.value;
      break;
    }
    case TheoremId::T3_6_2: {
      require_hypothesis(inv_sum_le_two(cA, cB), ti, "1/c + 1/d <= 2 required");
      const auto B = specfun::beta(cA, cB);
      const auto R = specfun::r_coeff(cA, cB);
      val = d_g_v(cA, cB, *point, opt.series);
      bp = {(2.0 * R.value + 1.0) / B.value - 1.0, 0.0};
      bound_budget = (2.0 * R.abs_error_est + 3.0 * B.abs_error_est) / B.value;
      break;
    }
    case TheoremId::C3_8_1: {
      require_hypothesis(cd_le_one(cA, cB), ti, "c*d <= 1 required");
      const auto B = specfun::beta(cA, cB);
      val = q_g_v(cA, cB, *point, opt.series);
      bp = {1.0, std::min(B.value, 2.0)};
      bound_budget = B.abs_error_est;
      break;
    }
    case TheoremId::C3_8_2: {
      require_hypothesis(inv_sum_le_two(cA, cB), ti, "1/c + 1/d <= 2 required");
      const auto B = specfun::beta(cA, cB);
      val = q_g_v(cA, cB, *point, opt.series);
      bp = {B.value, 1.0};
      bound_budget = B.abs_error_est;
      break;
    }
    case TheoremId::T3_9_1: {
      require_hypothesis(cd_le_one(cA, cB), ti, "a*b <= 1 required");
      val = s_func_v(cA, cB, *t, opt.series);
      bp = {1.0, 2.0};
      break;
    }
    case TheoremId::T3_9_2: {
      require_hypothesis(inv_sum_le_two(cA, cB), ti, "1/a + 1/b <= 2 required");
      const auto B = specfun::beta(cA, cB);
      val = s_func_v(cA, cB, *t, opt.series);
      bp = {2.0, 2.0 / B.value};
      bound_budget = 2.0 * B.abs_error_est / (B.value * B.value);
      break;
    }
    case TheoremId::R3_7: {
      require_hypothesis(cd_le_one(cA, cB) && !is_one_one(cA, cB), ti,
                         "c*d <= 1 and (c,d) != (1,1) required");
      const auto B = specfun::beta(cA, cB);
      const auto R = specfun::r_coeff(cA, cB);
      val = {std::min(R.value - (B.value - 1.0), B.value - 1.0),
             R.abs_error_est + 2.0 * B.abs_error_est};
      bp.lower = 0.0;
      break;
    }
  }

  rec.value = val.value;
  rec.eval_error_budget = val.budget + bound_budget;
  if (bp.lower) {
    rec.lower = *bp.lower + opt.tighten;
    rec.margin_lower = rec.value - *rec.lower;
  }
  if (bp.upper) {
    rec.upper = *bp.upper - opt.tighten;
    rec.margin_upper = *rec.upper - rec.value;
  }
  const double allowed = -(rec.eval_error_budget + opt.slack);
  rec.pass = (!rec.margin_lower || *rec.margin_lower >= allowed) &&
             (!rec.margin_upper || *rec.margin_upper >= allowed);
  return rec;
}

}  // namespace hypotest::inequalities
