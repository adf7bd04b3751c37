#include "hypotest/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypotest/specfun.hpp"

namespace hypotest::verifier {

double oracle_binomial(double a, double x) {
  if (!(x >= 0.0) || !(x < 1.0)) throw domain_error("oracle_binomial: x in [0,1)");
  return std::exp(-a * std::log1p(-x));
}

double oracle_log(double x) {
  if (!(x > 0.0) || !(x < 1.0)) throw domain_error("oracle_log: x in (0,1)");
  return -std::log1p(-x);
}

double oracle_elliptic_agm(double m) {
  if (!(m >= 0.0) || !(m < 1.0)) throw domain_error("oracle_elliptic_agm: m in [0,1)");
  double a = 1.0;
  double g = std::sqrt(1.0 - m);
  // quadratic convergence; 1e-15 relative fixpoint
  for (int i = 0; i < 64 && (a - g) > 1e-15 * a; ++i) {
    const double an = 0.5 * (a + g);
    g = std::sqrt(a * g);
    a = an;
  }
  return 1.0 / (0.5 * (a + g));
}

double oracle_series_hq(const ParamTriple& t, double x) {
  if (!(x >= 0.0) || !(x <= 0.999)) {
    throw domain_error("oracle_series_hq: x must lie in [0, 0.999]");
  }
  const auto r = hyp2f1::eval_series(t, x, 1e-15, 10000000);
  if (!r.converged) {
    throw numeric_error("oracle_series_hq: no convergence within 1e7 terms");
  }
  return r.value;
}

// ---------------------------------------------------------------------
// Sub-additivity
// ---------------------------------------------------------------------

std::vector<double> default_t_grid(int count) {
  std::vector<double> g(count);
  const double llo = std::log(0.01);
  const double lhi = std::log(7.0);
  for (int i = 0; i < count; ++i) {
    g[i] = std::exp(llo + (lhi - llo) * (i + 0.5) / count);
  }
  return g;
}

SubadditivityReport subadditivity_check(double c, double d, Additivity dir,
                                        std::span<const double> t_grid,
                                        double slack) {
  if (dir == Additivity::Super && !(c * d <= 1.0)) {
    throw hypothesis_error("subadditivity_check: SUPER requires c*d <= 1");
  }
  if (dir == Additivity::Sub && !(1.0 / c + 1.0 / d <= 2.0)) {
    throw hypothesis_error("subadditivity_check: SUB requires 1/c + 1/d <= 2");
  }
  for (double t : t_grid) {
    if (!(t > 0.0)) throw domain_error("subadditivity_check: t_grid must be positive");
  }

  struct GVal {
    double v, err;
  };
  auto G = [&](double t) -> GVal {
    // x = 1 - e^{-t} without cancellation
    const double x = -std::expm1(-t);
    const auto r = hyp2f1::g_zb(c, d, x);
    return {r.value, r.abs_error_est};
  };

  const std::size_t n = t_grid.size();
  std::vector<GVal> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = G(t_grid[i]);

  SubadditivityReport rep;
  rep.direction = dir;
  rep.min_margin = std::numeric_limits<double>::infinity();
  const double sign = dir == Additivity::Super ? 1.0 : -1.0;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const GVal gsum = G(t_grid[i] + t_grid[j]);
      // SUPER: G(u)+G(v) >= G(u+v); SUB: <=
      const double margin = sign * (g[i].v + g[j].v - gsum.v);
      const double budget = g[i].err + g[j].err + gsum.err + slack;
      ++rep.pairs_checked;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.min_margin_u = t_grid[i];
        rep.min_margin_v = t_grid[j];
      }
      if (margin < -budget) {
        rep.violations.push_back({t_grid[i], t_grid[j], margin});
      }
    }
  }

  // Lemma premise: G(t)/t monotone (decreasing for SUPER, increasing for SUB)
  double prev = g.empty() ? 0.0 : g[0].v / t_grid[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double cur = g[i].v / t_grid[i];
    const double tol = (g[i].err / t_grid[i]) + (g[i - 1].err / t_grid[i - 1]) + slack;
    const bool ok = dir == Additivity::Super ? cur <= prev + tol : cur >= prev - tol;
    if (!ok) {
      rep.ratio_monotone_ok = false;
      ++rep.ratio_violations;
    }
    prev = cur;
  }
  return rep;
}

// ---------------------------------------------------------------------
// Extremal probe
// ---------------------------------------------------------------------

ExtremalResult probe_infimum_d_f(double a, double b, long budget) {
  const ParamTriple tri(a, b, a + b);
  const double B = specfun::beta(a, b).value;
  const double R = specfun::r_coeff(a, b).value;

  ExtremalResult res;
  res.objective = "inf D_F, zero-balanced (a,b)";
  res.reference_lower_bound = 2.0 * R / B - 1.0;
  if (budget < 100) budget = 100;

  long evals = 0;
  auto objective = [&](double x, double y) {
    ++evals;
    return inequalities::d_f(tri, PointPair(x, y));
  };

  // coarse grid: half the budget, corner-inclusive range
  const int k = std::clamp(static_cast<int>(std::sqrt(budget / 2.0)), 8, 60);
  double best = std::numeric_limits<double>::infinity();
  double bx = 0.5, by = 0.5;
  const double lo = 1e-4, hi = 0.9995;
  auto grid_at = [&](int i) {
    // denser toward both ends (the extremes live at corners)
    const double u = (i + 0.5) / k;
    const double w = 0.5 - 0.5 * std::cos(u * 3.14159265358979323846);
    return lo + (hi - lo) * w;
  };
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {  // D_F is symmetric
      const double v = objective(grid_at(i), grid_at(j));
      if (v < best) {
        best = v;
        bx = grid_at(i);
        by = grid_at(j);
        res.trace.emplace_back(evals, best);
      }
    }
  }

  // per-coordinate golden-section refinement, three rounds
  const double gr = 0.6180339887498949;  // 1/phi
  const double span0 = (hi - lo) / k;
  for (int round = 0; round < 3 && evals < budget; ++round) {
    for (int coord = 0; coord < 2 && evals < budget; ++coord) {
      double lo_c = std::max(lo, (coord == 0 ? bx : by) - span0 / (round + 1.0));
      double hi_c = std::min(hi, (coord == 0 ? bx : by) + span0 / (round + 1.0));
      double c1 = hi_c - gr * (hi_c - lo_c);
      double c2 = lo_c + gr * (hi_c - lo_c);
      double f1v = coord == 0 ? objective(c1, by) : objective(bx, c1);
      double f2v = coord == 0 ? objective(c2, by) : objective(bx, c2);
      for (int it = 0; it < 40 && evals < budget && (hi_c - lo_c) > 1e-12; ++it) {
        if (f1v < f2v) {
          hi_c = c2;
          c2 = c1;
          f2v = f1v;
          c1 = hi_c - gr * (hi_c - lo_c);
          f1v = coord == 0 ? objective(c1, by) : objective(bx, c1);
        } else {
          lo_c = c1;
          c1 = c2;
          f1v = f2v;
          c2 = lo_c + gr * (hi_c - lo_c);
          f2v = coord == 0 ? objective(c2, by) : objective(bx, c2);
        }
      }
      const double cbest = f1v < f2v ? c1 : c2;
      const double fbest = std::min(f1v, f2v);
      if (fbest < best) {
        best = fbest;
        (coord == 0 ? bx : by) = cbest;
        res.trace.emplace_back(evals, best);
      }
    }
  }

  res.best = best;
  res.at_x = bx;
  res.at_y = by;
  res.evaluations = evals;
  return res;
}

}  // namespace hypotest::verifier
