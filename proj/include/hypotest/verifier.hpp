#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypotest/inequalities.hpp"

namespace hypotest::verifier {

using hyp2f1::ParamTriple;
using inequalities::CheckRecord;
using inequalities::PointPair;
using inequalities::TheoremId;

// ---------------------------------------------------------------------
// Independent closed-form oracles
// ---------------------------------------------------------------------

// F(a,b;b;x) = (1-x)^{-a}
double oracle_binomial(double a, double x);

// x F(1,1;2;x) = log(1/(1-x)), cancellation-safe
double oracle_log(double x);

// F(1/2,1/2;1;m) = 1/AGM(1, sqrt(1-m)), iterated to 1e-15 relative
double oracle_elliptic_agm(double m);

// Reference-effort series: rel_tol 1e-15, max_terms 1e7, x <= 0.999.
// Throws numeric_error when the budget is exhausted.
double oracle_series_hq(const ParamTriple& t, double x);

// ---------------------------------------------------------------------
// Sub-additivity checker: G(t) = g(1-e^{-t}) must be super-additive when
// c*d <= 1 and sub-additive when 1/c + 1/d <= 2; G(t)/t is monotone in
// the matching direction.
// ---------------------------------------------------------------------

enum class Additivity : std::uint8_t { Sub, Super };

struct SubadditivityReport {
  Additivity direction;
  long pairs_checked = 0;
  // (u, v, signed margin); margin >= 0 means the inequality held
  struct Violation {
    double u, v, margin;
  };
  std::vector<Violation> violations;
  double min_margin = 0.0;
  double min_margin_u = 0.0, min_margin_v = 0.0;
  bool ratio_monotone_ok = true;
  long ratio_violations = 0;

  bool ok() const { return violations.empty() && ratio_monotone_ok; }
};

SubadditivityReport subadditivity_check(double c, double d, Additivity dir,
                                        std::span<const double> t_grid,
                                        double slack = 1e-10);

// Log-spaced default grid over (0.01, 7).
std::vector<double> default_t_grid(int count = 50);

// ---------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------

struct ParamRange {
  double lo = 0.1;
  double hi = 3.0;
  int count = 20;
  bool log_scale = true;
};

enum class PointScheme : std::uint8_t { UniformGrid, LowDiscrepancy, CornerBiased };

struct PointGridSpec {
  PointScheme scheme = PointScheme::CornerBiased;
  int count = 200;
  std::vector<std::pair<double, double>> explicit_points;  // overrides scheme
};

struct SweepSpec {
  std::vector<TheoremId> theorems;  // empty = all sixteen
  ParamRange params;
  std::vector<std::vector<double>> explicit_params;  // overrides sampling
  PointGridSpec points;
  std::uint64_t seed = 42;
  double slack = 1e-10;
  double tighten = 0.0;  // fixture knob, see CheckOptions
  int threads = 0;       // 0: hardware default / HYPOTEST_THREADS
};

struct MarginLocation {
  double value = 0.0;
  CheckRecord at;
};

struct TheoremMargins {
  std::optional<MarginLocation> lower, upper;
};

struct SweepReport {
  SweepSpec spec;
  long total_checks = 0;
  std::vector<CheckRecord> records;  // deterministic grid order
  std::vector<CheckRecord> failures;
  std::map<TheoremId, TheoremMargins> min_margins;
  std::vector<CheckRecord> witnesses;  // margins below 0.01 (near-sharp)
  // strict bounds whose |margin| is below 10x the local budget: reported,
  // not failed (strict inequalities may have vanishing margins at corners)
  std::vector<CheckRecord> strict_audit;
  double wall_time_s = 0.0;

  bool ok() const { return failures.empty(); }
};

SweepReport run_sweep(const SweepSpec& spec);

// Deterministic point sampling used by the sweep; exposed for tests.
std::vector<PointPair> resolve_points(const PointGridSpec& g, std::uint64_t seed);

// CSV of every CheckRecord (header row, LF endings, shortest round-trip
// numbers). Contains no timing fields, so identical specs give identical
// bytes.
std::string to_csv(const SweepReport& report);

std::string spec_to_json(const SweepSpec& spec);   // schema version "v1"
SweepSpec spec_from_json(const std::string& text);
std::string report_to_json(const SweepReport& report);

// ---------------------------------------------------------------------
// Extremal probe for the open lower constant of the zero-balanced
// difference bound: empirical inf of D_F over (0,1)^2.
// ---------------------------------------------------------------------

struct ExtremalResult {
  std::string objective;
  double best = 0.0;
  double at_x = 0.0, at_y = 0.0;
  double reference_lower_bound = 0.0;  // 2R/B - 1
  std::vector<std::pair<long, double>> trace;  // (evaluations, best so far)
  long evaluations = 0;
};

// Coarse grid minimum refined by per-coordinate golden-section descent,
// three rounds; budget caps the number of functional evaluations. The
// result is an observation, not a sharpness claim.
ExtremalResult probe_infimum_d_f(double a, double b, long budget = 5000);

}  // namespace hypotest::verifier
