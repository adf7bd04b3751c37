#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypotest/hyp2f1.hpp"
#include "hypotest/inequalities.hpp"
#include "hypotest/specfun.hpp"
#include "hypotest/verifier.hpp"

namespace {

using nlohmann::json;
namespace hyp = hypotest::hyp2f1;
namespace ineq = hypotest::inequalities;
namespace verif = hypotest::verifier;

// Exit-code contract: 0 success / all pass; 1 sweep found failures;
// 2 input or domain error; 3 hypothesis violation; 4 internal numeric error.
enum ExitCode : int {
  kOk = 0,
  kSweepFailures = 1,
  kInputError = 2,
  kHypothesisViolation = 3,
  kNumericError = 4,
};

std::string human(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hypotest::domain_error("cannot open output file: " + path);
  out << text;
}

json eval_to_json(const hyp::EvalResult& r) {
  return json{{"value", r.value},
              {"abs_error_est", r.abs_error_est},
              {"method", hyp::method_name(r.method)},
              {"terms_used", r.terms_used},
              {"converged", r.converged}};
}

struct CommonFlags {
  std::string format = "human";
  std::string out_path;
};

int cmd_eval(double a, double b, double c, double x, double rel_tol,
             long max_terms, const CommonFlags& fl) {
  hyp::SeriesOptions opt;
  if (rel_tol > 0) opt.rel_tol = rel_tol;
  if (max_terms > 0) opt.max_terms = max_terms;
  const auto r = hyp::eval(hyp::ParamTriple(a, b, c), x, opt);
  if (fl.format == "json") {
    write_output(eval_to_json(r).dump(2), fl.out_path);
  } else {
    std::ostringstream os;
    os << "value         " << human(r.value) << "\n"
       << "abs_error_est " << human(r.abs_error_est) << "\n"
       << "method        " << hyp::method_name(r.method) << "\n"
       << "terms_used    " << r.terms_used << "\n"
       << "converged     " << (r.converged ? "yes" : "no") << "\n";
    write_output(os.str(), fl.out_path);
  }
  return kOk;
}

int cmd_constants(double a, double b, double c, const CommonFlags& fl) {
  const hyp::ParamTriple t(a, b, c);
  const auto reg = hyp::classify(t);
  const auto bc = ineq::bound_constants(t);
  if (fl.format == "json") {
    json j{{"regime", hyp::regime_name(reg.tag)},
           {"slack", reg.slack},
           {"B", bc.B},
           {"R", bc.R},
           {"A", bc.A ? json(*bc.A) : json()}};
    write_output(j.dump(2), fl.out_path);
  } else {
    std::ostringstream os;
    os << "regime " << hyp::regime_name(reg.tag) << " (slack "
       << human(reg.slack) << ")\n"
       << "B      " << human(bc.B) << "\n"
       << "R      " << human(bc.R) << "\n";
    if (bc.A) {
      os << "A      " << human(*bc.A) << "\n";
    } else {
      os << "A      absent (requires c > a+b)\n";
    }
    write_output(os.str(), fl.out_path);
  }
  return kOk;
}

int cmd_check_list(const CommonFlags& fl) {
  if (fl.format == "json") {
    json arr = json::array();
    for (const auto& ti : ineq::registry()) {
      arr.push_back({{"id", ti.name},
                     {"params", ti.param_kind == ineq::ParamKind::Triple
                                    ? "(a,b,c)"
                                    : (ti.param_kind == ineq::ParamKind::ZbPair
                                           ? "(a,b) zero-balanced"
                                           : "(c,d)")},
                     {"point", ti.point_kind == ineq::PointKind::Pair
                                   ? "(x,y)"
                                   : (ti.point_kind == ineq::PointKind::Scalar
                                          ? "t"
                                          : "none")},
                     {"hypothesis", ti.hypothesis},
                     {"statement", ti.statement},
                     {"strict_lower", ti.strict_lower},
                     {"strict_upper", ti.strict_upper},
                     {"note", ti.note}});
    }
    write_output(arr.dump(2), fl.out_path);
    return kOk;
  }
  std::ostringstream os;
  for (const auto& ti : ineq::registry()) {
    os << ti.name << "\n  hypothesis: " << ti.hypothesis
       << "\n  statement:  " << ti.statement << "\n";
    if (!ti.note.empty()) os << "  note:       " << ti.note << "\n";
  }
  write_output(os.str(), fl.out_path);
  return kOk;
}

json record_json(const ineq::CheckRecord& rec) {
  json j{{"theorem", ineq::info(rec.id).name},
         {"value", rec.value},
         {"eval_error_budget", rec.eval_error_budget},
         {"pass", rec.pass}};
  if (rec.lower) j["lower"] = *rec.lower;
  if (rec.upper) j["upper"] = *rec.upper;
  if (rec.margin_lower) j["margin_lower"] = *rec.margin_lower;
  if (rec.margin_upper) j["margin_upper"] = *rec.margin_upper;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

int cmd_check_one(const std::string& name, std::optional<double> a,
                  std::optional<double> b, std::optional<double> c,
                  std::optional<double> d, std::optional<double> x,
                  std::optional<double> y, std::optional<double> t,
                  const CommonFlags& fl) {
  const auto id = ineq::theorem_from_name(name);
  if (!id) {
    throw hypotest::domain_error("unknown theorem id: " + name +
                                 " (see `check --list`)");
  }
  const auto& ti = ineq::info(*id);
  std::vector<double> params;
  switch (ti.param_kind) {
    case ineq::ParamKind::Triple:
      if (!a || !b || !c)
        throw hypotest::domain_error(name + " needs -a, -b, -c");
      params = {*a, *b, *c};
      break;
    case ineq::ParamKind::ZbPair:
      if (!a || !b) throw hypotest::domain_error(name + " needs -a, -b");
      params = {*a, *b};
      break;
    case ineq::ParamKind::CdPair:
      if (!c || !d) throw hypotest::domain_error(name + " needs -c, -d");
      params = {*c, *d};
      break;
  }
  std::optional<ineq::PointPair> point;
  if (ti.point_kind == ineq::PointKind::Pair) {
    if (!x || !y) throw hypotest::domain_error(name + " needs -x, -y");
    point.emplace(*x, *y);
  }
  if (ti.point_kind == ineq::PointKind::Scalar && !t) {
    throw hypotest::domain_error(name + " needs -t");
  }

  const auto rec = ineq::check(*id, params, point, t);
  if (fl.format == "json") {
    write_output(record_json(rec).dump(2), fl.out_path);
  } else {
    std::ostringstream os;
    os << ti.name << ": " << ti.statement << "\n"
       << "value         " << human(rec.value) << "\n";
    if (rec.lower) os << "lower         " << human(*rec.lower) << "\n";
    if (rec.upper) os << "upper         " << human(*rec.upper) << "\n";
    if (rec.margin_lower) os << "margin_lower  " << human(*rec.margin_lower) << "\n";
    if (rec.margin_upper) os << "margin_upper  " << human(*rec.margin_upper) << "\n";
    os << "error_budget  " << human(rec.eval_error_budget) << "\n"
       << "pass          " << (rec.pass ? "yes" : "no") << "\n";
    write_output(os.str(), fl.out_path);
  }
  return rec.pass ? kOk : kSweepFailures;
}

int cmd_sweep(verif::SweepSpec spec, const CommonFlags& fl) {
  const auto report = verif::run_sweep(spec);
  if (fl.format == "csv") {
    write_output(verif::to_csv(report), fl.out_path);
  } else if (fl.format == "json") {
    write_output(verif::report_to_json(report), fl.out_path);
  } else {
    std::ostringstream os;
    os << "checks    " << report.total_checks << "\n"
       << "failures  " << report.failures.size() << "\n"
       << "witnesses " << report.witnesses.size() << " (margin < 0.01)\n"
       << "wall_time " << human(report.wall_time_s) << " s\n"
       << "min margins per theorem:\n";
    for (const auto& [id, mm] : report.min_margins) {
      os << "  " << ineq::info(id).name << ":";
      if (mm.lower) os << " lower " << human(mm.lower->value);
      if (mm.upper) os << " upper " << human(mm.upper->value);
      os << "\n";
    }
    for (const auto& rec : report.failures) {
      os << "FAIL " << ineq::info(rec.id).name << " at params (" << human(rec.p1)
         << ", " << human(rec.p2);
      if (!std::isnan(rec.p3)) os << ", " << human(rec.p3);
      os << ") point (" << human(rec.x) << ", " << human(rec.y) << ")";
      if (!rec.error.empty()) os << " error: " << rec.error;
      os << "\n";
    }
    write_output(os.str(), fl.out_path);
  }
  return report.ok() ? kOk : kSweepFailures;
}

int cmd_extremes(const std::string& objective, double a, double b, long budget,
                 const CommonFlags& fl) {
  if (objective != "inf-DF") {
    throw hypotest::domain_error("unknown objective: " + objective +
                                 " (supported: inf-DF)");
  }
  const auto res = verif::probe_infimum_d_f(a, b, budget);
  if (fl.format == "json") {
    json trace = json::array();
    for (auto [n, v] : res.trace) trace.push_back({{"evals", n}, {"best", v}});
    json j{{"objective", res.objective},
           {"best", res.best},
           {"at", {res.at_x, res.at_y}},
           {"reference_lower_bound", res.reference_lower_bound},
           {"evaluations", res.evaluations},
           {"trace", trace}};
    write_output(j.dump(2), fl.out_path);
  } else {
    std::ostringstream os;
    os << "objective        " << res.objective << "\n"
       << "best             " << human(res.best) << "\n"
       << "at (x,y)         (" << human(res.at_x) << ", " << human(res.at_y)
       << ")\n"
       << "reference bound  " << human(res.reference_lower_bound)
       << " (2R/B - 1; valid, sharpness open)\n"
       << "evaluations      " << res.evaluations << "\n";
    write_output(os.str(), fl.out_path);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauss hypergeometric quotient/difference bound verifier"};
  app.require_subcommand(1);

  CommonFlags fl;

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "evaluate F(a,b;c;x)");
  double ea{}, eb{}, ec{}, ex{};
  double rel_tol = -1;
  long max_terms = -1;
  eval_cmd->add_option("-a", ea, "parameter a")->required();
  eval_cmd->add_option("-b", eb, "parameter b")->required();
  eval_cmd->add_option("-c", ec, "parameter c")->required();
  eval_cmd->add_option("-x", ex, "argument x in [0,1)")->required();
  eval_cmd->add_option("--rel-tol", rel_tol, "series stop tolerance");
  eval_cmd->add_option("--max-terms", max_terms, "series term budget");

  // ---- constants ----
  auto* const_cmd = app.add_subcommand("constants", "regime and B, R, A constants");
  double ca{}, cb{}, cc{};
  const_cmd->add_option("-a", ca, "parameter a")->required();
  const_cmd->add_option("-b", cb, "parameter b")->required();
  const_cmd->add_option("-c", cc, "parameter c")->required();

  // ---- check ----
  auto* check_cmd = app.add_subcommand("check", "evaluate one theorem predicate");
  std::string theorem_name;
  bool list = false;
  std::optional<double> ka, kb, kc, kd, kx, ky, kt;
  check_cmd->add_option("theorem", theorem_name, "theorem id, e.g. T3_5_1");
  check_cmd->add_flag("--list", list, "print the theorem registry");
  check_cmd->add_option("-a", ka, "parameter a");
  check_cmd->add_option("-b", kb, "parameter b");
  check_cmd->add_option("-c", kc, "parameter c");
  check_cmd->add_option("-d", kd, "parameter d");
  check_cmd->add_option("-x", kx, "point coordinate x");
  check_cmd->add_option("-y", ky, "point coordinate y");
  check_cmd->add_option("-t", kt, "scalar argument t");

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand("sweep", "run theorem sweeps");
  std::string theorems = "all";
  std::string params = "default";
  std::string spec_file;
  std::string scheme = "corner-biased";
  int points = 200;
  std::uint64_t seed = 42;
  double slack = 1e-10;
  double tighten = 0.0;
  int threads = 0;
  sweep_cmd->add_option("--theorems", theorems, "all or comma-separated ids");
  sweep_cmd->add_option("--params", params, "default or a sample count");
  sweep_cmd->add_option("--points", points, "points per parameter sample");
  sweep_cmd->add_option("--scheme", scheme,
                        "corner-biased | uniform-grid | low-discrepancy");
  sweep_cmd->add_option("--seed", seed, "RNG seed");
  sweep_cmd->add_option("--slack", slack, "additive pass slack");
  sweep_cmd->add_option("--tighten", tighten, "fixture: shrink bounds");
  sweep_cmd->add_option("--spec", spec_file, "JSON sweep spec (schema v1)");
  sweep_cmd->add_option("--threads", threads,
                        "worker threads (default: HYPOTEST_THREADS or all cores)");

  // ---- extremes ----
  auto* ext_cmd = app.add_subcommand("extremes", "extremal probes");
  std::string objective;
  double xa{}, xb{};
  long budget = 5000;
  ext_cmd->add_option("objective", objective, "inf-DF")->required();
  ext_cmd->add_option("-a", xa, "parameter a")->required();
  ext_cmd->add_option("-b", xb, "parameter b")->required();
  ext_cmd->add_option("--budget", budget, "evaluation budget");

  for (auto* sc : {eval_cmd, const_cmd, check_cmd, sweep_cmd, ext_cmd}) {
    sc->add_option("--format", fl.format, "human | json" +
                   std::string(sc == sweep_cmd ? " | csv" : ""));
    sc->add_option("-o,--output", fl.out_path, "write to file instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*eval_cmd) return cmd_eval(ea, eb, ec, ex, rel_tol, max_terms, fl);
    if (*const_cmd) return cmd_constants(ca, cb, cc, fl);
    if (*check_cmd) {
      if (list) return cmd_check_list(fl);
      if (theorem_name.empty()) {
        throw hypotest::domain_error("check: pass a theorem id or --list");
      }
      return cmd_check_one(theorem_name, ka, kb, kc, kd, kx, ky, kt, fl);
    }
    if (*sweep_cmd) {
      verif::SweepSpec spec;
      if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) throw hypotest::domain_error("cannot open spec file: " + spec_file);
        std::stringstream ss;
        ss << in.rdbuf();
        spec = verif::spec_from_json(ss.str());
      } else {
        if (theorems != "all") {
          std::stringstream ss(theorems);
          std::string tok;
          while (std::getline(ss, tok, ',')) {
            const auto id = ineq::theorem_from_name(tok);
            if (!id) throw hypotest::domain_error("unknown theorem id: " + tok);
            spec.theorems.push_back(*id);
          }
        }
        if (params != "default") spec.params.count = std::stoi(params);
        spec.points.count = points;
        spec.points.scheme = scheme == "uniform-grid"
                                 ? verif::PointScheme::UniformGrid
                                 : (scheme == "low-discrepancy"
                                        ? verif::PointScheme::LowDiscrepancy
                                        : verif::PointScheme::CornerBiased);
        spec.seed = seed;
        spec.slack = slack;
        spec.tighten = tighten;
        spec.threads = threads;
      }
      return cmd_sweep(spec, fl);
    }
    if (*ext_cmd) return cmd_extremes(objective, xa, xb, budget, fl);
  } catch (const hypotest::hypothesis_error& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kHypothesisViolation;
  } catch (const hypotest::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const hypotest::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumericError;
  }
  return kOk;
}
