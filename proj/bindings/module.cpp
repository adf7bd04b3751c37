#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypotest/hyp2f1.hpp"
#include "hypotest/inequalities.hpp"
#include "hypotest/specfun.hpp"
#include "hypotest/verifier.hpp"

namespace py = pybind11;
using namespace hypotest;

namespace {

py::dict eval_dict(const hyp2f1::EvalResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["abs_error_est"] = r.abs_error_est;
  d["method"] = hyp2f1::method_name(r.method);
  d["terms_used"] = r.terms_used;
  d["converged"] = r.converged;
  return d;
}

py::dict record_dict(const inequalities::CheckRecord& rec) {
  py::dict d;
  d["theorem"] = std::string(inequalities::info(rec.id).name);
  d["params"] = std::isnan(rec.p3) ? py::make_tuple(rec.p1, rec.p2)
                                   : py::make_tuple(rec.p1, rec.p2, rec.p3);
  d["x"] = rec.x;
  d["y"] = rec.y;
  d["value"] = rec.value;
  d["lower"] = rec.lower ? py::object(py::float_(*rec.lower)) : py::none();
  d["upper"] = rec.upper ? py::object(py::float_(*rec.upper)) : py::none();
  d["margin_lower"] =
      rec.margin_lower ? py::object(py::float_(*rec.margin_lower)) : py::none();
  d["margin_upper"] =
      rec.margin_upper ? py::object(py::float_(*rec.margin_upper)) : py::none();
  d["eval_error_budget"] = rec.eval_error_budget;
  d["pass"] = rec.pass;
  if (!rec.error.empty()) d["error"] = rec.error;
  return d;
}

hyp2f1::ParamTriple triple(double a, double b, double c) { return {a, b, c}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gauss hypergeometric quotient/difference bound verifier";

  py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
  py::register_exception<overflow_error>(m, "OverflowRangeError", PyExc_OverflowError);
  py::register_exception<hypothesis_error>(m, "HypothesisError", PyExc_ValueError);
  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

  // specfun
  m.def("gamma", [](double x) { return specfun::gamma(x).value; },
        py::arg("x"), "gamma(x) for 0 < x <= 170");
  m.def("log_gamma", [](double x) { return specfun::log_gamma(x).value; },
        py::arg("x"));
  m.def("digamma", [](double x) { return specfun::digamma(x).value; },
        py::arg("x"));
  m.def("beta", [](double x, double y) { return specfun::beta(x, y).value; },
        py::arg("x"), py::arg("y"));
  m.def("r_coeff", [](double a, double b) { return specfun::r_coeff(a, b).value; },
        py::arg("a"), py::arg("b"),
        "R(a,b) = -2*euler_gamma - digamma(a) - digamma(b)");
  m.def("euler_gamma", &specfun::euler_gamma);

  // hyp2f1
  m.def("classify", [](double a, double b, double c) {
          const auto r = hyp2f1::classify(triple(a, b, c));
          return py::make_tuple(hyp2f1::regime_name(r.tag), r.slack);
        },
        py::arg("a"), py::arg("b"), py::arg("c"),
        "regime of F(a,b;c;x) near x=1: (tag, c-a-b)");
  m.def("hyp2f1",
        [](double a, double b, double c, double x, double rel_tol, long max_terms) {
          hyp2f1::SeriesOptions opt;
          if (rel_tol > 0) opt.rel_tol = rel_tol;
          if (max_terms > 0) opt.max_terms = max_terms;
          return eval_dict(hyp2f1::eval(triple(a, b, c), x, opt));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"),
        py::arg("rel_tol") = -1.0, py::arg("max_terms") = -1,
        "evaluate F(a,b;c;x) on [0,1); returns value, error estimate, "
        "method, term count");
  m.def("value_at_one",
        [](double a, double b, double c) { return hyp2f1::value_at_one(triple(a, b, c)); },
        py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("derivative",
        [](double a, double b, double c, double x) {
          return eval_dict(hyp2f1::derivative(triple(a, b, c), x));
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"));
  m.def("g_zb",
        [](double c, double d, double x) { return eval_dict(hyp2f1::g_zb(c, d, x)); },
        py::arg("c"), py::arg("d"), py::arg("x"), "x * F(c,d;c+d;x)");

  // functionals
  m.def("q_f", [](double a, double b, double c, double x, double y) {
          return inequalities::q_f(triple(a, b, c), {x, y});
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"), py::arg("y"));
  m.def("d_f", [](double a, double b, double c, double x, double y) {
          return inequalities::d_f(triple(a, b, c), {x, y});
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"), py::arg("y"));
  m.def("q_g", [](double c, double d, double x, double y) {
          return inequalities::q_g(c, d, {x, y});
        },
        py::arg("c"), py::arg("d"), py::arg("x"), py::arg("y"));
  m.def("d_g", [](double c, double d, double x, double y) {
          return inequalities::d_g(c, d, {x, y});
        },
        py::arg("c"), py::arg("d"), py::arg("x"), py::arg("y"));
  m.def("s_func", &inequalities::s_func, py::arg("a"), py::arg("b"), py::arg("t"));
  m.def("f1", [](double a, double b, double x) { return inequalities::f1({a, b, a + b}, x); });
  m.def("f2", [](double a, double b, double x) { return inequalities::f2({a, b, a + b}, x); });
  m.def("f3", [](double a, double b, double x) { return inequalities::f3({a, b, a + b}, x); });
  m.def("f4", [](double a, double b, double x) { return inequalities::f4({a, b, a + b}, x); });
  m.def("f_pv", &inequalities::f_pv);
  m.def("h_pv", &inequalities::h_pv);
  m.def("bound_constants", [](double a, double b, double c) {
          const auto bc = inequalities::bound_constants(triple(a, b, c));
          py::dict d;
          d["B"] = bc.B;
          d["R"] = bc.R;
          d["A"] = bc.A ? py::object(py::float_(*bc.A)) : py::none();
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("c"));

  // registry + check
  m.def("theorems", [] {
    py::list out;
    for (const auto& ti : inequalities::registry()) {
      py::dict d;
      d["id"] = std::string(ti.name);
      d["hypothesis"] = std::string(ti.hypothesis);
      d["statement"] = std::string(ti.statement);
      d["note"] = std::string(ti.note);
      out.append(d);
    }
    return out;
  });
  m.def("check",
        [](const std::string& name, const std::vector<double>& params,
           py::object x, py::object y, py::object t) {
          const auto id = inequalities::theorem_from_name(name);
          if (!id) throw domain_error("unknown theorem id: " + name);
          std::optional<inequalities::PointPair> pp;
          std::optional<double> tt;
          if (!x.is_none() && !y.is_none()) {
            pp.emplace(x.cast<double>(), y.cast<double>());
          }
          if (!t.is_none()) tt = t.cast<double>();
          return record_dict(inequalities::check(*id, params, pp, tt));
        },
        py::arg("theorem"), py::arg("params"), py::arg("x") = py::none(),
        py::arg("y") = py::none(), py::arg("t") = py::none());

  // verifier
  m.def("oracle_binomial", &verifier::oracle_binomial);
  m.def("oracle_log", &verifier::oracle_log);
  m.def("oracle_elliptic_agm", &verifier::oracle_elliptic_agm);
  m.def("oracle_series_hq", [](double a, double b, double c, double x) {
    return verifier::oracle_series_hq(triple(a, b, c), x);
  });
  m.def("subadditivity_check",
        [](double c, double d, const std::string& direction,
           const std::vector<double>& t_grid) {
          const auto dir = direction == "SUPER" ? verifier::Additivity::Super
                                                : verifier::Additivity::Sub;
          const auto rep = verifier::subadditivity_check(c, d, dir, t_grid);
          py::dict out;
          out["ok"] = rep.ok();
          out["pairs_checked"] = rep.pairs_checked;
          out["violations"] = rep.violations.size();
          out["min_margin"] = rep.min_margin;
          out["ratio_monotone_ok"] = rep.ratio_monotone_ok;
          return out;
        },
        py::arg("c"), py::arg("d"), py::arg("direction"), py::arg("t_grid"));
  m.def("default_t_grid", &verifier::default_t_grid, py::arg("count") = 50);
  m.def("run_sweep",
        [](const std::string& spec_json) {
          const auto rep = verifier::run_sweep(verifier::spec_from_json(spec_json));
          py::dict out;
          out["ok"] = rep.ok();
          out["total_checks"] = rep.total_checks;
          out["failures"] = rep.failures.size();
          out["csv"] = verifier::to_csv(rep);
          out["json"] = verifier::report_to_json(rep);
          return out;
        },
        py::arg("spec_json"), "run a sweep from a v1 JSON spec");
  m.def("default_sweep_spec", [] {
    return verifier::spec_to_json(verifier::SweepSpec{});
  });
  m.def("probe_infimum_d_f",
        [](double a, double b, long budget) {
          const auto res = verifier::probe_infimum_d_f(a, b, budget);
          py::dict out;
          out["objective"] = res.objective;
          out["best"] = res.best;
          out["at"] = py::make_tuple(res.at_x, res.at_y);
          out["reference_lower_bound"] = res.reference_lower_bound;
          out["evaluations"] = res.evaluations;
          return out;
        },
        py::arg("a"), py::arg("b"), py::arg("budget") = 5000);
}
