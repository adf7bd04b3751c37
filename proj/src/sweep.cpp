#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include <json.hpp>

#include "hypotest/verifier.hpp"

namespace hypotest::verifier {

using inequalities::CheckOptions;
using inequalities::ParamKind;
using inequalities::PointKind;
using inequalities::TheoremInfo;
using nlohmann::json;

namespace {

// All randomness flows through mt19937_64 raw draws (the engine's output
// sequence is pinned by the standard), so sweeps replay bit-identically
// across platforms. Each consumer gets its own stream keyed by (seed, id)
// so theorem lists can change without shifting other samples.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq ss{static_cast<std::uint32_t>(seed),
                   static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(stream_id),
                   static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(ss);
}

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * u01(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

double draw(std::mt19937_64& rng, const ParamRange& r, double lo, double hi) {
  if (!(lo < hi)) hi = lo * (1.0 + 1e-9) + 1e-12;
  return r.log_scale ? log_uniform(rng, lo, hi) : uniform(rng, lo, hi);
}

// Hypothesis-respecting parameter samples for one theorem.
std::vector<std::vector<double>> sample_params(TheoremId id, const ParamRange& r,
                                               std::uint64_t seed) {
  auto rng = stream(seed, 0x9000 + static_cast<std::uint64_t>(id));
  std::vector<std::vector<double>> out;
  out.reserve(r.count);
  for (int i = 0; i < r.count; ++i) {
    switch (id) {
      case TheoremId::T1_1: {
        out.push_back({draw(rng, r, r.lo, r.hi), draw(rng, r, r.lo, r.hi),
                       draw(rng, r, r.lo, r.hi)});
        break;
      }
      case TheoremId::T1_2: {
        const double a = draw(rng, r, r.lo, r.hi);
        const double b = draw(rng, r, r.lo, r.hi);
        out.push_back({a, b, a + b + draw(rng, r, 0.05, r.hi)});
        break;
      }
      case TheoremId::T1_3: {
        out.push_back({draw(rng, r, r.lo, r.hi), draw(rng, r, r.lo, r.hi)});
        break;
      }
      case TheoremId::T3_2: {
        out.push_back({draw(rng, r, r.lo, r.hi), draw(rng, r, r.lo, r.hi)});
        break;
      }
      // c*d <= 1 family
      case TheoremId::T3_3_1:
      case TheoremId::T3_4:
      case TheoremId::T3_5_1:
      case TheoremId::T3_6_1:
      case TheoremId::C3_8_1:
      case TheoremId::T3_9_1:
      case TheoremId::R3_7: {
        const double c = draw(rng, r, r.lo, r.hi);
        const double dhi = std::max(std::min(1.0 / c, r.hi), r.lo * 1.0001);
        double d = draw(rng, r, std::min(r.lo, dhi * 0.5), dhi);
        if (c == 1.0 && d == 1.0) d = 0.999999;  // registry exclusions
        out.push_back({c, d});
        break;
      }
      // 1/c + 1/d <= 2 family
      case TheoremId::T3_3_2:
      case TheoremId::T3_5_2:
      case TheoremId::T3_6_2:
      case TheoremId::C3_8_2:
      case TheoremId::T3_9_2: {
        const double clo = std::max(r.lo, 0.62);
        const double c = draw(rng, r, clo, r.hi);
        out.push_back({c, draw(rng, r, c / (2.0 * c - 1.0), r.hi)});
        break;
      }
    }
  }
  return out;
}

double halton(std::uint64_t i, std::uint64_t base) {
  double f = 1.0, x = 0.0;
  for (std::uint64_t n = i + 1; n > 0; n /= base) {
    f /= static_cast<double>(base);
    x += f * static_cast<double>(n % base);
  }
  return x;
}

}  // namespace

std::vector<PointPair> resolve_points(const PointGridSpec& g, std::uint64_t seed) {
  std::vector<PointPair> pts;
  if (!g.explicit_points.empty()) {
    pts.reserve(g.explicit_points.size());
    for (auto [x, y] : g.explicit_points) pts.emplace_back(x, y);
    return pts;
  }
  const int n = std::max(1, g.count);
  pts.reserve(n);
  auto rng = stream(seed, 0xC0FFEE);
  switch (g.scheme) {
    case PointScheme::UniformGrid: {
      const int k = static_cast<int>(std::ceil(std::sqrt(double(n))));
      for (int i = 0; i < k && static_cast<int>(pts.size()) < n; ++i) {
        for (int j = 0; j < k && static_cast<int>(pts.size()) < n; ++j) {
          pts.emplace_back(0.001 + 0.994 * (i + 0.5) / k,
                           0.001 + 0.994 * (j + 0.5) / k);
        }
      }
      break;
    }
    case PointScheme::LowDiscrepancy: {
      const double rx = u01(rng), ry = u01(rng);  // Cranley-Patterson shift
      for (int i = 0; i < n; ++i) {
        const double hx = std::fmod(halton(i, 2) + rx, 1.0);
        const double hy = std::fmod(halton(i, 3) + ry, 1.0);
        pts.emplace_back(0.001 + 0.994 * hx, 0.001 + 0.994 * hy);
      }
      break;
    }
    case PointScheme::CornerBiased: {
      // quarter of the points hug min(x,y) < 0.01, a quarter push
      // max(x,y) > 0.99; the extremes of every bound in scope live there
      for (int i = 0; i < n; ++i) {
        double x, y;
        switch (i % 4) {
          case 0: {  // small corner
            x = log_uniform(rng, 1e-4, 0.01);
            y = (i / 4) % 2 == 0 ? log_uniform(rng, 1e-4, 0.01)
                                 : uniform(rng, 0.01, 0.99);
            break;
          }
          case 1: {  // large corner
            x = uniform(rng, 0.99, 0.995);
            y = (i / 4) % 2 == 0 ? uniform(rng, 0.99, 0.995)
                                 : uniform(rng, 0.005, 0.99);
            break;
          }
          default: {
            x = uniform(rng, 0.001, 0.995);
            y = uniform(rng, 0.001, 0.995);
            break;
          }
        }
        if (rng() & 1) std::swap(x, y);
        pts.emplace_back(x, y);
      }
      break;
    }
  }
  return pts;
}

namespace {

std::vector<TheoremId> resolve_theorems(const SweepSpec& spec) {
  if (!spec.theorems.empty()) return spec.theorems;
  std::vector<TheoremId> all;
  for (const auto& ti : inequalities::registry()) all.push_back(ti.id);
  return all;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HYPOTEST_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

CheckRecord error_record(TheoremId id, const std::vector<double>& params,
                         const PointPair* pt, const double* t,
                         const std::string& what) {
  CheckRecord rec{};
  rec.id = id;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rec.p1 = params.size() > 0 ? params[0] : nan;
  rec.p2 = params.size() > 1 ? params[1] : nan;
  rec.p3 = params.size() > 2 ? params[2] : nan;
  rec.x = pt ? pt->x : (t ? *t : nan);
  rec.y = pt ? pt->y : nan;
  rec.value = nan;
  rec.eval_error_budget = 0.0;
  rec.pass = false;
  rec.error = what;
  return rec;
}

}  // namespace

SweepReport run_sweep(const SweepSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepReport rep;
  rep.spec = spec;

  const std::vector<TheoremId> ids = resolve_theorems(spec);
  const std::vector<PointPair> points = resolve_points(spec.points, spec.seed);

  struct Task {
    TheoremId id;
    const std::vector<double>* params;
    const PointPair* point;  // null for parameter-only theorems
  };

  // Parameter lists per theorem (explicit list applies to every theorem
  // whose arity matches; otherwise hypothesis-aware sampling).
  std::vector<std::vector<std::vector<double>>> params_by_theorem;
  params_by_theorem.reserve(ids.size());
  for (TheoremId id : ids) {
    const TheoremInfo& ti = inequalities::info(id);
    const std::size_t arity = ti.param_kind == ParamKind::Triple ? 3 : 2;
    if (!spec.explicit_params.empty()) {
      std::vector<std::vector<double>> keep;
      for (const auto& p : spec.explicit_params) {
        if (p.size() == arity) keep.push_back(p);
      }
      params_by_theorem.push_back(std::move(keep));
    } else {
      params_by_theorem.push_back(sample_params(id, spec.params, spec.seed));
    }
  }

  std::vector<Task> tasks;
  for (std::size_t ti_idx = 0; ti_idx < ids.size(); ++ti_idx) {
    const TheoremInfo& ti = inequalities::info(ids[ti_idx]);
    for (const auto& p : params_by_theorem[ti_idx]) {
      if (ti.point_kind == PointKind::None) {
        tasks.push_back({ids[ti_idx], &p, nullptr});
      } else {
        for (const auto& pt : points) {
          tasks.push_back({ids[ti_idx], &p, &pt});
        }
      }
    }
  }

  rep.records.resize(tasks.size());
  CheckOptions copt;
  copt.slack = spec.slack;
  copt.tighten = spec.tighten;

  auto run_one = [&](std::size_t i) {
    const Task& tk = tasks[i];
    const TheoremInfo& ti = inequalities::info(tk.id);
    try {
      std::optional<PointPair> pp;
      std::optional<double> tt;
      if (ti.point_kind == PointKind::Pair) pp = *tk.point;
      if (ti.point_kind == PointKind::Scalar) tt = tk.point->x;
      rep.records[i] = inequalities::check(tk.id, *tk.params, pp, tt, copt);
    } catch (const std::exception& e) {
      const double tval = tk.point ? tk.point->x : 0.0;
      rep.records[i] = error_record(
          tk.id, *tk.params, ti.point_kind == PointKind::Pair ? tk.point : nullptr,
          ti.point_kind == PointKind::Scalar ? &tval : nullptr, e.what());
    }
  };

  const int nthreads = resolve_threads(spec.threads);
  if (nthreads <= 1 || tasks.size() < 128) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t chunk = 32;
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= tasks.size()) return;
        const std::size_t end = std::min(begin + chunk, tasks.size());
        for (std::size_t i = begin; i < end; ++i) run_one(i);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }

  // deterministic aggregation in record order
  rep.total_checks = static_cast<long>(rep.records.size());
  constexpr std::size_t kListCap = 200;
  for (const auto& rec : rep.records) {
    if (!rec.pass) rep.failures.push_back(rec);
    auto& mm = rep.min_margins[rec.id];
    if (rec.margin_lower) {
      if (!mm.lower || *rec.margin_lower < mm.lower->value) {
        mm.lower = {*rec.margin_lower, rec};
      }
    }
    if (rec.margin_upper) {
      if (!mm.upper || *rec.margin_upper < mm.upper->value) {
        mm.upper = {*rec.margin_upper, rec};
      }
    }
    const bool near_sharp = (rec.margin_lower && *rec.margin_lower < 0.01) ||
                            (rec.margin_upper && *rec.margin_upper < 0.01);
    if (near_sharp && rep.witnesses.size() < kListCap) {
      rep.witnesses.push_back(rec);
    }
    const TheoremInfo& ti = inequalities::info(rec.id);
    const double audit_band = 10.0 * (rec.eval_error_budget + spec.slack);
    const bool audit =
        (ti.strict_lower && rec.margin_lower &&
         std::abs(*rec.margin_lower) < audit_band) ||
        (ti.strict_upper && rec.margin_upper &&
         std::abs(*rec.margin_upper) < audit_band);
    if (audit && rep.strict_audit.size() < kListCap) {
      rep.strict_audit.push_back(rec);
    }
  }

  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------

namespace {

// shortest round-trip decimal form
std::string fmt_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

void csv_field(std::string& out, double v) {
  if (!std::isnan(v)) out += fmt_double(v);
}

void csv_field_opt(std::string& out, const std::optional<double>& v) {
  if (v) out += fmt_double(*v);
}

json record_to_json(const CheckRecord& rec) {
  json j;
  j["theorem"] = inequalities::info(rec.id).name;
  json params = json::array();
  params.push_back(rec.p1);
  params.push_back(rec.p2);
  if (!std::isnan(rec.p3)) params.push_back(rec.p3);
  j["params"] = params;
  j["x"] = rec.x;
  j["y"] = rec.y;
  j["value"] = rec.value;
  j["lower"] = rec.lower ? json(*rec.lower) : json();
  j["upper"] = rec.upper ? json(*rec.upper) : json();
  j["margin_lower"] = rec.margin_lower ? json(*rec.margin_lower) : json();
  j["margin_upper"] = rec.margin_upper ? json(*rec.margin_upper) : json();
  j["eval_error_budget"] = rec.eval_error_budget;
  j["pass"] = rec.pass;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

const char* scheme_name(PointScheme s) {
  switch (s) {
    case PointScheme::UniformGrid: return "uniform-grid";
    case PointScheme::LowDiscrepancy: return "low-discrepancy";
    case PointScheme::CornerBiased: return "corner-biased";
  }
  return "?";
}

PointScheme scheme_from_name(const std::string& s) {
  if (s == "uniform-grid") return PointScheme::UniformGrid;
  if (s == "low-discrepancy") return PointScheme::LowDiscrepancy;
  if (s == "corner-biased") return PointScheme::CornerBiased;
  throw domain_error("unknown point scheme: " + s);
}

}  // namespace

std::string to_csv(const SweepReport& report) {
  std::string out =
      "theorem_id,a,b,c,x,y,value,lower,upper,margin_lower,margin_upper,pass\n";
  for (const auto& rec : report.records) {
    out += inequalities::info(rec.id).name;
    out += ',';
    csv_field(out, rec.p1);
    out += ',';
    csv_field(out, rec.p2);
    out += ',';
    csv_field(out, rec.p3);
    out += ',';
    csv_field(out, rec.x);
    out += ',';
    csv_field(out, rec.y);
    out += ',';
    csv_field(out, rec.value);
    out += ',';
    csv_field_opt(out, rec.lower);
    out += ',';
    csv_field_opt(out, rec.upper);
    out += ',';
    csv_field_opt(out, rec.margin_lower);
    out += ',';
    csv_field_opt(out, rec.margin_upper);
    out += ',';
    out += rec.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string spec_to_json(const SweepSpec& spec) {
  json j;
  j["version"] = "v1";
  json names = json::array();
  for (TheoremId id : spec.theorems) names.push_back(inequalities::info(id).name);
  j["theorems"] = names;  // empty array = all
  j["params"] = {{"lo", spec.params.lo},
                 {"hi", spec.params.hi},
                 {"count", spec.params.count},
                 {"scale", spec.params.log_scale ? "log" : "linear"}};
  if (!spec.explicit_params.empty()) j["params"]["explicit"] = spec.explicit_params;
  j["points"] = {{"scheme", scheme_name(spec.points.scheme)},
                 {"count", spec.points.count}};
  if (!spec.points.explicit_points.empty()) {
    json pts = json::array();
    for (auto [x, y] : spec.points.explicit_points) pts.push_back({x, y});
    j["points"]["explicit"] = pts;
  }
  j["seed"] = spec.seed;
  j["overrides"] = {{"slack", spec.slack}, {"tighten", spec.tighten}};
  j["threads"] = spec.threads;
  return j.dump(2);
}

SweepSpec spec_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("version") || j["version"] != "v1") {
    throw domain_error("sweep spec: expected schema version \"v1\"");
  }
  SweepSpec spec;
  if (j.contains("theorems")) {
    for (const auto& n : j["theorems"]) {
      const auto id = inequalities::theorem_from_name(n.get<std::string>());
      if (!id) throw domain_error("sweep spec: unknown theorem " + n.get<std::string>());
      spec.theorems.push_back(*id);
    }
  }
  if (j.contains("params")) {
    const auto& p = j["params"];
    if (p.contains("lo")) spec.params.lo = p["lo"];
    if (p.contains("hi")) spec.params.hi = p["hi"];
    if (p.contains("count")) spec.params.count = p["count"];
    if (p.contains("scale")) spec.params.log_scale = p["scale"] == "log";
    if (p.contains("explicit")) {
      spec.explicit_params = p["explicit"].get<std::vector<std::vector<double>>>();
    }
  }
  if (j.contains("points")) {
    const auto& p = j["points"];
    if (p.contains("scheme")) spec.points.scheme = scheme_from_name(p["scheme"]);
    if (p.contains("count")) spec.points.count = p["count"];
    if (p.contains("explicit")) {
      for (const auto& xy : p["explicit"]) {
        spec.points.explicit_points.emplace_back(xy.at(0), xy.at(1));
      }
    }
  }
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("overrides")) {
    const auto& o = j["overrides"];
    if (o.contains("slack")) spec.slack = o["slack"];
    if (o.contains("tighten")) spec.tighten = o["tighten"];
  }
  if (j.contains("threads")) spec.threads = j["threads"];
  return spec;
}

std::string report_to_json(const SweepReport& report) {
  json j;
  j["spec"] = json::parse(spec_to_json(report.spec));
  j["totals"] = {{"checks", report.total_checks},
                 {"failures", static_cast<long>(report.failures.size())}};
  json fails = json::array();
  for (const auto& rec : report.failures) fails.push_back(record_to_json(rec));
  j["failures"] = fails;
  json margins;
  for (const auto& [id, mm] : report.min_margins) {
    json m;
    if (mm.lower) {
      m["lower"] = {{"value", mm.lower->value}, {"at", record_to_json(mm.lower->at)}};
    }
    if (mm.upper) {
      m["upper"] = {{"value", mm.upper->value}, {"at", record_to_json(mm.upper->at)}};
    }
    margins[std::string(inequalities::info(id).name)] = m;
  }
  j["min_margins"] = margins;
  json wits = json::array();
  for (const auto& rec : report.witnesses) wits.push_back(record_to_json(rec));
  j["witnesses"] = wits;
  json audit = json::array();
  for (const auto& rec : report.strict_audit) audit.push_back(record_to_json(rec));
  j["strict_audit"] = audit;
  j["wall_time"] = report.wall_time_s;
  return j.dump(2);
}

}  // namespace hypotest::verifier
