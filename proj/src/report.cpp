#include "cartan/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "cartan/ek/classify.hpp"
#include "cartan/ek/cubic.hpp"
#include "cartan/ek/leaves.hpp"
#include "cartan/ek/su21.hpp"
#include "cartan/foliation.hpp"
#include "cartan/metric_analysis.hpp"
#include "cartan/monodromy.hpp"
#include "cartan/verifier.hpp"

namespace cartan {

const char* const tool_version = "0.1.0";

using nlohmann::json;

namespace {

std::string command_name(const RunConfig& c) {
  std::string out;
  for (const std::string& part : c.command) out += (out.empty() ? "" : " ") + part;
  return out;
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json provenance(const RunConfig& c) {
  return {{"tool", "cartan"},
          {"version", tool_version},
          {"command", command_name(c)},
          {"seed", c.seed},
          {"tolerances",
           {{"identity", c.tol.identity},
            {"quad", c.tol.quad},
            {"rank", c.tol.rank},
            {"denominator_bound", c.tol.denominator_bound},
            {"rationality", c.tol.rationality}}}};
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

json rationality_json(const RationalityVerdict& v) {
  return {{"kind", to_string(v.kind)}, {"p", v.p},          {"q", v.q},
          {"residual", number(v.residual)}, {"denominator_bound", v.denominator_bound},
          {"tolerance", v.tolerance}, {"reason", v.reason}};
}

json monodromy_json(const MonodromyReport& r) {
  json gens = json::array();
  for (const Generator& g : r.generators) {
    json e = {{"source", g.source}, {"label", g.label}, {"value", number(g.value)}, {"error", number(g.error)}};
    e["reference"] = g.reference ? json(number(*g.reference)) : json(nullptr);
    e["reference_agrees"] = g.reference_agrees;
    gens.push_back(e);
  }
  json out = {{"group_kind", r.group_kind},
              {"leaf", r.leaf},
              {"generators", gens},
              {"discrete", to_string(r.discrete)},
              {"integrable", to_string(r.integrable)},
              {"used_reference", r.used_reference},
              {"g_splitting", r.g_splitting},
              {"g_splitting_residual", number(r.g_splitting_residual)},
              {"method", r.method},
              {"tolerances",
               {{"quad", r.quad_tol}, {"denominator_bound", r.denominator_bound}, {"rationality", r.rationality_tol}}}};
  out["ratio"] = r.ratio ? json(number(*r.ratio)) : json(nullptr);
  out["rationality"] = r.rationality ? rationality_json(*r.rationality) : json(nullptr);
  return out;
}

json end_json(const ProfileEnd& e) {
  if (e.infinite) return {{"value", number(e.value)}, {"infinite", true}};
  return {{"value", number(e.value)}, {"infinite", false}, {"multiplicity", e.multiplicity}, {"included", e.included}};
}

json leaf_json(const ek::LeafFamily& f) {
  json out = {{"kind", ek::to_string(f.kind)},
              {"lower", end_json(f.curve.lower)},
              {"upper", end_json(f.curve.upper)},
              {"pi1", f.pi1},
              {"pi2", f.pi2},
              {"integrable", to_string(f.integrable)},
              {"complete", f.completeness.complete},
              {"completeness_reason", f.completeness.reason},
              {"complete_solution", f.solution.complete_solution},
              {"solution_justification", f.solution.justification},
              {"source_fiber", f.solution.source_fiber},
              {"constant_curvature", f.constant_curvature},
              {"solution_label", f.solution_label},
              {"frame_bundle_label", f.frame_bundle_label}};
  out["ratio"] = f.ratio ? json(number(*f.ratio)) : json(nullptr);
  out["rationality"] = f.rationality ? rationality_json(*f.rationality) : json(nullptr);
  return out;
}

json profile_json(double c1, double c2) {
  const ek::CubicProfile prof = ek::cubic_profile(c1, c2);
  json roots = json::array();
  for (const ek::Root& r : prof.roots) roots.push_back({{"value", number(r.value)}, {"multiplicity", r.multiplicity}});
  return {{"c1", c1}, {"c2", c2}, {"delta", number(prof.delta)}, {"delta_sign", prof.delta_sign}, {"roots", roots}};
}

ek::ClassifyOptions classify_options(const RunConfig& c) { return {c.tol.denominator_bound, c.tol.rationality}; }

CartanModel load_model(const RunConfig& c) {
  try {
    return builtin_model(c.model, c.params);
  } catch (const LookupError& e) {
    throw UsageError(e.what());
  }
}

void require_ek(const RunConfig& c) {
  if (c.model != "extremal_kahler" || !c.params.empty()) {
    throw UsageError("this command supports --model extremal_kahler without parameters only");
  }
}

RunResult run_verify(const RunConfig& c) {
  const CartanModel model = load_model(c);
  VerifyOptions opts;
  opts.points = c.samples;
  opts.seed = c.seed;
  opts.tolerance = c.tol.identity;
  const VerificationReport rep = verify_model(model, opts);
  json checks = json::array();
  for (const CheckResult& r : rep.checks) {
    checks.push_back({{"name", r.name}, {"max_residual", number(r.max_residual)}, {"tolerance", r.tolerance}, {"pass", r.pass}});
  }
  const GeometricType type = classify_type(model, opts);
  json evidence = json::object();
  for (const auto& [name, value] : type.evidence) evidence[name] = number(value);
  RunResult out;
  out.report = {{"model", rep.model},
                {"params", c.params},
                {"seed", rep.seed},
                {"sample_count", rep.sample_count},
                {"tolerance", rep.tolerance},
                {"checks", checks},
                {"pass", rep.pass()},
                {"fraction_above_1e-3", rep.fraction_above(1e-3)},
                {"condition_disagreements", rep.condition_disagreements},
                {"geometric_type",
                 {{"metric", type.metric},
                  {"almost_symplectic", type.almost_symplectic},
                  {"symplectic", type.symplectic},
                  {"almost_complex", type.almost_complex},
                  {"complex", type.complex},
                  {"almost_hermitian", type.almost_hermitian},
                  {"kahler", type.kahler},
                  {"evidence", evidence}}}};
  out.exit_code = rep.pass() ? 0 : 1;
  return out;
}

RunResult run_leaf(const RunConfig& c) {
  const CartanModel model = load_model(c);
  if (static_cast<int>(c.point.size()) != model.base_dim()) {
    throw UsageError("--point needs " + std::to_string(model.base_dim()) + " coordinates");
  }
  const Vector x = Eigen::Map<const Vector>(c.point.data(), static_cast<Eigen::Index>(c.point.size()));
  if (!model.contains(x)) throw UsageError("--point lies outside the model's domain");
  const RankOptions rank{c.tol.rank};
  const LeafProbe probe = probe_leaf(model, x, rank);
  RunResult out;
  out.report = {{"model", model.name()},
                {"point", vector_json(x)},
                {"rank", probe.leaf_dim},
                {"isotropy_dim", probe.isotropy.cols()},
                {"orbit_dim", probe.orbit_dim},
                {"isotropy_closure_residual", number(isotropy_closure_residual(model, x, rank))}};
  if (probe.isotropy.cols() == 3) {
    const IsotropyAlgebra alg = classify_isotropy(model, x, rank);
    out.report["isotropy_algebra"] = {{"label", alg.label}, {"reference_residual", number(alg.reference_residual)}};
  }
  const bool ek_model = model.name() == "extremal_kahler";
  if (ek_model) {
    const ek::GermSymmetry germ = ek::germ_symmetry(x);
    out.report["germ_symmetry"] = {{"group", germ.group}, {"t_norm", number(germ.t_norm)}, {"near_degenerate", germ.near_degenerate}};
    out.report["invariants"] = {{"I1", number(ek::invariant_i1(x))}, {"I2", number(ek::invariant_i2(x))}};
  }
  out.report["invariant_drift"] = nullptr;
  if (!c.flow_section.empty()) {
    const int idx = c.flow_section[1] - '1';
    if (idx >= model.fiber_dim()) throw UsageError("--flow-section exceeds the fiber dimension");
    json flow_json = {{"section", c.flow_section}, {"t", c.flow_time}};
    try {
      const FlowPath path = flow(model, x, constant_section(Vector::Unit(model.fiber_dim(), idx)), c.flow_time);
      flow_json["completed"] = true;
      flow_json["end"] = vector_json(path.end());
      flow_json["steps"] = path.times.size() - 1;
      if (ek_model) {
        out.report["invariant_drift"] = {{"I1", number(invariant_drift(path, ek::invariant_i1))},
                                         {"I2", number(invariant_drift(path, ek::invariant_i2))}};
      }
    } catch (const Error& e) {
      flow_json["completed"] = false;
      flow_json["error"] = e.what();
      out.exit_code = 1;
    }
    out.report["flow"] = flow_json;
  }
  return out;
}

RunResult run_monodromy(const RunConfig& c) {
  require_ek(c);
  const double c1 = *c.c1, c2 = *c.c2;
  const CartanModel model = extremal_kahler_model();
  const Splitting split(model, RankOptions{c.tol.rank});
  MonodromyOptions mo;
  mo.period.quad.rel_tol = c.tol.quad;
  mo.denominator_bound = c.tol.denominator_bound;
  mo.rationality_tol = c.tol.rationality;
  const ek::CubicProfile prof = ek::cubic_profile(c1, c2);
  RunResult out;
  json leaves = json::array();
  for (const ek::LeafFamily& fam : ek::classify(c1, c2, classify_options(c))) {
    if (fam.kind == ek::LeafKind::point) continue;
    const LeafCycles cycles = fam.kind == ek::LeafKind::sphere
                                  ? ek::sphere_cycles(prof)
                                  : ek::trivial_cycles(ek::to_string(fam.kind), "pi_2(L) = 1 and the boundary orbit bounds no essential disk");
    const MonodromyReport m = monodromy(split, cycles, mo);
    const MonodromyReport g = g_monodromy(split, cycles, mo);
    if (g.integrable != Verdict::yes) out.exit_code = 1;
    leaves.push_back({{"kind", ek::to_string(fam.kind)}, {"monodromy", monodromy_json(m)}, {"g_monodromy", monodromy_json(g)}});
  }
  out.report = {{"model", model.name()}, {"profile", profile_json(c1, c2)}, {"leaves", leaves}};
  return out;
}

RunResult run_complete(const RunConfig& c) {
  require_ek(c);
  const double c1 = *c.c1, c2 = *c.c2;
  RunResult out;
  out.exit_code = 1;
  json leaves = json::array();
  for (const ek::LeafFamily& fam : ek::classify(c1, c2, classify_options(c))) {
    json e = leaf_json(fam);
    if (fam.kind != ek::LeafKind::point) {
      const LengthProbe probe = probe_lengths(fam.curve);
      e["length_probe"] = {{"lower_finite", probe.lower_finite}, {"upper_finite", probe.upper_finite}};
    }
    if (fam.solution.complete_solution) out.exit_code = 0;
    leaves.push_back(e);
  }
  out.report = {{"model", "extremal_kahler"}, {"profile", profile_json(c1, c2)}, {"leaves", leaves}};
  return out;
}

RunResult run_ek_classify(const RunConfig& c) {
  json leaves = json::array();
  for (const ek::LeafFamily& fam : ek::classify(*c.c1, *c.c2, classify_options(c))) leaves.push_back(leaf_json(fam));
  RunResult out;
  out.report = {{"profile", profile_json(*c.c1, *c.c2)}, {"leaves", leaves}};
  return out;
}

RunResult run_ek_table1(const RunConfig&) {
  const std::vector<ek::ClassificationRow> rows = ek::table1();
  json arr = json::array();
  for (const ek::ClassificationRow& r : rows) {
    arr.push_back({{"condition", r.condition}, {"frame_bundle", r.frame_bundle}, {"solution", r.solution},
                   {"completeness", r.completeness}, {"c1", r.c1}, {"c2", r.c2}});
  }
  RunResult out;
  out.report = {{"rows", arr}};
  out.text = ek::render_table1(rows);
  return out;
}

RunResult run_ek_su21(const RunConfig& c) {
  const double a = *c.a, b = *c.b;
  const ek::SU21Point pt = ek::su21_embed(a, b, {0.0, 0.0});
  const ek::SU21Invariants inv = ek::su21_invariants(pt);
  Vector abu(4);
  abu << a, b, 0.0, 0.0;
  const Vector x = ek::ek_from_su21(abu);
  const double i1 = ek::invariant_i1(x), i2 = ek::invariant_i2(x);
  const double c_res = std::fabs(inv.casimir - (-32.0 / 3.0) * i1);
  const double det_res = std::abs(inv.det - ek::Complex(0.0, -32.0 / 9.0 * i2));
  const ek::KernelReport k = ek::su21_kernel_closed(a, b, c.tol.denominator_bound, c.tol.rationality);
  json matrix = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back({number(pt.matrix(i, j).real()), number(pt.matrix(i, j).imag())});
    matrix.push_back(row);
  }
  RunResult out;
  out.report = {
      {"a", a},
      {"b", b},
      {"matrix", matrix},
      {"ek_point", vector_json(x)},
      {"casimir", number(inv.casimir)},
      {"casimir_closed", number(ek::su21_casimir_closed(a, b))},
      {"det", {number(inv.det.real()), number(inv.det.imag())}},
      {"dictionary", {{"casimir_residual", number(c_res)}, {"det_residual", number(det_res)}}},
      {"kernel",
       {{"mu_squared", number(k.mu_squared)},
        {"closure", k.closure == ek::KernelClosure::closed ? "closed" : "closed_iff_rational"},
        {"ratio", number(k.ratio)},
        {"rationality", k.closure == ek::KernelClosure::closed ? json(nullptr) : rationality_json(k.rationality)},
        {"delta", number(k.delta)},
        {"delta_stated", number(k.delta_stated)},
        {"delta_corrected", number(k.delta_corrected)},
        {"sign_agrees", k.sign_agrees}}}};
  const double scale = std::max({1.0, std::fabs(inv.casimir), std::abs(inv.det)});
  out.exit_code = (c_res <= 1e-12 * scale && det_res <= 1e-12 * scale && k.sign_agrees) ? 0 : 1;
  return out;
}

RunResult run_ek_sweep(const RunConfig& c) {
  const int n = c.grid;
  json points = json::array();
  std::map<std::string, int> complete_solutions;
  int incomplete_open = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double c1 = n == 1 ? 0.0 : -2.0 + 4.0 * i / (n - 1);
      const double c2 = n == 1 ? 0.0 : -2.0 + 4.0 * j / (n - 1);
      json leaves = json::array();
      for (const ek::LeafFamily& fam : ek::classify(c1, c2, classify_options(c))) {
        leaves.push_back({{"kind", ek::to_string(fam.kind)},
                          {"integrable", to_string(fam.integrable)},
                          {"complete", fam.completeness.complete},
                          {"solution", fam.solution_label},
                          {"complete_solution", fam.solution.complete_solution}});
        if (fam.solution.complete_solution) ++complete_solutions[fam.solution_label];
        if ((fam.kind == ek::LeafKind::plane || fam.kind == ek::LeafKind::cylinder) && !fam.completeness.complete) ++incomplete_open;
      }
      points.push_back({{"c1", c1}, {"c2", c2}, {"delta", number(ek::discriminant(c1, c2))}, {"leaves", leaves}});
    }
  }
  RunResult out;
  out.report = {{"grid", n},
                {"range", {-2.0, 2.0}},
                {"points", points},
                {"summary", {{"complete_solutions", complete_solutions}, {"incomplete_open_leaves", incomplete_open}}}};
  return out;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

double positive(const json& v, const char* key) {
  const double x = v.get<double>();
  if (!(x > 0.0)) throw UsageError(std::string(key) + " must be positive");
  return x;
}

}  // namespace

void validate(const RunConfig& c) {
  static const std::set<std::string> known = {"verify", "leaf", "monodromy", "complete", "ek classify",
                                              "ek table1", "ek su21", "ek sweep"};
  const std::string name = command_name(c);
  if (!known.count(name)) throw UsageError("unknown command '" + name + "'");
  if (!(c.tol.identity >= 0.0) || !(c.tol.quad > 0.0) || !(c.tol.rank > 0.0) || !(c.tol.rationality > 0.0) ||
      c.tol.denominator_bound < 1) {
    throw UsageError("tolerances must be positive");
  }
  if (c.samples < 1) throw UsageError("--samples must be positive");
  if (c.grid < 1) throw UsageError("--grid must be positive");
  if (c.format != "" && c.format != "json" && c.format != "text") throw UsageError("--format is json or text");
  if ((name == "monodromy" || name == "complete" || name == "ek classify") && (!c.c1 || !c.c2)) {
    throw UsageError("'" + name + "' needs --c1 and --c2");
  }
  if (name == "ek su21" && (!c.a || !c.b)) throw UsageError("'ek su21' needs --a and --b");
  if (name == "leaf" && c.point.empty()) throw UsageError("'leaf' needs --point");
  if (!c.flow_section.empty() && c.flow_section != "e1" && c.flow_section != "e2" && c.flow_section != "e3") {
    throw UsageError("--flow-section is e1, e2 or e3");
  }
  if (!(c.flow_time > 0.0)) throw UsageError("--t must be positive");
}

void apply_config_json(RunConfig& c, const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const json& v = it.value();
      if (key == "command") {
        c.command.clear();
        if (v.is_string()) {
          std::istringstream words(v.get<std::string>());
          for (std::string w; words >> w;) c.command.push_back(w);
        } else {
          c.command = v.get<std::vector<std::string>>();
        }
      } else if (key == "model") {
        c.model = v.get<std::string>();
      } else if (key == "params") {
        c.params = v.get<Params>();
      } else if (key == "c1") {
        c.c1 = v.get<double>();
      } else if (key == "c2") {
        c.c2 = v.get<double>();
      } else if (key == "a") {
        c.a = v.get<double>();
      } else if (key == "b") {
        c.b = v.get<double>();
      } else if (key == "point") {
        c.point = v.get<std::vector<double>>();
      } else if (key == "flow_section") {
        c.flow_section = v.get<std::string>();
      } else if (key == "t") {
        c.flow_time = positive(v, "t");
      } else if (key == "samples") {
        c.samples = v.get<int>();
      } else if (key == "grid") {
        c.grid = v.get<int>();
      } else if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "tol") {
        c.tol.identity = positive(v, "tol");
      } else if (key == "quad_tol") {
        c.tol.quad = positive(v, "quad_tol");
      } else if (key == "rank_tol") {
        c.tol.rank = positive(v, "rank_tol");
      } else if (key == "denominator_bound") {
        c.tol.denominator_bound = v.get<std::int64_t>();
      } else if (key == "rationality_tol") {
        c.tol.rationality = positive(v, "rationality_tol");
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "format") {
        c.format = v.get<std::string>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

void apply_environment(RunConfig& c, const std::function<const char*(const char*)>& getenv_fn) {
  auto read = [&](const char* name, auto&& assign) {
    const char* raw = getenv_fn(name);
    if (raw == nullptr || *raw == '\0') return;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0)) {
      throw UsageError(std::string(name) + " must be a positive number");
    }
    assign(v);
  };
  read("CARTAN_TOL", [&](double v) { c.tol.identity = v; });
  read("CARTAN_QUAD_TOL", [&](double v) { c.tol.quad = v; });
  read("CARTAN_RANK_TOL", [&](double v) { c.tol.rank = v; });
  read("CARTAN_DENOMINATOR_BOUND", [&](double v) { c.tol.denominator_bound = static_cast<std::int64_t>(v); });
  read("CARTAN_RATIONALITY_TOL", [&](double v) { c.tol.rationality = v; });
  read("CARTAN_SEED", [&](double v) { c.seed = static_cast<std::uint64_t>(v); });
}

RunResult run(const RunConfig& c) {
  validate(c);
  const std::string name = command_name(c);
  RunResult out;
  if (name == "verify") out = run_verify(c);
  else if (name == "leaf") out = run_leaf(c);
  else if (name == "monodromy") out = run_monodromy(c);
  else if (name == "complete") out = run_complete(c);
  else if (name == "ek classify") out = run_ek_classify(c);
  else if (name == "ek table1") out = run_ek_table1(c);
  else if (name == "ek su21") out = run_ek_su21(c);
  else out = run_ek_sweep(c);
  out.report["provenance"] = provenance(c);
  out.report["exit_code"] = out.exit_code;
  out.format = !c.format.empty() ? c.format : (name == "ek table1" ? "text" : "json");
  return out;
}

std::string render(const RunResult& r) {
  if (r.format == "json") return r.report.dump(2) + "\n";
  if (!r.text.empty()) return r.text;
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(r.report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << '\n';
  return out.str();
}

}  // namespace cartan
