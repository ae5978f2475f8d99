#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "gma/errors.hpp"
#include "gma/kernel/cone.hpp"
#include "gma/kernel/constants.hpp"
#include "gma/kernel/properties.hpp"
#include "gma/pde/solver.hpp"
#include "gma/psh/psh.hpp"
#include "gma/toric/criterion.hpp"

namespace gma::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// ---- schema fragments ----

json type(const char* t) { return json{{"type", t}}; }
json number() { return type("number"); }
json positive() { return json{{"type", "number"}, {"exclusiveMinimum", 0}}; }
json nonnegative() { return json{{"type", "number"}, {"minimum", 0}}; }
json integer(int lo, int hi = std::numeric_limits<int>::max()) {
  return json{{"type", "integer"}, {"minimum", lo}, {"maximum", hi}};
}
json array(json items, int minItems = 0, int maxItems = -1) {
  json a{{"type", "array"}, {"items", std::move(items)}, {"minItems", minItems}};
  if (maxItems >= 0) a["maxItems"] = maxItems;
  return a;
}
json object(json props, std::vector<std::string> required = {}) {
  return json{{"type", "object"}, {"properties", std::move(props)}, {"required", required}};
}
json matrix() { return array(array(number(), 1), 1); }

json top(json props, std::vector<std::string> required) {
  props["schemaVersion"] = json{{"const", 1}};
  required.insert(required.begin(), "schemaVersion");
  return object(std::move(props), std::move(required));
}

json torus_field_schema() {
  return object({{"constant", number()},
                 {"modes", array(object({{"amplitude", number()}, {"k", array(integer(-64, 64), 1)}, {"phase", number()}},
                                        {"amplitude", "k"}))},
                 {"grid", type("string")}});
}

json geometry_schema() {
  return object({{"gridShape", array(integer(8, 4096), 1, 3)},
                 {"X", matrix()},
                 {"W0", matrix()},
                 {"scheme", json{{"enum", {"spectral", "finite_difference", "fd"}}}}},
                {"gridShape"});
}

json solver_schema() {
  return object({{"tol", positive()},
                 {"maxIter", integer(1)},
                 {"dt0", positive()},
                 {"dtMin", positive()},
                 {"compatibilityTol", positive()},
                 {"gmresTol", positive()},
                 {"gmresRestart", integer(1)},
                 {"gmresMaxIter", integer(1)}});
}

json potential_schema() {
  return object({{"gamma", nonnegative()},
                 {"center", array(number(), 2, 4)},
                 {"constant", number()},
                 {"modes", array(object({{"amplitude", number()}, {"k", array(number(), 2, 4)}, {"phase", number()}},
                                        {"amplitude", "k"}))}});
}

json mollifier_schema() {
  return object({{"type", json{{"enum", {"constant", "polynomial", "samples"}}}}, {"samples", array(nonnegative(), 2)}});
}

json polytope_schema() { return object({{"vertices", array(array(type("rational"), 1, 3), 1)}}, {"vertices"}); }

json quadratic_schema() { return object({{"A", matrix()}, {"b", array(number())}, {"constant", number()}}, {"A"}); }

json coefficient_props() { return json{{"n", integer(1, 8)}, {"c", array(nonnegative())}}; }

json with(json base, const json& more) {
  for (const auto& [k, v] : more.items()) base[k] = v;
  return base;
}

// ---- config readers ----

std::vector<double> doubles(const json& a) { return a.get<std::vector<double>>(); }

Eigen::MatrixXd read_matrix(const json& j, int n, const std::string& name) {
  if (static_cast<int>(j.size()) != n) throw ValidationError(name + " must be " + std::to_string(n) + " x " + std::to_string(n));
  Eigen::MatrixXd M(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(j[i].size()) != n) throw ValidationError(name + " must be square");
    for (int k = 0; k < n; ++k) M(i, k) = j[i][k].get<double>();
  }
  return M;
}

Eigen::VectorXd read_vector(const json& j, int n, const std::string& name) {
  if (static_cast<int>(j.size()) != n) throw ValidationError(name + " must have " + std::to_string(n) + " entries");
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = j[i].get<double>();
  return v;
}

json to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

kernel::CoefficientSet coefficients(const json& cfg) {
  const int n = cfg["n"].get<int>();
  const auto c = doubles(cfg["c"]);
  if (static_cast<int>(c.size()) != n - 1) throw ValidationError("c must have n - 1 = " + std::to_string(n - 1) + " entries");
  return kernel::CoefficientSet(n, c);
}

fs::path resolve(const Context& ctx, const std::string& p) {
  const fs::path q(p);
  return q.is_absolute() ? q : ctx.base / q;
}

io::GridFile load_grid(const Context& ctx, const std::string& p) {
  try {
    return io::read_grid(resolve(ctx, p).string());
  } catch (const DataError& e) {
    throw ValidationError(std::string("grid file ") + p + ": " + e.what());
  }
}

pde::TorusGeometry geometry(const json& cfg) {
  pde::TorusGeometry g;
  g.n = cfg["n"].get<int>();
  const auto& gj = cfg["geometry"];
  g.gridShape = gj["gridShape"].get<std::vector<int>>();
  if (static_cast<int>(g.gridShape.size()) != g.n) throw ValidationError("gridShape must have n entries");
  g.X = gj.contains("X") ? read_matrix(gj["X"], g.n, "X") : Eigen::MatrixXd::Identity(g.n, g.n);
  g.W0 = gj.contains("W0") ? read_matrix(gj["W0"], g.n, "W0") : Eigen::MatrixXd::Identity(g.n, g.n);
  if (gj.contains("scheme")) g.scheme = pde::scheme_from_string(gj["scheme"].get<std::string>());
  g.validate();
  return g;
}

std::vector<double> torus_field(const Context& ctx, const json& spec, const pde::TorusGeometry& g) {
  if (spec.contains("grid")) {
    if (spec.contains("constant") || spec.contains("modes")) throw ValidationError("grid excludes constant and modes");
    auto gf = load_grid(ctx, spec["grid"].get<std::string>());
    if (gf.gridShape != g.gridShape) throw ValidationError("grid file shape does not match geometry");
    return std::move(gf.values);
  }
  const double c = spec.value("constant", 0.0);
  struct Mode {
    double a, phase;
    std::vector<int> k;
  };
  std::vector<Mode> modes;
  for (const auto& m : spec.value("modes", json::array())) {
    Mode md{m["amplitude"].get<double>(), m.value("phase", 0.0), m["k"].get<std::vector<int>>()};
    if (static_cast<int>(md.k.size()) != g.n) throw ValidationError("mode wave vector must have n entries");
    modes.push_back(std::move(md));
  }
  return pde::sample(g, [&](const std::vector<double>& x) {
    double v = c;
    for (const auto& m : modes) {
      double arg = m.phase;
      for (int a = 0; a < g.n; ++a) arg += 2 * std::numbers::pi * m.k[a] * x[a];
      v += m.a * std::cos(arg);
    }
    return v;
  });
}

pde::SolverOptions solver_options(const Context& ctx, const json& cfg) {
  pde::SolverOptions o;
  o.threads = ctx.threads;
  const json s = cfg.value("solver", json::object());
  o.tol = s.value("tol", o.tol);
  o.maxIter = s.value("maxIter", o.maxIter);
  o.dt0 = s.value("dt0", o.dt0);
  o.dtMin = s.value("dtMin", o.dtMin);
  o.compatibilityTol = s.value("compatibilityTol", o.compatibilityTol);
  o.gmresTol = s.value("gmresTol", o.gmresTol);
  o.gmresRestart = s.value("gmresRestart", o.gmresRestart);
  o.gmresMaxIter = s.value("gmresMaxIter", o.gmresMaxIter);
  return o;
}

io::GridFile grid_of(const pde::TorusGeometry& g, std::vector<double> v) { return {g.n, g.gridShape, std::move(v)}; }

psh::SingularPotential potential(const json& cfg) {
  const int n = cfg["n"].get<int>();
  const json pj = cfg["potential"];
  const Eigen::VectorXd center =
      pj.contains("center") ? read_vector(pj["center"], 2 * n, "potential.center") : Eigen::VectorXd::Zero(2 * n);
  auto sp = psh::SingularPotential::log_pole(n, pj.value("gamma", 0.0), center);
  const double c = pj.value("constant", 0.0);
  std::vector<std::tuple<double, double, Eigen::VectorXd>> modes;
  for (const auto& m : pj.value("modes", json::array())) {
    modes.emplace_back(m["amplitude"].get<double>(), m.value("phase", 0.0), read_vector(m["k"], 2 * n, "mode k"));
  }
  if (c != 0.0 || !modes.empty()) {
    sp.smooth = [c, modes](const Eigen::VectorXd& x) {
      double v = c;
      for (const auto& [a, ph, k] : modes) v += a * std::cos(2 * std::numbers::pi * k.dot(x) + ph);
      return v;
    };
  }
  return sp;
}

psh::RadialMollifier mollifier(const json& cfg, int n) {
  const json kj = cfg.value("kernel", json::object());
  const std::string t = kj.value("type", std::string("polynomial"));
  if (t == "samples") {
    if (!kj.contains("samples")) throw ValidationError("kernel type samples needs a samples list");
    return psh::RadialMollifier::from_samples(n, doubles(kj["samples"]), true);
  }
  if (kj.contains("samples")) throw ValidationError("samples given for kernel type " + t);
  return t == "constant" ? psh::RadialMollifier::constant(n) : psh::RadialMollifier::polynomial(n);
}

std::string csv_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json state_json(const pde::SolveState& st) {
  json stages = json::array();
  for (const auto& s : st.stages) {
    stages.push_back({{"t", s.t},
                      {"dt", s.dt},
                      {"newtonIterations", s.newtonIterations},
                      {"residualSup", s.residualSup},
                      {"minConeMargin", s.minConeMargin},
                      {"slack", s.slack},
                      {"phiSup", s.phiSup}});
  }
  json trace = json::array();
  for (const auto& s : st.newtonTrace) {
    trace.push_back({{"t", s.t},
                     {"iteration", s.iteration},
                     {"residualSup", s.residualSup},
                     {"damping", s.damping},
                     {"linearIterations", s.linearIterations}});
  }
  return {{"t", st.t},
          {"slack", st.slack},
          {"residualSup", st.residualSup},
          {"minConeMargin", st.minConeMargin},
          {"argminPoint", st.argminPoint},
          {"c0", st.c0},
          {"phiSup", pde::sup_norm(st.phi)},
          {"stages", stages},
          {"newtonTrace", trace},
          {"rejectedSteps", st.rejectedSteps},
          {"warnings", st.warnings}};
}

// ---- kernel ----

Outcome kernel_cone(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto cs = coefficients(cfg);
  const auto lambda = doubles(cfg["lambda"]);
  if (static_cast<int>(lambda.size()) != cs.n()) throw ValidationError("lambda must have n entries");
  const kernel::EigenProfile lam(lambda);
  const auto r = kernel::cone_margin(cs, cfg.value("t", 1.0), lam);
  Outcome o;
  o.result = {{"margin", r.margin},
              {"satisfied", r.satisfied},
              {"perIndexLoad", r.perIndexLoad},
              {"lambdaSorted", std::vector<double>(lam.values().begin(), lam.values().end())}};
  return o;
}

Outcome kernel_fm(const Context& ctx) {
  const auto cs = coefficients(ctx.config);
  const auto b = kernel::compute_fm(cs, ctx.config.value("classRatio", 1.0));
  Outcome o;
  o.result = {{"fm", b.fm},
              {"termGarding", b.termGarding},
              {"termQuadratic", b.termQuadratic},
              {"termPower", b.termPower},
              {"termClassRatio", b.termClassRatio},
              {"termK", b.termK},
              {"minEigEI", b.minEigEI},
              {"K", b.K}};
  return o;
}

Outcome kernel_identities(const Context& ctx) {
  const auto checks = kernel::run_identity_suite(ctx.seed, ctx.config.value("samples", 1000));
  Outcome o;
  json list = json::array();
  std::string table = "name,samples,failures,worst\n";
  bool pass = true;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name}, {"samples", c.samples}, {"failures", c.failures}, {"worst", c.worst}});
    table += c.name + "," + std::to_string(c.samples) + "," + std::to_string(c.failures) + "," + csv_number(c.worst) + "\n";
    pass = pass && c.failures == 0;
  }
  o.result = {{"checks", list}, {"pass", pass}};
  o.table = table;
  o.code = pass ? 0 : 1;
  return o;
}

// ---- solve ----

Outcome solve_run(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto g = geometry(cfg);
  const auto cs = coefficients(cfg);
  const auto f = torus_field(ctx, cfg["f"], g);
  std::vector<double> reference;
  if (cfg.contains("reference")) {
    auto ref = load_grid(ctx, cfg["reference"].get<std::string>());
    if (ref.gridShape != g.gridShape) throw ValidationError("reference grid shape does not match geometry");
    reference = std::move(ref.values);
  }
  const auto st = pde::continuity_solve(g, cs, f, solver_options(ctx, cfg));
  Outcome o;
  o.result = state_json(st);
  o.result["converged"] = true;
  if (!reference.empty()) {
    pde::project_mean_zero(reference);
    double err = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) err = std::max(err, std::abs(st.phi[i] - reference[i]));
    o.result["recovery"] = {{"supError", err}};
  }
  o.timings = {{"solverSeconds", st.timings.totalSeconds}, {"linearSeconds", st.timings.linearSeconds}};
  o.grids.emplace_back("phi.grid", grid_of(g, st.phi));
  return o;
}

Outcome solve_manufacture(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto g = geometry(cfg);
  const auto cs = coefficients(cfg);
  const auto phi = torus_field(ctx, cfg["phiStar"], g);
  const auto mc = pde::manufacture(g, cs, phi);
  const auto ci = pde::cohomology_integrals(g, cs, mc.fGrid);
  Outcome o;
  o.result = {{"fMin", *std::min_element(mc.fGrid.begin(), mc.fGrid.end())},
              {"fMax", *std::max_element(mc.fGrid.begin(), mc.fGrid.end())},
              {"fMean", pde::mean(mc.fGrid)},
              {"phiStarSup", pde::sup_norm(mc.phiStar)},
              {"compatibilityDefect", *ci.defect},
              {"artifacts", json::array({"f.grid", "phi_star.grid"})}};
  o.grids.emplace_back("f.grid", grid_of(g, mc.fGrid));
  o.grids.emplace_back("phi_star.grid", grid_of(g, mc.phiStar));
  return o;
}

Outcome solve_classpath(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto g = geometry(cfg);
  const auto cs = coefficients(cfg);
  const auto f = torus_field(ctx, cfg["f"], g);
  const auto rep = pde::class_path_probe(g, cs, f, doubles(cfg["sList"]), solver_options(ctx, cfg));
  Outcome o;
  json entries = json::array();
  std::string table = "s,slackConstant,solvable,minConeMargin,stages,failure\n";
  for (const auto& e : rep.entries) {
    entries.push_back({{"s", e.s},
                       {"slackConstant", e.slackConstant},
                       {"solvable", e.solvable},
                       {"minConeMargin", e.minConeMargin},
                       {"stages", e.stages},
                       {"failure", e.failure}});
    table += csv_number(e.s) + "," + csv_number(e.slackConstant) + "," + (e.solvable ? "true" : "false") + "," +
             csv_number(e.minConeMargin) + "," + std::to_string(e.stages) + "," + e.failure + "\n";
  }
  o.result = {{"entries", entries}, {"upwardClosed", rep.upwardClosed}};
  o.result["smallestSolvable"] = rep.smallestSolvable ? json(*rep.smallestSolvable) : json(nullptr);
  o.table = table;
  o.files.emplace_back("classpath.csv", table);
  return o;
}

// ---- toric ----

toric::Rational rational(const json& j) {
  return j.is_string() ? toric::parse_rational(j.get<std::string>()) : toric::Rational(j.get<long long>());
}

toric::Polytope polytope(const json& pj, const std::string& name) {
  std::vector<toric::Point> pts;
  const std::size_t d = pj["vertices"][0].size();
  for (const auto& v : pj["vertices"]) {
    if (v.size() != d) throw ValidationError(name + " vertices have mixed dimensions");
    toric::Point p;
    for (const auto& x : v) p.push_back(rational(x));
    pts.push_back(std::move(p));
  }
  return toric::Polytope::from_points(static_cast<int>(d), pts);
}

json exact(const toric::Rational& r) { return {{"exact", toric::to_string(r)}, {"approx", toric::to_double(r)}}; }

Outcome toric_check(const Context& ctx) {
  const auto& cfg = ctx.config;
  std::map<std::string, std::string> labels;
  const json lj = cfg.value("labels", json::object());
  for (const auto& [k, v] : lj.items()) labels[k] = v.get<std::string>();
  const toric::ClassPolytopePair pair(polytope(cfg["omega"], "omega"), polytope(cfg["chi"], "chi"), labels);
  const int n = pair.dim();
  toric::ToricCoefficients tc{n, std::vector<toric::Rational>(n - 1, toric::Rational(0))};
  if (cfg.contains("c") == cfg.contains("jEquation")) throw ValidationError("give exactly one of c and jEquation");
  if (cfg.contains("c")) {
    if (static_cast<int>(cfg["c"].size()) != n - 1) throw ValidationError("c must have n - 1 entries");
    for (int k = 0; k < n - 1; ++k) tc.c[k] = rational(cfg["c"][k]);
  } else {
    const int k = cfg["jEquation"].get<int>();
    if (k > n - 1) throw ValidationError("jEquation index must lie in 1..n-1");
    tc.c[k - 1] = toric::jequation_constant(pair, k);
  }
  const auto rep = toric::check_criterion(pair, tc);
  json faces = json::array();
  for (const auto& f : rep.perFace) {
    faces.push_back({{"face", f.face},
                     {"codim", f.codim},
                     {"lhs", exact(f.lhs)},
                     {"rhsScale", exact(f.rhsScale)},
                     {"ratio", exact(f.ratio)},
                     {"conditioned", f.conditioned}});
  }
  json coeffs = json::array();
  for (const auto& c : tc.c) coeffs.push_back(toric::to_string(c));
  Outcome o;
  o.result = {{"dimension", n},
              {"coefficients", coeffs},
              {"pass", rep.pass},
              {"epsilonUniform", exact(rep.epsilonUniform)},
              {"worstFace", rep.worstFace},
              {"wholeSpaceValue", exact(rep.wholeSpaceValue)},
              {"scope", rep.scope},
              {"faces", faces}};
  o.code = rep.pass ? 0 : 3;
  return o;
}

// ---- psh ----

Outcome psh_mollify(const Context& ctx) {
  const auto& cfg = ctx.config;
  const int n = cfg["n"].get<int>();
  const auto sp = potential(cfg);
  const auto rho = mollifier(cfg, n);
  psh::BallQuadrature q;
  const json qj = cfg.value("quadrature", json::object());
  q.radial = qj.value("radial", q.radial);
  q.angular = qj.value("angular", q.angular);
  q.polar = qj.value("polar", q.polar);
  const double delta = cfg["delta"].get<double>();
  json values = json::array();
  for (const auto& p : cfg["points"]) values.push_back(psh::mollify(sp, rho, delta, read_vector(p, 2 * n, "point"), q));
  Outcome o;
  o.result = {{"values", values}, {"delta", delta}, {"kernel", rho.name()}};
  return o;
}

Outcome psh_lelong(const Context& ctx) {
  const auto& cfg = ctx.config;
  const int n = cfg["n"].get<int>();
  const auto sp = potential(cfg);
  const Eigen::VectorXd x = cfg.contains("point") ? read_vector(cfg["point"], 2 * n, "point") : sp.center;
  const double r = cfg["r"].get<double>();
  const auto deltas = cfg.contains("deltas") ? doubles(cfg["deltas"]) : std::vector<double>{r / 8, r / 16, r / 32};
  psh::SupSampling s;
  const json sj = cfg.value("sampling", json::object());
  s.radial = sj.value("radial", s.radial);
  s.angular = sj.value("angular", s.angular);
  const auto lr = psh::lelong_level(sp, x, deltas, r, s);
  json table = json::array();
  std::string csv = "delta,nu,sup\n";
  for (std::size_t i = 0; i < lr.deltas.size(); ++i) {
    table.push_back({{"delta", lr.deltas[i]}, {"nu", lr.nuAtDelta[i]}, {"sup", lr.supAtDelta[i]}});
    csv += csv_number(lr.deltas[i]) + "," + csv_number(lr.nuAtDelta[i]) + "," + csv_number(lr.supAtDelta[i]) + "\n";
  }
  Outcome o;
  o.result = {{"r", lr.r}, {"supOuter", lr.supOuter}, {"extrapolated", lr.extrapolated}, {"table", table}};
  o.table = csv;
  o.files.emplace_back("lelong.csv", csv);
  return o;
}

Outcome psh_cn(const Context& ctx) {
  const int n = ctx.config["n"].get<int>();
  const auto rho = mollifier(ctx.config, n);
  Outcome o;
  o.result = {{"cn", psh::compute_cn(rho, n)}, {"normalizationDefect", rho.normalization_defect()}, {"kernel", rho.name()}};
  return o;
}

Outcome psh_glue(const Context& ctx) {
  const auto& cfg = ctx.config;
  const auto cs = coefficients(cfg);
  const int n = cs.n();
  const Eigen::MatrixXd W0 = cfg.contains("W0") ? read_matrix(cfg["W0"], n, "W0") : Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd X = cfg.contains("X") ? read_matrix(cfg["X"], n, "X") : Eigen::MatrixXd::Identity(n, n);
  auto quadratic = [&](const json& qj, const std::string& name) {
    const Eigen::MatrixXd A = read_matrix(qj["A"], n, name + ".A");
    const Eigen::VectorXd b = qj.contains("b") ? read_vector(qj["b"], n, name + ".b") : Eigen::VectorXd::Zero(n);
    const double c = qj.value("constant", 0.0);
    return [A, b, c](const Eigen::VectorXd& x) {
      psh::Jet j;
      j.value = 0.5 * x.dot(A * x) + b.dot(x) + c;
      j.grad = 0.5 * (A + A.transpose()) * x + b;
      j.hess = 0.5 * (A + A.transpose());
      return j;
    };
  };
  const auto local = quadratic(cfg["local"], "local");
  const auto global = quadratic(cfg["global"], "global");
  std::vector<psh::Jet> lj, gj;
  std::vector<Eigen::VectorXd> pts;
  for (const auto& p : cfg["points"]) {
    pts.push_back(read_vector(p, n, "point"));
    lj.push_back(local(pts.back()));
    gj.push_back(global(pts.back()));
  }
  const auto rep = psh::glue_potentials(lj, gj, cfg["eta"].get<double>(), cfg.value("offset", 0.0), cs, W0, X);
  static const char* kRegion[] = {"global", "local", "blend"};
  json points = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    points.push_back({{"x", to_json(pts[i])},
                      {"region", kRegion[rep.region[i]]},
                      {"value", rep.glued[i].value},
                      {"margin", rep.margin[i]},
                      {"inputMinMargin", rep.inputMinMargin[i]}});
  }
  Outcome o;
  o.result = {{"minMargin", rep.minMargin},
              {"blendPoints", rep.blendPoints},
              {"conflicts", rep.conflicts},
              {"marginLoss", rep.marginLoss},
              {"preserved", rep.marginLoss.empty()},
              {"points", points}};
  return o;
}

}  // namespace

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table = [] {
    const json coeff = coefficient_props();
    const json solveBase = with(coeff, {{"geometry", geometry_schema()}});
    std::map<std::string, Command> t;
    t["kernel cone"] = {top(with(coeff, {{"lambda", array(positive(), 1)}, {"t", json{{"type", "number"}, {"minimum", 0}, {"maximum", 1}}}}),
                            {"n", "c", "lambda"}),
                        kernel_cone};
    t["kernel fm"] = {top(with(coeff, {{"classRatio", positive()}}), {"n", "c"}), kernel_fm};
    t["kernel identities"] = {top({{"samples", integer(1, 1000000)}}, {}), kernel_identities};
    t["solve run"] = {top(with(solveBase, {{"f", torus_field_schema()}, {"solver", solver_schema()}, {"reference", type("string")}}),
                          {"n", "c", "geometry", "f"}),
                      solve_run};
    t["solve manufacture"] = {top(with(solveBase, {{"phiStar", torus_field_schema()}}), {"n", "c", "geometry", "phiStar"}),
                              solve_manufacture};
    t["solve classpath"] = {top(with(solveBase, {{"f", torus_field_schema()},
                                                 {"sList", array(json{{"type", "number"}, {"exclusiveMinimum", -1}}, 1)},
                                                 {"solver", solver_schema()}}),
                                {"n", "c", "geometry", "f", "sList"}),
                            solve_classpath};
    t["toric check"] = {top({{"omega", polytope_schema()},
                             {"chi", polytope_schema()},
                             {"labels", json{{"type", "object"}, {"additionalProperties", type("string")}}},
                             {"c", array(type("rational"))},
                             {"jEquation", integer(1, 2)}},
                            {"omega", "chi"}),
                        toric_check};
    const json pshN = {{"n", integer(1, 2)}};
    t["psh mollify"] = {top(with(pshN, {{"potential", potential_schema()},
                                        {"points", array(array(number(), 2, 4), 1)},
                                        {"delta", positive()},
                                        {"kernel", mollifier_schema()},
                                        {"quadrature", object({{"radial", integer(1, 512)}, {"angular", integer(8, 4096)}, {"polar", integer(1, 512)}})}}),
                            {"n", "potential", "points", "delta"}),
                        psh_mollify};
    t["psh lelong"] = {top(with(pshN, {{"potential", potential_schema()},
                                       {"point", array(number(), 2, 4)},
                                       {"r", positive()},
                                       {"deltas", array(positive(), 1)},
                                       {"sampling", object({{"radial", integer(1, 4096)}, {"angular", integer(8, 4096)}})}}),
                           {"n", "potential", "r"}),
                       psh_lelong, true};
    t["psh cn"] = {top({{"n", integer(1, 4)}, {"kernel", mollifier_schema()}}, {"n"}), psh_cn};
    t["psh glue"] = {top(with(coeff, {{"W0", matrix()},
                                      {"X", matrix()},
                                      {"eta", positive()},
                                      {"offset", number()},
                                      {"local", quadratic_schema()},
                                      {"global", quadratic_schema()},
                                      {"points", array(array(number(), 1), 1)}}),
                         {"n", "c", "eta", "local", "global", "points"}),
                     psh_glue};
    return t;
  }();
  return table;
}

}  // namespace gma::cli
