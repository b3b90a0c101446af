// Command-line front end: algebra document I/O, validation, Ricci
// splitting / metric deformation, curvature identity suites, and example
// export.
//
// Exit codes: 0 all requested checks pass; 2 input or validation error
// (including malformed documents and unusable parameters); 3 Einstein input
// where a two-eigenvalue split is required; 4 more than two Ricci
// eigenvalue clusters; 5 an identity check failed its tolerance.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "liekahler/catalog.hpp"
#include "liekahler/document.hpp"
#include "liekahler/hermitian.hpp"
#include "liekahler/identities.hpp"
#include "liekahler/jalgebra.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace liekahler;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEinstein = 3;
constexpr int kExitTooMany = 4;
constexpr int kExitIdentity = 5;

struct Options {
  std::string input;
  std::string example;
  std::optional<int> n;
  std::vector<double> curvatures;
  std::string out;
  std::vector<double> t_values;
  bool einstein = false;
  std::string suite = "all";
  double tol_identity = tols::kDerivedIdentity;
};

std::string path_stem(const std::string& path) {
  const size_t slash = path.find_last_of("/\\");
  const size_t start = (slash == std::string::npos) ? 0 : slash + 1;
  const size_t dot = path.find_last_of('.');
  const size_t end = (dot == std::string::npos || dot < start) ? path.size() : dot;
  return path.substr(start, end - start);
}

StructureContext load_context(const Options& o) {
  if (!o.example.empty()) {
    ExampleParams params;
    params.n = o.n;
    params.curvatures = o.curvatures;
    return make_example(o.example, params);
  }
  if (!o.input.empty()) return document_context(load_document(o.input), path_stem(o.input));
  throw InputError("provide an input document or --example NAME");
}

// Validation shared by every verb: algebra + metric axioms, the geometry
// axiom suite, and the Hermitian / j-algebra checks when applicable.  The
// sub-reports overlap (validate_jalgebra re-runs the algebra axioms on the
// same data), so checks are deduplicated by name, first occurrence kept.
ValidationReport full_validation(const StructureContext& ctx) {
  // axiom_suite already includes the algebra/metric axioms.
  ValidationReport vr = axiom_suite(ctx.alg, ctx.metric, ctx.conn, ctx.curv);
  auto merge = [&vr](const ValidationReport& extra) {
    for (const CheckResult& c : extra.checks)
      if (vr.find(c.name) == nullptr) vr.checks.push_back(c);
  };
  if (ctx.j) merge(validate_almost_complex(ctx.metric, *ctx.j));
  if (ctx.jdata) merge(validate_jalgebra(*ctx.jdata));
  return vr;
}

void print_validation(const ValidationReport& vr) {
  for (const CheckResult& c : vr.checks)
    std::printf("  %-34s %-4s residual=%.3e%s%s\n", c.name.c_str(), c.pass ? "ok" : "FAIL",
                c.residual, c.note.empty() ? "" : "  ", c.note.c_str());
}

json validation_json(const ValidationReport& vr) {
  json arr = json::array();
  for (const CheckResult& c : vr.checks) {
    json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tol"] = c.tol;
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(std::move(e));
  }
  return arr;
}

json report_json(const IdentityReport& r) {
  json e;
  e["name"] = r.name;
  e["applicable"] = r.applicable;
  e["residual"] = r.residual;
  e["tol"] = r.tol;
  e["pass"] = r.pass;
  if (!r.terms.empty()) {
    json terms;
    for (const auto& [key, val] : r.terms) terms[key] = val;
    e["terms"] = std::move(terms);
  }
  if (!r.note.empty()) e["note"] = r.note;
  return e;
}

json summary_json(const StructureContext& ctx) {
  json s;
  s["dim"] = ctx.alg.dim;
  s["s"] = ctx.curv.scal;
  s["flat"] = ctx.curv.riem.max_abs() <= tols::kAxiom;
  json eig = json::array();
  for (const EigenCluster& c : symmetric_eigensplit(ctx.curv.ricci, ctx.metric)) {
    json e;
    e["value"] = c.value;
    e["multiplicity"] = c.vectors.cols();
    eig.push_back(std::move(e));
  }
  s["ricci_eigenvalues"] = std::move(eig);
  if (ctx.j) {
    const RicciForms rf = ricci_forms(ctx.alg, ctx.metric, *ctx.j);
    s["s_star"] = rf.s_star;
  }
  return s;
}

void write_report(const std::string& out, const json& root) {
  if (out.empty()) return;
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << root.dump(2) << "\n";
  std::printf("report written to %s\n", out.c_str());
}

void print_summary(const StructureContext& ctx, const json& s) {
  std::printf("context: %s (dim %d)\n", ctx.name.c_str(), ctx.alg.dim);
  std::printf("  s = %.12g%s\n", ctx.curv.scal, s["flat"].get<bool>() ? "  (flat)" : "");
  if (s.contains("s_star")) std::printf("  s* = %.12g\n", s["s_star"].get<double>());
  std::string eig;
  for (const json& e : s["ricci_eigenvalues"]) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g (x%d)", e["value"].get<double>(),
                  e["multiplicity"].get<int>());
    eig += (eig.empty() ? "" : ", ") + std::string(buf);
  }
  std::printf("  ricci eigenvalues: %s\n", eig.c_str());
}

int cmd_check(const Options& o) {
  const StructureContext ctx = load_context(o);
  const ValidationReport vr = full_validation(ctx);
  const json summary = summary_json(ctx);
  print_summary(ctx, summary);
  print_validation(vr);
  json root;
  root["schema_version"] = kSchemaVersion;
  root["command"] = "check";
  root["context"] = ctx.name;
  root["summary"] = summary;
  root["validation"] = validation_json(vr);
  root["pass"] = vr.pass();
  write_report(o.out, root);
  if (!vr.pass()) {
    std::fprintf(stderr, "validation failed\n");
    return kExitInput;
  }
  return kExitOk;
}

int cmd_split(const Options& o) {
  const StructureContext ctx = load_context(o);
  const ValidationReport vr = full_validation(ctx);
  if (!vr.pass()) {
    print_validation(vr);
    std::fprintf(stderr, "validation failed\n");
    return kExitInput;
  }
  if (!ctx.j) throw InputError("split requires an almost complex structure");
  const RicciSplit sp = split_ricci(ctx.alg, ctx.metric, *ctx.j);

  std::printf("context: %s (dim %d)\n", ctx.name.c_str(), ctx.alg.dim);
  std::printf("  lambda = %.12g (dim %d),  mu = %.12g (dim %d)\n", sp.lambda, sp.dim_lambda,
              sp.mu, sp.dim_mu);

  json root;
  root["schema_version"] = kSchemaVersion;
  root["command"] = "split";
  root["context"] = ctx.name;
  root["summary"] = summary_json(ctx);
  json spj;
  spj["lambda"] = sp.lambda;
  spj["mu"] = sp.mu;
  spj["dim_lambda"] = sp.dim_lambda;
  spj["dim_mu"] = sp.dim_mu;
  root["split"] = std::move(spj);

  bool ok = true;
  const AlmostComplexData jbar = build_jbar(*ctx.j, sp);
  {
    // Closedness of the partner's fundamental form.
    const Mat omega_bar = fundamental_form(ctx.metric, jbar);
    const double res =
        d_form(ctx.alg, omega_bar).max_abs() / std::max(1.0, max_abs(omega_bar));
    std::printf("  d(omega_bar) residual = %.3e\n", res);
    root["jbar_closedness_residual"] = res;
    ok = ok && res <= o.tol_identity;
  }

  json family = json::array();
  for (double t : o.t_values) {
    const DeformedMetric dm = deform_metric(ctx.metric, sp, t);
    const ConnectionCoefficients conn_t = levi_civita(ctx.alg, dm.metric);
    const CurvaturePackage curv_t = curvature(ctx.alg, dm.metric, conn_t);
    const double res =
        max_abs(curv_t.ricci - ctx.curv.ricci) / std::max(1.0, max_abs(ctx.curv.ricci));
    std::printf("  t = %-8g ricci invariance residual = %.3e\n", t, res);
    json e;
    e["t"] = t;
    e["ricci_invariance_residual"] = res;
    e["s"] = curv_t.scal;
    family.push_back(std::move(e));
    ok = ok && res <= o.tol_identity;
  }
  if (!family.empty()) root["family"] = std::move(family);

  if (o.einstein) {
    const DeformedMetric dm = einstein_normalize(ctx.metric, sp);
    const ConnectionCoefficients conn_t = levi_civita(ctx.alg, dm.metric);
    const CurvaturePackage curv_t = curvature(ctx.alg, dm.metric, conn_t);
    Mat target = dm.metric.gram;
    const double res = max_abs(curv_t.ricci - sp.lambda * target) /
                       std::max(1.0, max_abs(curv_t.ricci));
    std::printf("  einstein t = %.12g, residual = %.3e, s = %.12g\n", dm.t, res, curv_t.scal);
    json e;
    e["t"] = dm.t;
    e["einstein_residual"] = res;
    e["s"] = curv_t.scal;
    root["einstein"] = std::move(e);
    ok = ok && res <= o.tol_identity;
  }

  root["pass"] = ok;
  write_report(o.out, root);
  return ok ? kExitOk : kExitIdentity;
}

int cmd_verify(const Options& o) {
  const StructureContext ctx = load_context(o);
  const ValidationReport vr = full_validation(ctx);
  if (!vr.pass()) {
    print_validation(vr);
    std::fprintf(stderr, "validation failed\n");
    return kExitInput;
  }
  std::vector<std::string> suites;
  {
    std::string cur;
    for (char c : o.suite + ",") {
      if (c == ',') {
        if (!cur.empty()) suites.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  if (suites.empty()) suites.push_back("all");

  std::printf("context: %s (dim %d)\n", ctx.name.c_str(), ctx.alg.dim);
  json reports = json::array();
  bool ok = true;
  for (const std::string& s : suites) {
    for (const IdentityReport& r : run_suite(ctx, s, o.tol_identity)) {
      if (!r.applicable) {
        std::printf("  %-28s n/a   %s\n", r.name.c_str(), r.note.c_str());
      } else {
        std::printf("  %-28s %-4s residual=%.3e%s%s\n", r.name.c_str(),
                    r.pass ? "ok" : "FAIL", r.residual, r.note.empty() ? "" : "  ",
                    r.note.c_str());
        ok = ok && r.pass;
      }
      reports.push_back(report_json(r));
    }
  }
  json root;
  root["schema_version"] = kSchemaVersion;
  root["command"] = "verify";
  root["context"] = ctx.name;
  root["summary"] = summary_json(ctx);
  root["reports"] = std::move(reports);
  root["pass"] = ok;
  write_report(o.out, root);
  if (!ok) std::fprintf(stderr, "identity check failed\n");
  return ok ? kExitOk : kExitIdentity;
}

int cmd_export(const Options& o) {
  if (o.example.empty()) throw InputError("export requires --example NAME");
  if (o.out.empty()) throw InputError("export requires --out FILE");
  ExampleParams params;
  params.n = o.n;
  params.curvatures = o.curvatures;
  const AlgebraDocument doc = document_of_example(o.example, params);
  save_document(doc, o.out);
  std::printf("wrote %s (dim %d)\n", o.out.c_str(), doc.dim);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"left-invariant Kähler / almost-Kähler geometry toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_source_opts = [&](CLI::App* cmd, bool with_input) {
    if (with_input)
      cmd->add_option("input", o.input, "algebra document (JSON)")
          ->check(CLI::ExistingFile);
    cmd->add_option("--example", o.example, "built-in example name");
    cmd->add_option("--n", o.n, "example size parameter");
    cmd->add_option("--curvatures", o.curvatures, "comma-separated factor curvatures")
        ->delimiter(',');
    cmd->add_option("--out", o.out, "write a JSON report/document here");
  };

  CLI::App* check = app.add_subcommand("check", "validate an algebra document or example");
  add_source_opts(check, true);

  CLI::App* split = app.add_subcommand("split", "two-eigenvalue Ricci split and deformations");
  add_source_opts(split, true);
  split->add_option("--t", o.t_values, "deformation parameters")->delimiter(',');
  split->add_flag("--einstein", o.einstein, "apply the Einstein normalization");
  split->add_option("--tol-identity", o.tol_identity, "tolerance for derived identities");

  CLI::App* verify = app.add_subcommand("verify", "run curvature identity suites");
  add_source_opts(verify, true);
  verify->add_option("--suite", o.suite,
                     "comma-separated suites: weitzenboeck,rstar,gray,prop2,sekigawa,"
                     "theorem0,remark4,all");
  verify->add_option("--tol-identity", o.tol_identity, "tolerance for derived identities");

  CLI::App* exp = app.add_subcommand("export", "write a built-in example as a document");
  add_source_opts(exp, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (check->parsed()) return cmd_check(o);
    if (split->parsed()) return cmd_split(o);
    if (verify->parsed()) return cmd_verify(o);
    if (exp->parsed()) return cmd_export(o);
    return kExitInput;
  } catch (const EinsteinInputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitEinstein;
  } catch (const TooManyEigenvaluesError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitTooMany;
  } catch (const Error& e) {
    // InputError, NotSameSign, HypothesisFailed, Structural: unusable input.
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInput;
  }
}
