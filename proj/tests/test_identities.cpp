// Integration tests for the identity suites: every suite on every catalog
// example, plus targeted checks of individual reports (term values, derived
// anchors, inapplicability paths, error handling).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "liekahler/catalog.hpp"
#include "liekahler/identities.hpp"

using namespace liekahler;

namespace {

constexpr double kTol = 1e-8;

const IdentityReport* find_report(const std::vector<IdentityReport>& reports,
                                  const std::string& name) {
  for (const auto& r : reports)
    if (r.name == name) return &r;
  return nullptr;
}

double term(const IdentityReport& rep, const std::string& key) {
  const auto it = rep.terms.find(key);
  REQUIRE(it != rep.terms.end());
  return it->second;
}

}  // namespace

TEST_CASE("every applicable suite passes on every catalog example") {
  for (const std::string& name : example_names()) {
    const StructureContext ctx = make_example(name);
    const auto reports = run_suite(ctx, "all", kTol);
    CHECK(!reports.empty());
    for (const auto& rep : reports) {
      if (!rep.applicable) continue;
      INFO("example: ", name, ", report: ", rep.name, ", residual: ", rep.residual,
           ", note: ", rep.note);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("unknown suite token is rejected") {
  const StructureContext ctx = make_example("hyperbolic");
  CHECK_THROWS_AS((void)run_suite(ctx, "bogus"), InputError);
}

TEST_CASE("laplacian identity holds for a non-fundamental 2-form") {
  const StructureContext ctx = make_example("product");
  Mat psi(4, 4);
  psi(0, 1) = 1.0;
  psi(1, 0) = -1.0;
  const IdentityReport rep = verify_two_form_laplacian(ctx, psi, nullptr, kTol, "single_block");
  CHECK(rep.applicable);
  CHECK(rep.pass);
}

TEST_CASE("dimension 2 skips the scalar/Weyl right-hand side but checks the rest") {
  const StructureContext ctx = make_example("hyperbolic");
  REQUIRE(ctx.j);
  const auto reports = run_suite(ctx, "weitzenboeck", kTol);
  const IdentityReport* rep = find_report(reports, "weitzenboeck[omega]");
  REQUIRE(rep != nullptr);
  CHECK(rep->pass);
  CHECK(rep->note.find("dimension 2") != std::string::npos);
}

TEST_CASE("rstar on the tube: the defect s* - s equals |nabla Omega|^2 > 0 for jbar") {
  const StructureContext ctx = make_example("lorentz_tube");
  const auto reports = run_suite(ctx, "rstar", kTol);

  const IdentityReport* rj = find_report(reports, "rstar[j]");
  REQUIRE(rj != nullptr);
  CHECK(rj->pass);
  CHECK(std::fabs(term(*rj, "gap")) <= kTol);  // j is Kähler: s* = s

  const IdentityReport* rb = find_report(reports, "rstar[jbar]");
  REQUIRE(rb != nullptr);
  CHECK(rb->pass);
  CHECK(term(*rb, "gap") > 1e-6);  // jbar is strictly almost-Kähler
  CHECK(term(*rb, "gap") ==
        doctest::Approx(term(*rb, "nabla_omega_sq")).epsilon(1e-10));
  CHECK(term(*rb, "s") == doctest::Approx(-6.0).epsilon(1e-10));
}

TEST_CASE("theorem0 on the tube uses the derived anchor with eigenvalues -2, -1") {
  const StructureContext ctx = make_example("lorentz_tube");
  const auto reports = run_suite(ctx, "theorem0", kTol);
  REQUIRE(reports.size() == 1);
  const IdentityReport& rep = reports[0];
  CHECK(rep.applicable);
  CHECK(rep.pass);
  CHECK(term(rep, "lambda") == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(term(rep, "mu") == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(term(rep, "nabla_omega_bar_sq") > 1e-6);
  CHECK(term(rep, "chain_slack") <= kTol);
  // The tube itself is Einstein, so the chain runs on a derived family member.
  CHECK(rep.note.find("derived context") != std::string::npos);
}

TEST_CASE("theorem0 runs natively on the product split") {
  const StructureContext ctx = make_example("product");
  const auto reports = run_suite(ctx, "theorem0", kTol);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].applicable);
  CHECK(reports[0].pass);
  CHECK(reports[0].note.find("derived context") == std::string::npos);
  CHECK(term(reports[0], "lambda") == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(term(reports[0], "mu") == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("suites with no two-eigenvalue anchor report inapplicable") {
  for (const char* name : {"abelian", "chn"}) {
    const StructureContext ctx = make_example(name);
    for (const char* suite : {"theorem0", "remark4"}) {
      const auto reports = run_suite(ctx, suite, kTol);
      REQUIRE(reports.size() == 1);
      INFO("example: ", name, ", suite: ", suite);
      CHECK_FALSE(reports[0].applicable);
      CHECK(reports[0].pass);  // inapplicable reports never fail the run
    }
  }
}

TEST_CASE("remark4 on the tube: only the allowed Nijenhuis blocks survive") {
  const StructureContext ctx = make_example("lorentz_tube");
  const auto reports = run_suite(ctx, "remark4", kTol);
  REQUIRE(reports.size() == 3);  // t = 1, 0.5, 2
  for (const auto& rep : reports) {
    INFO("report: ", rep.name);
    CHECK(rep.applicable);
    CHECK(rep.pass);
    CHECK(term(rep, "nijenhuis_norm") > 1e-6);
    CHECK(term(rep, "forbidden_block_max") <= kTol);
    CHECK(term(rep, "ricci_invariance_residual") <= kTol);
    CHECK(term(rep, "total_geodesy_residual") <= kTol);
  }
}

TEST_CASE("prop2 balance terms on the tube jbar sum to zero but are not all zero") {
  const StructureContext ctx = make_example("lorentz_tube");
  REQUIRE(ctx.jbar);
  const IdentityReport rep =
      verify_gap_laplacian_balance(ctx, *ctx.jbar, kTol, "balance");
  CHECK(rep.pass);
  CHECK(std::fabs(term(rep, "sum")) <= kTol * 100);
  CHECK(std::fabs(term(rep, "t5_laplacian_sq")) > 1e-6);
  CHECK(std::fabs(term(rep, "t6_phi_sq")) > 1e-6);
}

TEST_CASE("sekigawa on the Einstein tube applies the Einstein reductions") {
  const StructureContext ctx = make_example("lorentz_tube");
  REQUIRE(ctx.jbar);
  const IdentityReport rep = sekigawa_integrand_report(ctx, *ctx.jbar, kTol, "sek");
  CHECK(rep.pass);
  CHECK(term(rep, "einstein") == 1.0);
  CHECK(std::fabs(term(rep, "einstein_residual_2rhophi")) <= kTol);
  CHECK(std::fabs(term(rep, "einstein_residual_rholap")) <= kTol);
  CHECK(term(rep, "phi_min_eigenvalue") >= -kTol);
  CHECK(rep.note.find("no integrability forced") != std::string::npos);
}

TEST_CASE("deform_context rescales the E_mu block and re-enriches") {
  const StructureContext ctx = make_example("product");
  REQUIRE(ctx.split);

  // Generic t: metric agrees with deform_metric and the new split has the
  // rescaled eigenvalue mu/t.
  const StructureContext third = deform_context(ctx, 0.3);
  const DeformedMetric dm = deform_metric(ctx.metric, *ctx.split, 0.3);
  CHECK(max_abs(third.metric.gram - dm.metric.gram) <= 1e-12);
  REQUIRE(third.split);
  CHECK(third.split->lambda == doctest::Approx(-1.0 / 0.3).epsilon(1e-9));
  CHECK(third.split->mu == doctest::Approx(-2.0).epsilon(1e-9));

  // t = mu/lambda = 0.5 is exactly the Einstein member: nothing to split.
  const StructureContext half = deform_context(ctx, 0.5);
  CHECK_FALSE(half.split.has_value());
  CHECK_FALSE(half.jbar.has_value());

  CHECK_THROWS_AS((void)deform_context(ctx, -0.5), InputError);
}

TEST_CASE("deform_context on the tube scales the flip plane and splits the Ricci tensor") {
  const StructureContext ctx = make_example("lorentz_tube");
  REQUIRE(ctx.flip);
  REQUIRE_FALSE(ctx.split.has_value());  // Einstein start
  const StructureContext half = deform_context(ctx, 0.5);
  REQUIRE(half.split);
  CHECK(half.split->lambda == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(half.split->mu == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(half.split->dim_lambda == 2);  // the flipped plane
  CHECK(half.split->dim_mu == ctx.alg.dim - 2);
}

TEST_CASE("deform_context refuses when nothing can be deformed") {
  const StructureContext ctx = make_example("abelian");
  CHECK_THROWS_AS((void)deform_context(ctx, 0.5), InputError);
}

TEST_CASE("gray on Kähler structures reduces to the parallel-form statement") {
  const StructureContext ctx = make_example("chn");
  REQUIRE(ctx.j);
  const IdentityReport rep = verify_anti_invariant_curvature(ctx, *ctx.j, kTol, "gray_chn");
  CHECK(rep.pass);
  CHECK(rep.note.find("parallel") != std::string::npos);
}
