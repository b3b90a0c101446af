// Curvature identity verification suites.
//
// A StructureContext bundles one left-invariant geometry (algebra, metric,
// connection, curvature, orthonormal frame) together with the optional
// Hermitian decorations: a designated almost complex structure j, a
// commuting partner jbar (from the two-eigenvalue Ricci split or from the
// root flip), the Ricci split itself, and the flip data.
//
// Each verify_* function checks one pointwise identity or inequality chain
// and returns an IdentityReport with the relative residual, a per-term
// breakdown, and a pass flag.  run_suite maps the CLI suite tokens onto
// these checks, deriving auxiliary two-eigenvalue contexts where needed.

#ifndef LIEKAHLER_IDENTITIES_HPP
#define LIEKAHLER_IDENTITIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liekahler/algebra_core.hpp"
#include "liekahler/hermitian.hpp"
#include "liekahler/jalgebra.hpp"
#include "liekahler/ricci_split.hpp"

namespace liekahler {

struct IdentityReport {
  std::string name;
  double residual = 0.0;  // relative residual (0 when not applicable)
  double tol = 0.0;
  bool pass = true;
  bool applicable = true;
  std::map<std::string, double> terms;
  std::string note;
};

struct StructureContext {
  std::string name;
  LieAlgebraData alg;
  MetricData metric;
  ConnectionCoefficients conn;
  CurvaturePackage curv;
  FrameGeometry geo;
  std::optional<AlmostComplexData> j;
  std::optional<AlmostComplexData> jbar;
  std::optional<RicciSplit> split;
  std::optional<FlipStructure> flip;
  std::optional<JAlgebraData> jdata;
};

// Computes connection, curvature and frame; j is carried along untouched.
StructureContext make_context(const std::string& name, const LieAlgebraData& alg,
                              const MetricData& g, std::optional<AlmostComplexData> j);

// Best-effort enrichment: attach the two-eigenvalue Ricci split and the
// induced jbar.  Quietly does nothing when the input is Einstein; all other
// split errors propagate.
void attach_split(StructureContext& ctx);

// A derived context with one metric block rescaled by t: the E_mu block when
// a Ricci split is present, otherwise the flip plane.  The designated j is
// carried over (it stays Kähler in both cases), and attach_split is applied
// to the result.
StructureContext deform_context(const StructureContext& ctx, double t);

// ---------------------------------------------------------------------------
// Individual identity checks.  All residuals are relative to the largest
// per-term magnitude (floored at 1).

// Hodge vs rough Laplacian on an invariant 2-form: both the plain
// Ricci/curvature form and the scalar+Weyl+traceless-Ricci form of the
// right-hand side.  When pairing_j is given, additionally pairs the
// scalar+Weyl right-hand side against psi (the energy identity used for
// almost-Kähler fundamental forms).
IdentityReport verify_two_form_laplacian(const StructureContext& ctx, const Mat& psi_basis,
                                         const AlmostComplexData* pairing_j, double tol,
                                         const std::string& name);

// rho* - rho = 1/2 nabla*nabla Omega,  s* - s = |nabla Omega|^2, and the
// comparison |nabla J|^2 = 2 |nabla Omega|^2.
IdentityReport verify_star_scalar_relation(const StructureContext& ctx,
                                           const AlmostComplexData& j, double tol,
                                           const std::string& name);

// Decomposition of the curvature operator on anti-invariant 2-forms: the
// commuting part against the nabla-Omega outer product, the anti-commuting
// part against its eight-term curvature expression, and the fourth-order
// contraction <K(oR o oR), Omega x Omega> = 1/2 |phi|^2 - 4 |R~''|^2.
IdentityReport verify_anti_invariant_curvature(const StructureContext& ctx,
                                               const AlmostComplexData& j, double tol,
                                               const std::string& name);

// The eight-term balance obtained by expanding Delta(s* - s) for an
// almost-Kähler structure; on an invariant geometry s* - s is constant, so
// the right-hand side must sum to zero.
IdentityReport verify_gap_laplacian_balance(const StructureContext& ctx,
                                            const AlmostComplexData& j, double tol,
                                            const std::string& name);

// The integrand 4<rho,phi> - 4<rho, nabla*nabla Omega> - |nabla*nabla
// Omega|^2 - |phi|^2, with the Einstein-case reductions when applicable.
IdentityReport sekigawa_integrand_report(const StructureContext& ctx, const AlmostComplexData& j,
                                         double tol, const std::string& name);

// The energy chain for a two-eigenvalue Kähler context and its commuting
// almost-Kähler partner: rho_bar = lambda alpha - mu beta, the pairing
// equality <alpha, nabla*nabla Omega_bar> = 1/2 |nabla Omega_bar|^2, the
// semipositivity of alpha and phi_bar, and the resulting bound on
// <rho_bar, phi_bar> - <rho_bar, nabla*nabla Omega_bar>.
IdentityReport verify_split_energy_chain(const StructureContext& ctx, double tol,
                                         const std::string& name);

// Block structure of the Nijenhuis tensor of jbar over E_lambda/E_mu for the
// metric family member g_t: all blocks must vanish except <N(A,B),B'> with
// A in E_lambda and B,B' in E_mu, and E_lambda must be totally geodesic.
IdentityReport nijenhuis_block_report(const StructureContext& ctx, double t, double tol,
                                      const std::string& name);

// ---------------------------------------------------------------------------
// Suite driver

inline const std::vector<std::string> kSuiteNames = {
    "weitzenboeck", "rstar", "gray", "prop2", "sekigawa", "theorem0", "remark4"};

std::vector<IdentityReport> run_suite(const StructureContext& ctx, const std::string& suite,
                                      double tol = tols::kDerivedIdentity);

}  // namespace liekahler

#endif  // LIEKAHLER_IDENTITIES_HPP
