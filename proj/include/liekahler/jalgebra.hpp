// Normal j-algebras: solvable Lie algebras carrying an integrable complex
// structure j and an admissible 1-form omega whose induced bilinear form
// <X,Y> = omega([jX, Y]) is a positive-definite inner product.  These are
// the infinitesimal models of homogeneous bounded domains.
//
// The module provides validation, the Piatetskii-Shapiro root decomposition
// of n = [s,s] under ad of the abelian complement a, two concrete model
// families (the complex hyperbolic space and the tube domain over the
// Lorentz cone), the rank-one flip construction that produces a commuting
// almost complex structure from a closed root 2-form, and a consistency
// check of the Ricci form against the Koszul 1-form.

#ifndef LIEKAHLER_JALGEBRA_HPP
#define LIEKAHLER_JALGEBRA_HPP

#include <optional>
#include <vector>

#include "liekahler/algebra_core.hpp"
#include "liekahler/hermitian.hpp"

namespace liekahler {

struct JAlgebraData {
  LieAlgebraData alg;
  AlmostComplexData j;
  Vec omega;  // admissible 1-form, basis components
};

// Inner product induced by (j, omega): G(p,q) = omega([j e_p, e_q]).
MetricData jalgebra_metric(const JAlgebraData& data);

// Solvability, integrability of j (vanishing Nijenhuis tensor), j^2 = -1,
// symmetry and positive definiteness of the induced inner product.
ValidationReport validate_jalgebra(const JAlgebraData& data, double tol = tols::kAxiom);

struct RootSpace {
  Vec root;          // values of the root functional on the a-basis
  Mat vectors;       // g-orthonormal basis of the root space (basis coords)
  bool distinguished = false;  // j maps this (1-dim) space into a
};

struct RootDecomposition {
  Mat a_basis;        // columns: g-orthonormal basis of a = orthocomplement of [s,s]
  Mat n_basis;        // columns: g-orthonormal basis of n = [s,s]
  std::vector<RootSpace> roots;
  // Indices into `roots` giving the distinguished roots in the proper order
  // epsilon_1..epsilon_r, chosen so that every other root reads 1/2 eps_k or
  // 1/2 (eps_l +- eps_s) with l < s.
  std::vector<int> order;
  int rank() const { return static_cast<int>(order.size()); }
};

// Decomposes n into joint eigenspaces of the symmetric operators ad(a_i) and
// classifies the roots.  Throws StructuralError when the input violates the
// normal j-algebra structure theory (non-abelian complement, ad not
// diagonalizable, root pattern not of the admissible form, ...).
RootDecomposition root_decompose(const JAlgebraData& data, double tol = tols::kAxiom);

// Model constructors.  Both return structures whose omega has been rescaled
// so that the induced Einstein metric satisfies Ric = -g exactly.
//
// construct_chn(n): the solvable model of complex hyperbolic space CH^n,
// real dimension 2n, rank one.
JAlgebraData construct_chn(int n);

// construct_lorentz_tube(n): the rank-two tube domain over the Lorentz cone
// in R^n (n >= 3), real dimension 2n.  This is the Siegel-domain model of
// the symmetric space SO(2,n)/(SO(2) x SO(n)).
JAlgebraData construct_lorentz_tube(int n);

// Rank-one flip construction.  For a distinguished root eps_k whose half
// root space n_{eps_k/2} vanishes and whose associated 2-form
//   alpha_k = <X_k, .> ^ <j X_k, .>       (X_k a unit root vector)
// is closed, flipping the sign of j on span(X_k, j X_k) yields a new almost
// complex structure jbar that commutes with j and has closed fundamental
// form omega_bar = Omega - 2 alpha_k.
struct FlipStructure {
  int index = 0;               // chosen k (1-based, in the proper order)
  std::vector<int> valid_indices;
  Mat alpha;                   // basis components of alpha_k
  AlmostComplexData jbar;
  Mat omega_bar;               // fundamental form of (g, jbar)
  Mat plane;                   // d x 2, g-orthonormal basis {X_k, j X_k}
};

// `index` selects a specific k (1-based); when omitted the largest valid k
// is used.  Throws HypothesisFailedError when no k qualifies (nonzero half
// root space, non-closed alpha_k, or rank < 2).
FlipStructure flip_construction(const JAlgebraData& data, const RootDecomposition& dec,
                                std::optional<int> index = std::nullopt,
                                double tol = tols::kAxiom);

// Koszul form psi(X) = tr(ad(jX)) - tr(j ad(X)) and the induced bilinear
// form k(X,Y) = psi([X,Y]).  On a normal j-algebra the Ricci form is
// proportional to k; the check fits the constant and reports the residual.
struct KoszulCheck {
  Vec psi;           // basis components of the Koszul 1-form
  double constant = 0.0;   // best-fit c in rho = c * psi([.,.])
  double residual = 0.0;   // relative misfit
};

KoszulCheck koszul_ricci_check(const JAlgebraData& data);

}  // namespace liekahler

#endif  // LIEKAHLER_JALGEBRA_HPP
