// Core objects of left-invariant geometry on a Lie algebra: structure
// constants, inner products, the Levi-Civita connection, curvature, and the
// invariant tensor calculus (covariant derivative, exterior derivative,
// codifferential, rough Laplacian).
//
// Everything is expressed in components with respect to the defining basis
// e_0..e_{d-1}.  Conventions, fixed once and used everywhere:
//   brackets(i,j,k)  : coefficient of e_k in [e_i, e_j]
//   gamma(i,j,k)     : coefficient of e_k in nabla_{e_i} e_j
//   riem(i,j,k,l)    : g(R(e_i,e_j) e_k, e_l),
//                      R(X,Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]
//   rhat(i,j,k,l)    : riem(i,j,l,k); this sign convention makes rhat act on
//                      2-forms as a symmetric operator whose trace against a
//                      form uses the 1/2-weighted pairing, and gives the round
//                      sphere a positive curvature operator.
//   ricci(j,k)       : sum_m riem(m,j,k,m)  (positive on spheres, -g on the
//                      hyperbolic plane model [e1,e2]=e2)
// A 2-form psi is the matrix psi(i,j) = psi(e_i,e_j); its squared norm uses
// the 2-form weighting |psi|^2 = 1/2 sum psi_{ij}^2 in orthonormal frames.

#ifndef LIEKAHLER_ALGEBRA_CORE_HPP
#define LIEKAHLER_ALGEBRA_CORE_HPP

#include <string>
#include <vector>

#include "liekahler/errors.hpp"
#include "liekahler/linalg.hpp"
#include "liekahler/tensor.hpp"

namespace liekahler {

struct LieAlgebraData {
  int dim = 0;
  std::vector<std::string> basis_labels;
  Tensor3 brackets;
};

struct MetricData {
  Mat gram;
};

struct ConnectionCoefficients {
  Tensor3 gamma;
};

struct CurvaturePackage {
  Tensor4 riem;
  Tensor4 rhat;
  Mat ricci;
  double scal = 0.0;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;  // relative residual (or informative value)
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool pass() const;
  const CheckResult* find(const std::string& name) const;
  void add(const std::string& name, double residual, double tol, const std::string& note = "");
  // For checks where pass/fail is not a plain residual<=tol comparison.
  void add_flag(const std::string& name, bool ok, double value, const std::string& note = "");
};

// ---------------------------------------------------------------------------
// Construction and validation

// Bracket of two vectors given in basis coordinates.
Vec bracket(const LieAlgebraData& alg, const Vec& x, const Vec& y);

// Antisymmetry + Jacobi identity; with a metric also symmetry and positive
// definiteness.  Throws InputError for dimensions outside 1..kMaxDim.
ValidationReport validate_algebra(const LieAlgebraData& alg, const MetricData* g = nullptr,
                                  double tol = tols::kAxiom);

// Koszul formula.  2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
ConnectionCoefficients levi_civita(const LieAlgebraData& alg, const MetricData& g);

// Curvature tensor, Ricci tensor and scalar curvature.
CurvaturePackage curvature(const LieAlgebraData& alg, const MetricData& g,
                           const ConnectionCoefficients& conn);

// Full axiom check for a computed geometry: algebra axioms, torsion-freeness,
// metric compatibility, curvature symmetries, first and second Bianchi.
ValidationReport axiom_suite(const LieAlgebraData& alg, const MetricData& g,
                             const ConnectionCoefficients& conn, const CurvaturePackage& curv,
                             double tol = tols::kAxiom);

// ---------------------------------------------------------------------------
// Invariant tensor calculus.  All tensors are fully covariant; slot 0 of the
// derivative is the direction: (nabla T)(i, rest) = (nabla_{e_i} T)(rest).

Mat nabla_tensor(const ConnectionCoefficients& conn, const Vec& t1);
Tensor3 nabla_tensor(const ConnectionCoefficients& conn, const Mat& t2);
Tensor4 nabla_tensor(const ConnectionCoefficients& conn, const Tensor3& t3);
Tensor5 nabla_tensor(const ConnectionCoefficients& conn, const Tensor4& t4);

// Rough (connection) Laplacian nabla^* nabla.
Vec rough_laplacian(const MetricData& g, const ConnectionCoefficients& conn, const Vec& t1);
Mat rough_laplacian(const MetricData& g, const ConnectionCoefficients& conn, const Mat& t2);

// Exterior derivative of invariant forms; invariant functions are constant,
// so only the bracket terms survive:
//   (d a)(X,Y)    = -a([X,Y])
//   (d psi)(X,Y,Z) = -psi([X,Y],Z) - psi([Y,Z],X) - psi([Z,X],Y)
Mat d_form(const LieAlgebraData& alg, const Vec& a);
Tensor3 d_form(const LieAlgebraData& alg, const Mat& psi);

// Codifferential (formal adjoint of d on forms; same contraction applied to
// symmetric 2-tensors): (delta T)(rest) = -g^{ij} (nabla_{e_i} T)(e_j, rest).
double codifferential(const MetricData& g, const ConnectionCoefficients& conn, const Vec& a);
Vec codifferential(const MetricData& g, const ConnectionCoefficients& conn, const Mat& t2);
Mat codifferential(const MetricData& g, const ConnectionCoefficients& conn, const Tensor3& t3);

// ---------------------------------------------------------------------------
// Eigenstructure of symmetric bilinear forms with respect to g.

struct EigenCluster {
  double value = 0.0;  // mean eigenvalue of the cluster
  Mat vectors;         // g-orthonormal basis of the cluster's eigenspace
};

// Diagonalize the g-symmetric endomorphism associated with the symmetric
// bilinear form S; eigenvalues within cluster_tol (relative) are merged.
std::vector<EigenCluster> symmetric_eigensplit(const Mat& s, const MetricData& g,
                                               double cluster_tol = tols::kEigenCluster);

}  // namespace liekahler

#endif  // LIEKAHLER_ALGEBRA_CORE_HPP
