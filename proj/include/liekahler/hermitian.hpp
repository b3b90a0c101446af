// Hermitian/almost-Hermitian linear algebra on top of the core geometry:
// almost complex structures, the fundamental 2-form, type decomposition,
// the Nijenhuis tensor, Ricci-type forms, and the decomposition of the
// curvature operator on anti-invariant 2-forms.
//
// Conventions (fixed here, used by the identity suites):
//   Omega(X,Y) = g(JX, Y)
//   J on 1-forms:            (J a)(X)   = -a(JX)
//   J on anti-invariant 2-tensors: (J T)(X,Y) = -T(JX, Y)   (then J^2 = -1)
//   type split of a 2-form or symmetric 2-tensor:
//       T' = (T + T(J.,J.))/2   (invariant),   T'' = T - T'   (anti-invariant)
//   N(X,Y) = [JX,JY] - [X,Y] - J[JX,Y] - J[X,JY]
//   rho    = J-invariant Ricci contracted with J:  rho(X,Y) = Ric'(JX, Y)
//   rho*   = image of Omega under the curvature operator (uses rhat)
//   s*     = 2 <rho*, Omega>
//   phi(X,Y) = <nabla_{JX} Omega, nabla_Y Omega>
// 2-form inner product: <psi, theta> = 1/2 sum_{ab} psi_ab theta_ab in any
// orthonormal frame.

#ifndef LIEKAHLER_HERMITIAN_HPP
#define LIEKAHLER_HERMITIAN_HPP

#include <utility>
#include <vector>

#include "liekahler/algebra_core.hpp"

namespace liekahler {

struct AlmostComplexData {
  Mat j;  // column-action endomorphism: (J x)^i = sum_k j(i,k) x^k
};

struct TypeSplit2Form {
  Mat invariant_part;   // T'
  Mat anti_part;        // T''
};

// J^2 = -1 and g(J.,J.) = g checks.
ValidationReport validate_almost_complex(const MetricData& g, const AlmostComplexData& j,
                                         double tol = tols::kIdentity);

// Omega as a matrix of basis components: Omega(i,k) = sum_m j(m,i) g(m,k).
Mat fundamental_form(const MetricData& g, const AlmostComplexData& j);

// Works identically for 2-forms and symmetric 2-tensors.
TypeSplit2Form type_split(const Mat& t, const AlmostComplexData& j);

// nijenhuis(i,j,k): coefficient of e_k in N(e_i, e_j).  Metric-free.
Tensor3 nijenhuis(const LieAlgebraData& alg, const AlmostComplexData& j);

// ---------------------------------------------------------------------------
// Frame-side machinery.  All derived Hermitian quantities are computed in a
// g-orthonormal frame, where the metric is the identity and 2-form/operator
// bookkeeping is painless; results can be pushed back to basis components.

// Core geometry re-expressed in the orthonormal frame built from g.  This is
// computed from the structure constants directly (orthonormal Koszul
// formula), independent of the basis-side gamma/riem path, so comparing the
// two is a real cross-check and not a tautology.
struct FrameGeometry {
  int d = 0;
  Mat frame;        // columns = frame vectors in basis coordinates
  Mat frame_inv;    // frame^T * gram: takes basis coordinates to frame ones
  Tensor3 brackets; // frame components of [f_a, f_b]
  Tensor3 gamma;    // gamma(a,b,c) = g(nabla_{f_a} f_b, f_c)
  Tensor4 rhat;     // rhat(a,b,c,d) = g(R(f_a,f_b) f_d, f_c)
  Mat ricci;
  double scal = 0.0;
};

FrameGeometry make_frame_geometry(const LieAlgebraData& alg, const MetricData& g);

// Coordinate transport between basis and frame components.
Mat to_frame_endo(const FrameGeometry& geo, const Mat& endo_basis);   // F^-1 E F
Mat to_frame_form2(const FrameGeometry& geo, const Mat& form_basis);  // F^T T F
Mat to_basis_form2(const FrameGeometry& geo, const Mat& form_frame);
// Vector-valued 2-tensor such as the Nijenhuis tensor: all slots lowered.
Tensor3 to_frame_tensor3(const FrameGeometry& geo, const Tensor3& t, bool last_slot_vector);

// Everything the curvature identities need about one almost-Hermitian
// structure, in frame components.
struct HermitianFrame {
  Mat j;              // frame components of J (orthogonal, skew)
  Mat omega;          // Omega_ab = g(J f_a, f_b)
  Tensor3 nabla_omega;       // (nabla_{f_a} Omega)(f_b, f_c)
  Mat laplacian_omega;       // nabla^* nabla Omega
  Mat rho;            // Ricci form of the J-invariant Ricci part
  Mat rho_star;       // curvature image of Omega
  Mat phi;            // phi(X,Y) = <nabla_{JX} Omega, nabla_Y Omega>
  double s_star = 0.0;
  double norm_nabla_omega_sq = 0.0;  // |nabla Omega|^2
};

HermitianFrame make_hermitian_frame(const FrameGeometry& geo, const Mat& j_frame);

// ---------------------------------------------------------------------------
// Basis-side convenience wrappers around the frame machinery.

struct RicciForms {
  Mat rho;       // basis components
  Mat rho_star;  // basis components
  double s = 0.0;
  double s_star = 0.0;
};

RicciForms ricci_forms(const LieAlgebraData& alg, const MetricData& g,
                       const AlmostComplexData& j);

Mat phi_form(const LieAlgebraData& alg, const MetricData& g, const AlmostComplexData& j);

// ---------------------------------------------------------------------------
// Curvature operator restricted to anti-invariant 2-forms.
//
// The anti-invariant forms (those with T(J.,J.) = -T) carry an action of J
// with square -1; the restricted curvature operator splits into the parts
// commuting and anti-commuting with that action.

struct AntiInvariantBasis {
  std::vector<std::pair<int, int>> pairs;  // index pairs a<b of the full 2-form basis
  Mat theta;   // columns: orthonormal anti-invariant 2-forms in pair coordinates
  Mat j_op;    // action of J on the anti-invariant space (in theta coordinates)
};

AntiInvariantBasis anti_invariant_basis(const Mat& j_frame);

struct GrayComponents {
  AntiInvariantBasis basis;
  Mat rt;        // curvature operator restricted to anti-invariant forms
  Mat rt_comm;   // part commuting with J     ("prime")
  Mat rt_anti;   // part anti-commuting with J (injects Weyl information)
};

GrayComponents gray_components(const FrameGeometry& geo, const Mat& j_frame);

// ---------------------------------------------------------------------------
// Small frame-side helpers shared by the identity suites.

// 1/2-weighted 2-form inner product in an orthonormal frame.
double form2_inner(const Mat& a, const Mat& b);

// Pair-coordinate vector of a 2-form (entries psi_ab for a<b).
Vec pair_vector(const Mat& psi_frame, const std::vector<std::pair<int, int>>& pairs);

// Curvature operator as a matrix on pair coordinates: Rop[(cd),(ab)] = rhat(c,d,a,b).
Mat curvature_pair_operator(const Tensor4& rhat, const std::vector<std::pair<int, int>>& pairs);

// All index pairs a<b for dimension d.
std::vector<std::pair<int, int>> index_pairs(int d);

}  // namespace liekahler

#endif  // LIEKAHLER_HERMITIAN_HPP
