// Implementation of the two-eigenvalue Ricci split and metric deformations.

#include "liekahler/ricci_split.hpp"

#include <cmath>
#include <string>

namespace liekahler {

RicciSplit split_ricci(const LieAlgebraData& alg, const MetricData& g, const AlmostComplexData& j,
                       double cluster_tol, double gap_tol) {
  const ConnectionCoefficients conn = levi_civita(alg, g);
  const CurvaturePackage curv = curvature(alg, g, conn);
  const std::vector<EigenCluster> clusters = symmetric_eigensplit(curv.ricci, g, cluster_tol);

  if (clusters.size() > 2)
    throw TooManyEigenvaluesError("Ricci tensor has " + std::to_string(clusters.size()) +
                                  " eigenvalue clusters; the two-block theory does not apply");
  if (clusters.size() < 2)
    throw EinsteinInputError("Ricci tensor has a single eigenvalue cluster (Einstein input)");

  double scale = 1.0;
  for (const auto& cl : clusters) scale = std::max(scale, std::fabs(cl.value));
  if (clusters[1].value - clusters[0].value < gap_tol * scale)
    throw EinsteinInputError("Ricci eigenvalue clusters are closer than the resolvable gap");

  RicciSplit out;
  out.lambda = clusters[0].value;
  out.mu = clusters[1].value;
  out.dim_lambda = clusters[0].vectors.cols();
  out.dim_mu = clusters[1].vectors.cols();

  // P = V V^T G is the g-orthogonal projector when the columns of V are
  // g-orthonormal.
  auto projector = [&](const Mat& v) { return v * transpose(v) * g.gram; };
  out.proj_lambda = projector(clusters[0].vectors);
  out.proj_mu = projector(clusters[1].vectors);

  // Eigenspaces of the Ricci tensor of a Kähler structure must be
  // J-invariant; enforce it rather than silently producing a broken Jbar.
  const double jscale = std::max(1.0, max_abs(j.j));
  const Mat comm = j.j * out.proj_lambda - out.proj_lambda * j.j;
  if (max_abs(comm) / jscale > tols::kDerivedIdentity)
    throw StructuralError("Ricci eigenspaces are not J-invariant; input is not a Kähler structure "
                          "with the assumed symmetry");

  const Mat omega = fundamental_form(g, j);
  out.alpha = transpose(out.proj_lambda) * omega * out.proj_lambda;
  out.beta = omega - out.alpha;
  return out;
}

AlmostComplexData build_jbar(const AlmostComplexData& j, const RicciSplit& split) {
  AlmostComplexData out;
  out.j = j.j * (split.proj_lambda - split.proj_mu);
  return out;
}

DeformedMetric deform_metric(const MetricData& g, const RicciSplit& split, double t) {
  if (!(t > 0.0)) throw InputError("deformation parameter t must be positive");
  DeformedMetric out;
  out.t = t;
  const Mat block_l = transpose(split.proj_lambda) * g.gram * split.proj_lambda;
  const Mat block_m = transpose(split.proj_mu) * g.gram * split.proj_mu;
  out.metric.gram = block_l + t * block_m;
  return out;
}

DeformedMetric einstein_normalize(const MetricData& g, const RicciSplit& split) {
  if (!(split.lambda * split.mu > 0.0))
    throw NotSameSignError("Einstein normalization requires Ricci eigenvalues of the same sign");
  return deform_metric(g, split, split.mu / split.lambda);
}

}  // namespace liekahler
