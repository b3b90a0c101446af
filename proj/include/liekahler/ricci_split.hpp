// Two-eigenvalue Ricci decomposition of a Kähler structure and the
// associated constructions: the sign-flipped almost complex structure Jbar,
// the block-rescaled metric family g_t, and Einstein normalization.
//
// Given Ricci eigenvalues lambda < mu with J-invariant eigenspaces E_lambda
// and E_mu, we form
//   alpha = Omega restricted to E_lambda,  beta = Omega - alpha,
//   Jbar  = J on E_lambda, -J on E_mu,
//   g_t   = g on E_lambda, t*g on E_mu          (t > 0),
// and, when lambda and mu share a sign, the Einstein choice t = mu/lambda.

#ifndef LIEKAHLER_RICCI_SPLIT_HPP
#define LIEKAHLER_RICCI_SPLIT_HPP

#include "liekahler/algebra_core.hpp"
#include "liekahler/hermitian.hpp"

namespace liekahler {

struct RicciSplit {
  double lambda = 0.0;  // smaller Ricci eigenvalue
  double mu = 0.0;      // larger Ricci eigenvalue
  int dim_lambda = 0;
  int dim_mu = 0;
  Mat proj_lambda;  // g-orthogonal projector onto E_lambda (basis endomorphism)
  Mat proj_mu;
  Mat alpha;  // basis components of Omega restricted to E_lambda
  Mat beta;   // Omega - alpha
};

struct DeformedMetric {
  MetricData metric;
  double t = 1.0;
};

// Splits the Ricci tensor of (alg, g, J) into exactly two eigenvalue
// clusters.  Throws EinsteinInputError for a single cluster (or a gap below
// gap_tol), TooManyEigenvaluesError for three or more, and StructuralError
// if an eigenspace fails to be J-invariant.
RicciSplit split_ricci(const LieAlgebraData& alg, const MetricData& g, const AlmostComplexData& j,
                       double cluster_tol = tols::kEigenCluster,
                       double gap_tol = tols::kEigenGap);

// Jbar = J with the sign flipped on E_mu; commutes with J and satisfies
// Jbar^2 = -1 by construction.
AlmostComplexData build_jbar(const AlmostComplexData& j, const RicciSplit& split);

// Block rescaling of the metric; requires t > 0.
DeformedMetric deform_metric(const MetricData& g, const RicciSplit& split, double t);

// The member of the family with Ric = lambda * g_t; requires lambda*mu > 0
// (otherwise NotSameSignError).
DeformedMetric einstein_normalize(const MetricData& g, const RicciSplit& split);

}  // namespace liekahler

#endif  // LIEKAHLER_RICCI_SPLIT_HPP
