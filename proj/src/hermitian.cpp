// Implementation of the Hermitian layer: frame geometry, fundamental form,
// type splits, Nijenhuis tensor, Ricci-type forms and the anti-invariant
// curvature blocks.

#include "liekahler/hermitian.hpp"

#include <cmath>

namespace liekahler {

ValidationReport validate_almost_complex(const MetricData& g, const AlmostComplexData& j,
                                         double tol) {
  const int d = g.gram.rows();
  ValidationReport rep;
  const Mat jj = j.j * j.j;
  Mat jj_plus_id = jj;
  for (int i = 0; i < d; ++i) jj_plus_id(i, i) += 1.0;
  const double jscale = std::max(1.0, max_abs(j.j) * max_abs(j.j));
  rep.add("j_squared_minus_one", max_abs(jj_plus_id) / jscale, tol);

  // g(JX, JY) = g(X, Y)  <=>  J^T G J = G.
  const Mat pull = transpose(j.j) * g.gram * j.j;
  const double gscale = std::max(1.0, max_abs(g.gram));
  rep.add("j_orthogonal", max_abs(pull - g.gram) / gscale, tol);
  return rep;
}

Mat fundamental_form(const MetricData& g, const AlmostComplexData& j) {
  return transpose(j.j) * g.gram;
}

TypeSplit2Form type_split(const Mat& t, const AlmostComplexData& j) {
  const Mat pull = transpose(j.j) * t * j.j;  // T(J., J.)
  TypeSplit2Form out;
  out.invariant_part = 0.5 * (t + pull);
  out.anti_part = 0.5 * (t - pull);
  return out;
}

Tensor3 nijenhuis(const LieAlgebraData& alg, const AlmostComplexData& j) {
  const int d = alg.dim;
  const Tensor3& c = alg.brackets;
  const Mat& jm = j.j;
  Tensor3 out(d);
  // N(e_i, e_j) = [Je_i, Je_j] - [e_i, e_j] - J[Je_i, e_j] - J[e_i, Je_j]
  for (int i = 0; i < d; ++i)
    for (int jj = 0; jj < d; ++jj) {
      Vec acc(d, 0.0);
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) {
          const double w = jm(p, i) * jm(q, jj);
          if (w == 0.0) continue;
          for (int k = 0; k < d; ++k) acc[k] += w * c(p, q, k);
        }
      for (int k = 0; k < d; ++k) acc[k] -= c(i, jj, k);
      // -J[Je_i, e_j] - J[e_i, Je_j]
      Vec mixed(d, 0.0);
      for (int p = 0; p < d; ++p) {
        const double wi = jm(p, i);
        const double wj = jm(p, jj);
        for (int k = 0; k < d; ++k) {
          if (wi != 0.0) mixed[k] += wi * c(p, jj, k);
          if (wj != 0.0) mixed[k] += wj * c(i, p, k);
        }
      }
      for (int k = 0; k < d; ++k) {
        double s = acc[k];
        for (int m = 0; m < d; ++m) s -= jm(k, m) * mixed[m];
        out(i, jj, k) = s;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Frame geometry

FrameGeometry make_frame_geometry(const LieAlgebraData& alg, const MetricData& g) {
  FrameGeometry geo;
  const int d = alg.dim;
  geo.d = d;
  geo.frame = gram_schmidt_frame(g.gram);
  geo.frame_inv = transpose(geo.frame) * g.gram;

  geo.brackets = Tensor3(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Vec w = bracket(alg, geo.frame.col(a), geo.frame.col(b));
      const Vec wf = geo.frame_inv * w;
      for (int cidx = 0; cidx < d; ++cidx) geo.brackets(a, b, cidx) = wf[cidx];
    }

  // Orthonormal Koszul formula: 2 <nabla_a b, c> = <[a,b],c> - <[b,c],a> + <[c,a],b>.
  geo.gamma = Tensor3(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cidx = 0; cidx < d; ++cidx)
        geo.gamma(a, b, cidx) = 0.5 * (geo.brackets(a, b, cidx) - geo.brackets(b, cidx, a) +
                                       geo.brackets(cidx, a, b));

  geo.rhat = Tensor4(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cidx = 0; cidx < d; ++cidx)
        for (int e = 0; e < d; ++e) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += geo.gamma(b, e, m) * geo.gamma(a, m, cidx) -
                 geo.gamma(a, e, m) * geo.gamma(b, m, cidx) -
                 geo.brackets(a, b, m) * geo.gamma(m, e, cidx);
          // s = <R(f_a, f_b) f_e, f_c>, i.e. rhat(a,b,c,e).
          geo.rhat(a, b, cidx, e) = s;
        }

  geo.ricci = Mat(d, d);
  for (int b = 0; b < d; ++b)
    for (int cidx = 0; cidx < d; ++cidx) {
      double s = 0.0;
      for (int a = 0; a < d; ++a) s += geo.rhat(a, b, a, cidx);
      geo.ricci(b, cidx) = s;
    }
  geo.scal = 0.0;
  for (int a = 0; a < d; ++a) geo.scal += geo.ricci(a, a);
  return geo;
}

Mat to_frame_endo(const FrameGeometry& geo, const Mat& endo_basis) {
  return geo.frame_inv * endo_basis * geo.frame;
}

Mat to_frame_form2(const FrameGeometry& geo, const Mat& form_basis) {
  return transpose(geo.frame) * form_basis * geo.frame;
}

Mat to_basis_form2(const FrameGeometry& geo, const Mat& form_frame) {
  return transpose(geo.frame_inv) * form_frame * geo.frame_inv;
}

Tensor3 to_frame_tensor3(const FrameGeometry& geo, const Tensor3& t, bool last_slot_vector) {
  const int d = geo.d;
  Tensor3 out(d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      Vec v(d, 0.0);
      for (int i = 0; i < d; ++i) {
        const double fa = geo.frame(i, a);
        if (fa == 0.0) continue;
        for (int jx = 0; jx < d; ++jx) {
          const double w = fa * geo.frame(jx, b);
          if (w == 0.0) continue;
          for (int k = 0; k < d; ++k) v[k] += w * t(i, jx, k);
        }
      }
      for (int cc = 0; cc < d; ++cc) {
        double s = 0.0;
        for (int k = 0; k < d; ++k)
          s += (last_slot_vector ? geo.frame_inv(cc, k) : geo.frame(k, cc)) * v[k];
        out(a, b, cc) = s;
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian cache

HermitianFrame make_hermitian_frame(const FrameGeometry& geo, const Mat& j_frame) {
  const int d = geo.d;
  HermitianFrame hf;
  hf.j = j_frame;
  hf.omega = transpose(j_frame);

  // In the frame the connection data is geo.gamma and the metric is the
  // identity, so the generic covariant calculus applies verbatim.
  const ConnectionCoefficients fconn{geo.gamma};
  const MetricData fmetric{Mat::identity(d)};
  hf.nabla_omega = nabla_tensor(fconn, hf.omega);
  hf.laplacian_omega = rough_laplacian(fmetric, fconn, hf.omega);

  // Invariant part of the Ricci tensor, contracted with J.
  const Mat ric_pull = transpose(j_frame) * geo.ricci * j_frame;
  Mat ric_inv(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) ric_inv(a, b) = 0.5 * (geo.ricci(a, b) + ric_pull(a, b));
  hf.rho = transpose(j_frame) * ric_inv;

  hf.rho_star = Mat(d, d);
  for (int cidx = 0; cidx < d; ++cidx)
    for (int e = 0; e < d; ++e) {
      double s = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) s += geo.rhat(cidx, e, a, b) * hf.omega(a, b);
      hf.rho_star(cidx, e) = 0.5 * s;
    }
  hf.s_star = 2.0 * form2_inner(hf.rho_star, hf.omega);

  hf.phi = Mat(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) {
        const double w = j_frame(m, a);
        if (w == 0.0) continue;
        for (int cidx = 0; cidx < d; ++cidx)
          for (int e = 0; e < d; ++e) s += 0.5 * w * hf.nabla_omega(m, cidx, e) * hf.nabla_omega(b, cidx, e);
      }
      hf.phi(a, b) = s;
    }

  hf.norm_nabla_omega_sq = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cidx = 0; cidx < d; ++cidx)
        hf.norm_nabla_omega_sq += 0.5 * hf.nabla_omega(a, b, cidx) * hf.nabla_omega(a, b, cidx);
  return hf;
}

// ---------------------------------------------------------------------------
// Basis-side wrappers

RicciForms ricci_forms(const LieAlgebraData& alg, const MetricData& g,
                       const AlmostComplexData& j) {
  const FrameGeometry geo = make_frame_geometry(alg, g);
  const Mat jf = to_frame_endo(geo, j.j);
  const HermitianFrame hf = make_hermitian_frame(geo, jf);
  RicciForms out;
  out.rho = to_basis_form2(geo, hf.rho);
  out.rho_star = to_basis_form2(geo, hf.rho_star);
  out.s = geo.scal;
  out.s_star = hf.s_star;
  return out;
}

Mat phi_form(const LieAlgebraData& alg, const MetricData& g, const AlmostComplexData& j) {
  const FrameGeometry geo = make_frame_geometry(alg, g);
  const Mat jf = to_frame_endo(geo, j.j);
  const HermitianFrame hf = make_hermitian_frame(geo, jf);
  return to_basis_form2(geo, hf.phi);
}

// ---------------------------------------------------------------------------
// Anti-invariant 2-form machinery

std::vector<std::pair<int, int>> index_pairs(int d) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(d) * (d - 1) / 2);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) pairs.emplace_back(a, b);
  return pairs;
}

Vec pair_vector(const Mat& psi_frame, const std::vector<std::pair<int, int>>& pairs) {
  Vec v(pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) v[p] = psi_frame(pairs[p].first, pairs[p].second);
  return v;
}

Mat curvature_pair_operator(const Tensor4& rhat, const std::vector<std::pair<int, int>>& pairs) {
  const int n2 = static_cast<int>(pairs.size());
  Mat m(n2, n2);
  for (int p = 0; p < n2; ++p)
    for (int q = 0; q < n2; ++q)
      m(p, q) = rhat(pairs[p].first, pairs[p].second, pairs[q].first, pairs[q].second);
  return m;
}

double form2_inner(const Mat& a, const Mat& b) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * b(i, j);
  return 0.5 * s;
}

namespace {

// Matrix (in pair coordinates) of a linear map on 2-forms, given the map on
// full antisymmetric matrices; the output is antisymmetrized, i.e. the map
// is post-composed with the projection onto Lambda^2.
template <class MapFn>
Mat pair_matrix_of(int d, const std::vector<std::pair<int, int>>& pairs, MapFn&& fn) {
  const int n2 = static_cast<int>(pairs.size());
  Mat out(n2, n2);
  for (int q = 0; q < n2; ++q) {
    Mat theta(d, d);
    theta(pairs[q].first, pairs[q].second) = 1.0;
    theta(pairs[q].second, pairs[q].first) = -1.0;
    const Mat img = fn(theta);
    for (int p = 0; p < n2; ++p) {
      const auto [a, b] = pairs[p];
      out(p, q) = 0.5 * (img(a, b) - img(b, a));
    }
  }
  return out;
}

}  // namespace

AntiInvariantBasis anti_invariant_basis(const Mat& j_frame) {
  const int d = j_frame.rows();
  AntiInvariantBasis out;
  out.pairs = index_pairs(d);

  // Projector onto anti-invariant forms: psi -> (psi - psi(J., J.)) / 2.
  const Mat proj = pair_matrix_of(d, out.pairs, [&](const Mat& theta) {
    return 0.5 * (theta - transpose(j_frame) * theta * j_frame);
  });
  const EigenSym eig = jacobi_eigensym(proj);
  int q = 0;
  for (double v : eig.values)
    if (v > 0.5) ++q;
  out.theta = Mat(static_cast<int>(out.pairs.size()), q);
  int col = 0;
  for (int k = 0; k < static_cast<int>(eig.values.size()); ++k)
    if (eig.values[k] > 0.5) out.theta.set_col(col++, eig.vectors.col(k));

  // J acting on anti-invariant forms: psi -> -psi(J., .).
  const Mat jfull = pair_matrix_of(d, out.pairs, [&](const Mat& theta) {
    return -1.0 * (transpose(j_frame) * theta);
  });
  out.j_op = transpose(out.theta) * jfull * out.theta;
  return out;
}

GrayComponents gray_components(const FrameGeometry& geo, const Mat& j_frame) {
  GrayComponents out;
  out.basis = anti_invariant_basis(j_frame);
  const Mat rop = curvature_pair_operator(geo.rhat, out.basis.pairs);
  out.rt = transpose(out.basis.theta) * rop * out.basis.theta;
  const Mat& jm = out.basis.j_op;
  const Mat conj = jm * out.rt * jm;
  out.rt_comm = 0.5 * (out.rt - conj);
  out.rt_anti = 0.5 * (out.rt + conj);
  return out;
}

}  // namespace liekahler
