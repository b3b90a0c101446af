// Implementation of the normal j-algebra layer: admissibility checks, root
// decomposition, model constructors, the flip construction and the Koszul
// consistency check.

#include "liekahler/jalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace liekahler {

MetricData jalgebra_metric(const JAlgebraData& data) {
  const int d = data.alg.dim;
  const Tensor3& c = data.alg.brackets;
  const Mat& jm = data.j.j;
  MetricData g;
  g.gram = Mat(d, d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) {
        const double w = jm(m, p);
        if (w == 0.0) continue;
        for (int l = 0; l < d; ++l) s += w * c(m, q, l) * data.omega[l];
      }
      g.gram(p, q) = s;
    }
  return g;
}

namespace {

// Dimension of the span of the brackets of all column pairs of v.
Mat derived_subspace(const LieAlgebraData& alg, const Mat& v, const Mat& gram) {
  const int cols = v.cols();
  if (cols == 0) return Mat(alg.dim, 0);
  Mat gens(alg.dim, cols * (cols - 1) / 2);
  int k = 0;
  for (int i = 0; i < cols; ++i)
    for (int j = i + 1; j < cols; ++j) gens.set_col(k++, bracket(alg, v.col(i), v.col(j)));
  return orthonormal_span(gens, gram, 1e-9);
}

}  // namespace

ValidationReport validate_jalgebra(const JAlgebraData& data, double tol) {
  ValidationReport rep = validate_algebra(data.alg, nullptr, tol);
  const int d = data.alg.dim;

  const Mat jj = data.j.j * data.j.j;
  Mat jj_plus_id = jj;
  for (int i = 0; i < d; ++i) jj_plus_id(i, i) += 1.0;
  rep.add("j_squared_minus_one", max_abs(jj_plus_id) / std::max(1.0, max_abs(data.j.j)), tol);

  const Tensor3 nij = nijenhuis(data.alg, data.j);
  const double nscale = std::max(1.0, data.alg.brackets.max_abs() * max_abs(data.j.j));
  rep.add("j_integrable", nij.max_abs() / nscale, tol);

  const MetricData g = jalgebra_metric(data);
  const double gscale = std::max(1.0, max_abs(g.gram));
  double sym = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) sym = std::max(sym, std::fabs(g.gram(i, j) - g.gram(j, i)));
  rep.add("induced_metric_symmetry", sym / gscale, tol);

  EigenSym eig = jacobi_eigensym(0.5 * (g.gram + transpose(g.gram)));
  rep.add_flag("induced_metric_positive_definite",
               eig.values.front() > tols::kPositiveDefinite * std::max(1.0, eig.values.back()),
               eig.values.front(), "value is the smallest eigenvalue of omega([j.,.])");

  // Solvability: the derived series must reach zero.
  Mat v = Mat::identity(d);
  const Mat id = Mat::identity(d);
  int steps = 0;
  while (v.cols() > 0 && steps <= d) {
    Mat next = derived_subspace(data.alg, v, id);
    if (next.cols() >= v.cols()) break;
    v = next;
    ++steps;
  }
  rep.add_flag("solvable", v.cols() == 0, static_cast<double>(v.cols()),
               "value is the dimension where the derived series stabilized");
  return rep;
}

// ---------------------------------------------------------------------------
// Root decomposition

RootDecomposition root_decompose(const JAlgebraData& data, double tol) {
  const LieAlgebraData& alg = data.alg;
  const int d = alg.dim;
  const MetricData g = jalgebra_metric(data);
  const double cscale = std::max(1.0, alg.brackets.max_abs());

  auto gnorm = [&](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s += x[i] * g.gram(i, j) * x[j];
    return std::sqrt(std::max(0.0, s));
  };

  RootDecomposition dec;

  // n = [s,s] and its g-orthogonal complement a.
  Mat gens(d, d * (d - 1) / 2);
  int gcnt = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vec w(d);
      for (int k = 0; k < d; ++k) w[k] = alg.brackets(i, j, k);
      gens.set_col(gcnt++, w);
    }
  dec.n_basis = orthonormal_span(gens, g.gram, 1e-9);
  const int nd = dec.n_basis.cols();
  const Mat full = complete_orthonormal(dec.n_basis, g.gram, 1e-9);
  const int ad_dim = d - nd;
  dec.a_basis = Mat(d, ad_dim);
  for (int cidx = 0; cidx < ad_dim; ++cidx) dec.a_basis.set_col(cidx, full.col(nd + cidx));

  // a must be an abelian subalgebra.
  for (int i = 0; i < ad_dim; ++i)
    for (int j = i + 1; j < ad_dim; ++j)
      if (gnorm(bracket(alg, dec.a_basis.col(i), dec.a_basis.col(j))) > tol * cscale)
        throw StructuralError("orthocomplement of [s,s] is not abelian");

  // ad(a_i) restricted to n, in n-coordinates; n must be an ideal.
  std::vector<Mat> ad_n(ad_dim, Mat(nd, nd));
  for (int i = 0; i < ad_dim; ++i) {
    for (int j = 0; j < nd; ++j) {
      Vec w = bracket(alg, dec.a_basis.col(i), dec.n_basis.col(j));
      Vec coords(nd, 0.0);
      for (int cidx = 0; cidx < nd; ++cidx) {
        double s = 0.0;
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) s += dec.n_basis(p, cidx) * g.gram(p, q) * w[q];
        coords[cidx] = s;
      }
      Vec rem = w;
      for (int p = 0; p < d; ++p)
        for (int cidx = 0; cidx < nd; ++cidx) rem[p] -= dec.n_basis(p, cidx) * coords[cidx];
      if (gnorm(rem) > tol * cscale)
        throw StructuralError("[s,s] is not an ideal under ad(a)");
      for (int cidx = 0; cidx < nd; ++cidx) ad_n[i](cidx, j) = coords[cidx];
    }
  }

  // Joint diagonalization of the symmetrized ad(a_i), refining blocks.
  struct Block {
    Mat basis;  // nd x m, orthonormal columns in n-coordinates
    Vec root;
  };
  std::vector<Block> blocks;
  blocks.push_back({Mat::identity(nd), Vec(ad_dim, 0.0)});
  for (int i = 0; i < ad_dim; ++i) {
    std::vector<Block> refined;
    for (const Block& blk : blocks) {
      const int m = blk.basis.cols();
      Mat restr(m, m);
      const Mat tmp = ad_n[i] * blk.basis;
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
          double s = 0.0;
          for (int r = 0; r < nd; ++r) s += blk.basis(r, p) * tmp(r, q);
          restr(p, q) = s;
        }
      Mat sym(m, m);
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) sym(p, q) = 0.5 * (restr(p, q) + restr(q, p));
      const EigenSym eig = jacobi_eigensym(sym);
      double scale = 1.0;
      for (double v : eig.values) scale = std::max(scale, std::fabs(v));
      int start = 0;
      for (int e = 1; e <= m; ++e) {
        if (e < m && eig.values[e] - eig.values[e - 1] <= tols::kEigenCluster * scale) continue;
        Block nb;
        nb.root = blk.root;
        double mean = 0.0;
        for (int k = start; k < e; ++k) mean += eig.values[k];
        nb.root[i] = mean / (e - start);
        nb.basis = Mat(nd, e - start);
        for (int k = start; k < e; ++k) nb.basis.set_col(k - start, blk.basis * eig.vectors.col(k));
        refined.push_back(std::move(nb));
        start = e;
      }
    }
    blocks = std::move(refined);
  }

  // Verify the joint eigenvector property on the nose (the symmetrization
  // above would silently absorb a non-normal ad-action).
  const double ad_scale = [&] {
    double s = 1.0;
    for (const Mat& m : ad_n) s = std::max(s, max_abs(m));
    return s;
  }();
  for (const Block& blk : blocks)
    for (int cidx = 0; cidx < blk.basis.cols(); ++cidx) {
      const Vec xn = blk.basis.col(cidx);
      Vec x(d, 0.0);
      for (int p = 0; p < d; ++p)
        for (int r = 0; r < nd; ++r) x[p] += dec.n_basis(p, r) * xn[r];
      for (int i = 0; i < ad_dim; ++i) {
        Vec w = bracket(alg, dec.a_basis.col(i), x);
        for (int p = 0; p < d; ++p) w[p] -= blk.root[i] * x[p];
        if (gnorm(w) > tol * ad_scale * 100.0)
          throw StructuralError("ad(a) is not simultaneously diagonalizable on [s,s]");
      }
    }

  // Populate root spaces; roots must be nonzero, and the distinguished ones
  // (j maps them into a) must be one-dimensional and as numerous as dim a.
  for (const Block& blk : blocks) {
    RootSpace rs;
    rs.root = blk.root;
    if (max_abs(blk.root) <= tols::kEigenCluster)
      throw StructuralError("zero root in the decomposition of [s,s]");
    rs.vectors = Mat(d, blk.basis.cols());
    for (int cidx = 0; cidx < blk.basis.cols(); ++cidx) {
      Vec x(d, 0.0);
      for (int p = 0; p < d; ++p)
        for (int r = 0; r < nd; ++r) x[p] += dec.n_basis(p, r) * blk.basis(r, cidx);
      rs.vectors.set_col(cidx, x);
    }
    bool dist = true;
    for (int cidx = 0; cidx < rs.vectors.cols() && dist; ++cidx) {
      const Vec y = data.j.j * rs.vectors.col(cidx);
      // component of y outside a
      Vec coords(ad_dim, 0.0);
      for (int t = 0; t < ad_dim; ++t) {
        double s = 0.0;
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) s += dec.a_basis(p, t) * g.gram(p, q) * y[q];
        coords[t] = s;
      }
      Vec rem = y;
      for (int p = 0; p < d; ++p)
        for (int t = 0; t < ad_dim; ++t) rem[p] -= dec.a_basis(p, t) * coords[t];
      if (gnorm(rem) > tol * std::max(1.0, gnorm(y)) * 100.0) dist = false;
    }
    rs.distinguished = dist;
    if (dist && rs.vectors.cols() != 1)
      throw StructuralError("distinguished root space is not one-dimensional");
    dec.roots.push_back(std::move(rs));
  }

  std::vector<int> dist_idx;
  for (int i = 0; i < static_cast<int>(dec.roots.size()); ++i)
    if (dec.roots[i].distinguished) dist_idx.push_back(i);
  const int rank = static_cast<int>(dist_idx.size());
  if (rank != ad_dim)
    throw StructuralError("number of distinguished roots (" + std::to_string(rank) +
                          ") does not match dim a (" + std::to_string(ad_dim) + ")");
  if (rank > 8) throw StructuralError("rank too large for the labeling search");

  // Proper labeling: find a permutation of the distinguished roots such that
  // every other root reads 1/2 eps_k or 1/2 (eps_l +- eps_s) with l < s.
  auto root_close = [&](const Vec& x, const Vec& y) {
    double scale = std::max(1.0, std::max(max_abs(x), max_abs(y)));
    for (int i = 0; i < ad_dim; ++i)
      if (std::fabs(x[i] - y[i]) > tols::kEigenCluster * scale * 10.0) return false;
    return true;
  };
  std::vector<int> perm(rank);
  std::iota(perm.begin(), perm.end(), 0);
  bool found = false;
  do {
    bool ok = true;
    for (const RootSpace& rs : dec.roots) {
      if (rs.distinguished) continue;
      bool classified = false;
      for (int k = 0; k < rank && !classified; ++k) {
        Vec half(ad_dim);
        for (int i = 0; i < ad_dim; ++i) half[i] = 0.5 * dec.roots[dist_idx[perm[k]]].root[i];
        classified = root_close(rs.root, half);
      }
      for (int l = 0; l < rank && !classified; ++l)
        for (int s = l + 1; s < rank && !classified; ++s)
          for (int sign : {+1, -1}) {
            Vec comb(ad_dim);
            for (int i = 0; i < ad_dim; ++i)
              comb[i] = 0.5 * (dec.roots[dist_idx[perm[l]]].root[i] +
                               sign * dec.roots[dist_idx[perm[s]]].root[i]);
            if (root_close(rs.root, comb)) {
              classified = true;
              break;
            }
          }
      if (!classified) {
        ok = false;
        break;
      }
    }
    if (ok) {
      found = true;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!found)
    throw StructuralError("root pattern does not admit a proper labeling");

  dec.order.resize(rank);
  for (int k = 0; k < rank; ++k) dec.order[k] = dist_idx[perm[k]];
  return dec;
}

// ---------------------------------------------------------------------------
// Model constructors

namespace {

void set_bracket(Tensor3& c, int i, int j, int k, double v) {
  c(i, j, k) = v;
  c(j, i, k) = -v;
}

// Rescale omega so the induced metric has Ric = -g.
void einstein_rescale(JAlgebraData& data) {
  const MetricData g = jalgebra_metric(data);
  const ConnectionCoefficients conn = levi_civita(data.alg, g);
  const CurvaturePackage curv = curvature(data.alg, g, conn);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < data.alg.dim; ++i)
    for (int j = 0; j < data.alg.dim; ++j) {
      num += curv.ricci(i, j) * g.gram(i, j);
      den += g.gram(i, j) * g.gram(i, j);
    }
  const double kappa = num / den;  // Ric ~= kappa * g
  for (double& w : data.omega) w *= -kappa;
}

}  // namespace

JAlgebraData construct_chn(int n) {
  if (n < 1) throw InputError("construct_chn requires n >= 1");
  const int d = 2 * n;
  JAlgebraData data;
  data.alg.dim = d;
  data.alg.brackets = Tensor3(d);
  data.alg.basis_labels.resize(d);
  // Basis: a, z, x_1..x_{n-1}, y_1..y_{n-1}.
  const int A = 0, Z = 1;
  auto X = [&](int i) { return 2 + i; };
  auto Y = [&](int i) { return 2 + (n - 1) + i; };
  data.alg.basis_labels[A] = "a";
  data.alg.basis_labels[Z] = "z";
  for (int i = 0; i < n - 1; ++i) {
    data.alg.basis_labels[X(i)] = "x" + std::to_string(i + 1);
    data.alg.basis_labels[Y(i)] = "y" + std::to_string(i + 1);
  }
  Tensor3& c = data.alg.brackets;
  set_bracket(c, A, Z, Z, 1.0);
  for (int i = 0; i < n - 1; ++i) {
    set_bracket(c, A, X(i), X(i), 0.5);
    set_bracket(c, A, Y(i), Y(i), 0.5);
    set_bracket(c, X(i), Y(i), Z, 1.0);
  }
  data.j.j = Mat(d, d);
  data.j.j(Z, A) = 1.0;   // j a = z
  data.j.j(A, Z) = -1.0;  // j z = -a
  for (int i = 0; i < n - 1; ++i) {
    data.j.j(Y(i), X(i)) = 1.0;
    data.j.j(X(i), Y(i)) = -1.0;
  }
  data.omega = Vec(d, 0.0);
  data.omega[Z] = -1.0;
  einstein_rescale(data);
  return data;
}

JAlgebraData construct_lorentz_tube(int n) {
  if (n < 3) throw InputError("construct_lorentz_tube requires n >= 3");
  const int m = n - 2;
  const int d = 2 * n;
  JAlgebraData data;
  data.alg.dim = d;
  data.alg.brackets = Tensor3(d);
  data.alg.basis_labels.resize(d);
  // Basis: d, h, n_1..n_m, p+, p-, z_1..z_m.
  const int D = 0, H = 1;
  auto N = [&](int k) { return 2 + k; };
  const int Pp = 2 + m, Pm = 3 + m;
  auto Z = [&](int k) { return 4 + m + k; };
  data.alg.basis_labels[D] = "d";
  data.alg.basis_labels[H] = "h";
  data.alg.basis_labels[Pp] = "p+";
  data.alg.basis_labels[Pm] = "p-";
  for (int k = 0; k < m; ++k) {
    data.alg.basis_labels[N(k)] = "n" + std::to_string(k + 1);
    data.alg.basis_labels[Z(k)] = "z" + std::to_string(k + 1);
  }
  Tensor3& c = data.alg.brackets;
  set_bracket(c, D, Pp, Pp, 1.0);
  set_bracket(c, D, Pm, Pm, 1.0);
  set_bracket(c, H, Pp, Pp, 1.0);
  set_bracket(c, H, Pm, Pm, -1.0);
  for (int k = 0; k < m; ++k) {
    set_bracket(c, H, N(k), N(k), 1.0);
    set_bracket(c, D, Z(k), Z(k), 1.0);
    set_bracket(c, N(k), Pm, Z(k), 1.0);
    set_bracket(c, N(k), Z(k), Pp, 2.0);
  }
  data.j.j = Mat(d, d);
  // j d = p+ + p-,  j h = p+ - p-,  j p+ = -(d+h)/2,  j p- = -(d-h)/2,
  // j n_k = z_k,    j z_k = -n_k.
  data.j.j(Pp, D) = 1.0;
  data.j.j(Pm, D) = 1.0;
  data.j.j(Pp, H) = 1.0;
  data.j.j(Pm, H) = -1.0;
  data.j.j(D, Pp) = -0.5;
  data.j.j(H, Pp) = -0.5;
  data.j.j(D, Pm) = -0.5;
  data.j.j(H, Pm) = 0.5;
  for (int k = 0; k < m; ++k) {
    data.j.j(Z(k), N(k)) = 1.0;
    data.j.j(N(k), Z(k)) = -1.0;
  }
  data.omega = Vec(d, 0.0);
  data.omega[Pp] = -0.5;
  data.omega[Pm] = -0.5;
  einstein_rescale(data);
  return data;
}

// ---------------------------------------------------------------------------
// Flip construction

FlipStructure flip_construction(const JAlgebraData& data, const RootDecomposition& dec,
                                std::optional<int> index, double tol) {
  const int d = data.alg.dim;
  const int rank = dec.rank();
  if (rank < 2)
    throw HypothesisFailedError("flip construction needs rank >= 2; a rank-one flip only reverses "
                                "the orientation of the whole structure");

  const MetricData g = jalgebra_metric(data);
  const Mat omega = fundamental_form(g, data.j);
  const double cscale = std::max(1.0, data.alg.brackets.max_abs());

  FlipStructure out;
  std::vector<std::string> reasons(rank);
  std::vector<Mat> alphas(rank);
  for (int k = 0; k < rank; ++k) {
    const RootSpace& rs = dec.roots[dec.order[k]];
    // Half root space must vanish.
    bool half_present = false;
    for (const RootSpace& other : dec.roots) {
      bool close = true;
      for (int i = 0; i < static_cast<int>(rs.root.size()); ++i)
        if (std::fabs(other.root[i] - 0.5 * rs.root[i]) >
            tols::kEigenCluster * 10.0 * std::max(1.0, max_abs(rs.root))) {
          close = false;
          break;
        }
      if (close) {
        half_present = true;
        break;
      }
    }
    if (half_present) {
      reasons[k] = "half root space is nonzero";
      continue;
    }
    const Vec x = rs.vectors.col(0);
    const Vec jx = data.j.j * x;
    const Vec u = g.gram * x;   // <X, .>
    const Vec v = g.gram * jx;  // <jX, .>
    Mat alpha(d, d);
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) alpha(p, q) = u[p] * v[q] - u[q] * v[p];
    const Tensor3 dalpha = d_form(data.alg, alpha);
    if (dalpha.max_abs() > tol * cscale * std::max(1.0, max_abs(alpha))) {
      reasons[k] = "root 2-form is not closed";
      continue;
    }
    const Mat pulled = transpose(data.j.j) * alpha * data.j.j;
    if (max_abs(pulled - alpha) > tol * std::max(1.0, max_abs(alpha))) {
      reasons[k] = "root 2-form is not j-invariant";
      continue;
    }
    alphas[k] = alpha;
    out.valid_indices.push_back(k + 1);
  }

  int chosen;
  if (index.has_value()) {
    chosen = *index;
    if (chosen < 1 || chosen > rank) throw InputError("flip index out of range");
    if (std::find(out.valid_indices.begin(), out.valid_indices.end(), chosen) ==
        out.valid_indices.end())
      throw HypothesisFailedError("flip hypothesis fails for root " + std::to_string(chosen) +
                                  ": " + reasons[chosen - 1]);
  } else {
    if (out.valid_indices.empty()) {
      std::string msg = "flip hypothesis fails for every distinguished root:";
      for (int k = 0; k < rank; ++k) msg += " [" + std::to_string(k + 1) + "] " + reasons[k] + ";";
      throw HypothesisFailedError(msg);
    }
    chosen = out.valid_indices.back();
  }
  out.index = chosen;
  const RootSpace& rs = dec.roots[dec.order[chosen - 1]];
  const Vec x = rs.vectors.col(0);
  const Vec jx = data.j.j * x;
  out.plane = Mat(d, 2);
  out.plane.set_col(0, x);
  out.plane.set_col(1, jx);
  out.alpha = alphas[chosen - 1];

  // jbar = j (1 - 2 Pi), Pi the g-orthogonal projector onto the plane.
  const Mat pi = out.plane * transpose(out.plane) * g.gram;
  Mat refl = Mat::identity(d);
  refl = refl - 2.0 * pi;
  out.jbar.j = data.j.j * refl;
  out.omega_bar = omega - 2.0 * out.alpha;
  return out;
}

// ---------------------------------------------------------------------------
// Koszul form

KoszulCheck koszul_ricci_check(const JAlgebraData& data) {
  const int d = data.alg.dim;
  const Tensor3& c = data.alg.brackets;
  const Mat& jm = data.j.j;

  KoszulCheck out;
  out.psi = Vec(d, 0.0);
  // tr(ad(e_m)) = sum_q c(m,q,q)
  Vec tr_ad(d, 0.0);
  for (int m = 0; m < d; ++m)
    for (int q = 0; q < d; ++q) tr_ad[m] += c(m, q, q);
  for (int p = 0; p < d; ++p) {
    double s = 0.0;
    for (int m = 0; m < d; ++m) s += jm(m, p) * tr_ad[m];
    // tr(j ad(e_p)) = sum_{q,l} j(q,l) c(p,q,l)
    double t = 0.0;
    for (int q = 0; q < d; ++q)
      for (int l = 0; l < d; ++l) t += jm(q, l) * c(p, q, l);
    out.psi[p] = s - t;
  }

  Mat kform(d, d);
  for (int p = 0; p < d; ++p)
    for (int q = 0; q < d; ++q) {
      double s = 0.0;
      for (int l = 0; l < d; ++l) s += c(p, q, l) * out.psi[l];
      kform(p, q) = s;
    }

  const MetricData g = jalgebra_metric(data);
  const RicciForms rf = ricci_forms(data.alg, g, data.j);

  // Inner products of 2-forms with respect to g.
  const Mat ginv = inverse(g.gram);
  auto ip = [&](const Mat& a, const Mat& b) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) s += a(i, j) * b(k, l) * ginv(i, k) * ginv(j, l);
    return 0.5 * s;
  };
  const double kk = ip(kform, kform);
  const double rr = ip(rf.rho, rf.rho);
  if (kk <= 1e-30) {
    out.constant = 0.0;
    out.residual = std::sqrt(std::max(0.0, rr));
    return out;
  }
  out.constant = ip(rf.rho, kform) / kk;
  Mat diff = rf.rho;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) diff(i, j) -= out.constant * kform(i, j);
  out.residual = std::sqrt(std::max(0.0, ip(diff, diff))) /
                 std::max(1.0, std::sqrt(std::max(0.0, rr)));
  return out;
}

}  // namespace liekahler
