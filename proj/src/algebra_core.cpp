// Implementation of the core left-invariant geometry operations.

#include "liekahler/algebra_core.hpp"

#include <algorithm>
#include <cmath>

namespace liekahler {

bool ValidationReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void ValidationReport::add(const std::string& name, double residual, double tol,
                           const std::string& note) {
  checks.push_back({name, residual, tol, residual <= tol, note});
}

void ValidationReport::add_flag(const std::string& name, bool ok, double value,
                                const std::string& note) {
  checks.push_back({name, value, 0.0, ok, note});
}

Vec bracket(const LieAlgebraData& alg, const Vec& x, const Vec& y) {
  const int d = alg.dim;
  Vec out(d, 0.0);
  for (int i = 0; i < d; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      if (y[j] == 0.0) continue;
      const double xy = x[i] * y[j];
      for (int k = 0; k < d; ++k) out[k] += xy * alg.brackets(i, j, k);
    }
  }
  return out;
}

ValidationReport validate_algebra(const LieAlgebraData& alg, const MetricData* g, double tol) {
  const int d = alg.dim;
  if (d < 1 || d > tols::kMaxDim)
    throw InputError("algebra dimension " + std::to_string(d) + " outside supported range 1.." +
                     std::to_string(tols::kMaxDim));
  if (alg.brackets.dim() != d) throw InputError("bracket tensor dimension mismatch");
  if (!alg.basis_labels.empty() && static_cast<int>(alg.basis_labels.size()) != d)
    throw InputError("basis label count does not match dimension");

  ValidationReport rep;
  const Tensor3& c = alg.brackets;
  const double cmax = c.max_abs();

  double anti = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) anti = std::max(anti, std::fabs(c(i, j, k) + c(j, i, k)));
  rep.add("bracket_antisymmetry", anti / std::max(1.0, cmax), tol);

  // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0, coefficient of e_l.
  double jac = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          jac = std::max(jac, std::fabs(s));
        }
  rep.add("jacobi_identity", jac / std::max(1.0, cmax * cmax), tol);

  if (g != nullptr) {
    if (g->gram.rows() != d || g->gram.cols() != d)
      throw InputError("metric dimension mismatch");
    const double gmax = std::max(1.0, max_abs(g->gram));
    double sym = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) sym = std::max(sym, std::fabs(g->gram(i, j) - g->gram(j, i)));
    rep.add("metric_symmetry", sym / gmax, tol);

    EigenSym eig = jacobi_eigensym(g->gram);
    const double lmin = eig.values.front();
    const double lmax = eig.values.back();
    rep.add_flag("metric_positive_definite", lmin > tols::kPositiveDefinite * std::max(1.0, lmax),
                 lmin, "value is the smallest metric eigenvalue");
  }
  return rep;
}

ConnectionCoefficients levi_civita(const LieAlgebraData& alg, const MetricData& g) {
  const int d = alg.dim;
  const Tensor3& c = alg.brackets;
  const Mat ginv = inverse(g.gram);

  // b(i,j,k) = g([e_i,e_j], e_k)
  Tensor3 b(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) s += c(i, j, m) * g.gram(m, k);
        b(i, j, k) = s;
      }

  ConnectionCoefficients conn;
  conn.gamma = Tensor3(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // 2 g(nabla_i e_j, e_k) = b(i,j,k) - b(j,k,i) + b(k,i,j)
      Vec rhs(d);
      for (int k = 0; k < d; ++k) rhs[k] = 0.5 * (b(i, j, k) - b(j, k, i) + b(k, i, j));
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) s += ginv(k, m) * rhs[m];
        conn.gamma(i, j, k) = s;
      }
    }
  return conn;
}

CurvaturePackage curvature(const LieAlgebraData& alg, const MetricData& g,
                           const ConnectionCoefficients& conn) {
  const int d = alg.dim;
  const Tensor3& c = alg.brackets;
  const Tensor3& gm = conn.gamma;

  // up(i,j,k,l): coefficient of e_l in R(e_i,e_j)e_k.
  Tensor4 up(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += gm(j, k, m) * gm(i, m, l) - gm(i, k, m) * gm(j, m, l) - c(i, j, m) * gm(m, k, l);
          up(i, j, k, l) = s;
        }

  CurvaturePackage out;
  out.riem = Tensor4(d);
  out.rhat = Tensor4(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m) s += up(i, j, k, m) * g.gram(m, l);
          out.riem(i, j, k, l) = s;
        }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) out.rhat(i, j, k, l) = out.riem(i, j, l, k);

  out.ricci = Mat(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) s += up(m, j, k, m);
      out.ricci(j, k) = s;
    }
  const Mat ginv = inverse(g.gram);
  out.scal = 0.0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) out.scal += ginv(j, k) * out.ricci(j, k);
  return out;
}

ValidationReport axiom_suite(const LieAlgebraData& alg, const MetricData& g,
                             const ConnectionCoefficients& conn, const CurvaturePackage& curv,
                             double tol) {
  ValidationReport rep = validate_algebra(alg, &g, tol);
  const int d = alg.dim;
  const Tensor3& c = alg.brackets;
  const Tensor3& gm = conn.gamma;

  const double gscale = std::max(1.0, std::max(gm.max_abs(), c.max_abs()));
  double torsion = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        torsion = std::max(torsion, std::fabs(gm(i, j, k) - gm(j, i, k) - c(i, j, k)));
  rep.add("torsion_free", torsion / gscale, tol);

  const double cscale = std::max(1.0, gm.max_abs() * max_abs(g.gram));
  double compat = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m)
          s += gm(i, j, m) * g.gram(m, k) + gm(i, k, m) * g.gram(j, m);
        compat = std::max(compat, std::fabs(s));
      }
  rep.add("metric_compatibility", compat / cscale, tol);

  const Tensor4& r = curv.riem;
  const double rscale = std::max(1.0, r.max_abs());
  double a12 = 0.0, a34 = 0.0, pair = 0.0, b1 = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          a12 = std::max(a12, std::fabs(r(i, j, k, l) + r(j, i, k, l)));
          a34 = std::max(a34, std::fabs(r(i, j, k, l) + r(i, j, l, k)));
          pair = std::max(pair, std::fabs(r(i, j, k, l) - r(k, l, i, j)));
          b1 = std::max(b1, std::fabs(r(i, j, k, l) + r(j, k, i, l) + r(k, i, j, l)));
        }
  rep.add("curvature_antisymmetry_12", a12 / rscale, tol);
  rep.add("curvature_antisymmetry_34", a34 / rscale, tol);
  rep.add("curvature_pair_symmetry", pair / rscale, tol);
  rep.add("first_bianchi", b1 / rscale, tol);

  Tensor5 dr = nabla_tensor(conn, r);
  const double dscale = std::max(1.0, dr.max_abs());
  double b2 = 0.0;
  for (int m = 0; m < d; ++m)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            b2 = std::max(b2, std::fabs(dr(m, i, j, k, l) + dr(i, j, m, k, l) + dr(j, m, i, k, l)));
  rep.add("second_bianchi", b2 / dscale, tol);
  return rep;
}

// ---------------------------------------------------------------------------
// Generic covariant calculus

namespace {

template <int R>
Tensor<R + 1> nabla_impl(const Tensor3& gamma, const Tensor<R>& t) {
  const int d = t.dim();
  Tensor<R + 1> out(d);
  for_each_index<R + 1>(d, [&](const std::array<int, R + 1>& idx) {
    const int i = idx[0];
    std::array<int, R> rest;
    for (int r = 0; r < R; ++r) rest[r] = idx[r + 1];
    double s = 0.0;
    for (int slot = 0; slot < R; ++slot) {
      std::array<int, R> tmp = rest;
      const int orig = rest[slot];
      for (int m = 0; m < d; ++m) {
        const double gc = gamma(i, orig, m);
        if (gc == 0.0) continue;
        tmp[slot] = m;
        s -= gc * t.at(tmp);
      }
    }
    out.at(idx) = s;
  });
  return out;
}

template <int R>
Tensor<R> rough_impl(const Mat& ginv, const Tensor3& gamma, const Tensor<R>& t) {
  const int d = t.dim();
  Tensor<R + 1> dt = nabla_impl<R>(gamma, t);
  Tensor<R + 2> ddt = nabla_impl<R + 1>(gamma, dt);
  // (nabla^2_{i,j} T)(rest) = (nabla_i (nabla T))(j, rest); trace against g.
  Tensor<R> out(d);
  for_each_index<R>(d, [&](const std::array<int, R>& rest) {
    double s = 0.0;
    std::array<int, R + 2> idx{};
    for (int r = 0; r < R; ++r) idx[r + 2] = rest[r];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const double w = ginv(i, j);
        if (w == 0.0) continue;
        idx[0] = i;
        idx[1] = j;
        s -= w * ddt.at(idx);
      }
    out.at(rest) = s;
  });
  return out;
}

Tensor<1> t1_of(const Vec& v) {
  Tensor<1> t(static_cast<int>(v.size()));
  t.data() = v;
  return t;
}

Vec vec_of(const Tensor<1>& t) { return t.data(); }

Tensor<2> t2_of(const Mat& m) {
  Tensor<2> t(m.rows());
  t.data() = m.data();
  return t;
}

Mat mat_of(const Tensor<2>& t) {
  Mat m(t.dim(), t.dim());
  m.data() = t.data();
  return m;
}

}  // namespace

Mat nabla_tensor(const ConnectionCoefficients& conn, const Vec& t1) {
  return mat_of(nabla_impl<1>(conn.gamma, t1_of(t1)));
}
Tensor3 nabla_tensor(const ConnectionCoefficients& conn, const Mat& t2) {
  return nabla_impl<2>(conn.gamma, t2_of(t2));
}
Tensor4 nabla_tensor(const ConnectionCoefficients& conn, const Tensor3& t3) {
  return nabla_impl<3>(conn.gamma, t3);
}
Tensor5 nabla_tensor(const ConnectionCoefficients& conn, const Tensor4& t4) {
  return nabla_impl<4>(conn.gamma, t4);
}

Vec rough_laplacian(const MetricData& g, const ConnectionCoefficients& conn, const Vec& t1) {
  return vec_of(rough_impl<1>(inverse(g.gram), conn.gamma, t1_of(t1)));
}
Mat rough_laplacian(const MetricData& g, const ConnectionCoefficients& conn, const Mat& t2) {
  return mat_of(rough_impl<2>(inverse(g.gram), conn.gamma, t2_of(t2)));
}

Mat d_form(const LieAlgebraData& alg, const Vec& a) {
  const int d = alg.dim;
  Mat out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) s -= alg.brackets(i, j, m) * a[m];
      out(i, j) = s;
    }
  return out;
}

Tensor3 d_form(const LieAlgebraData& alg, const Mat& psi) {
  const int d = alg.dim;
  const Tensor3& c = alg.brackets;
  Tensor3 out(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m)
          s -= c(i, j, m) * psi(m, k) + c(j, k, m) * psi(m, i) + c(k, i, m) * psi(m, j);
        out(i, j, k) = s;
      }
  return out;
}

double codifferential(const MetricData& g, const ConnectionCoefficients& conn, const Vec& a) {
  const Mat da = nabla_tensor(conn, a);
  const Mat ginv = inverse(g.gram);
  double s = 0.0;
  for (int i = 0; i < da.rows(); ++i)
    for (int j = 0; j < da.cols(); ++j) s -= ginv(i, j) * da(i, j);
  return s;
}

Vec codifferential(const MetricData& g, const ConnectionCoefficients& conn, const Mat& t2) {
  const Tensor3 dt = nabla_tensor(conn, t2);
  const Mat ginv = inverse(g.gram);
  const int d = t2.rows();
  Vec out(d, 0.0);
  for (int k = 0; k < d; ++k) {
    double s = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s -= ginv(i, j) * dt(i, j, k);
    out[k] = s;
  }
  return out;
}

Mat codifferential(const MetricData& g, const ConnectionCoefficients& conn, const Tensor3& t3) {
  const Tensor4 dt = nabla_tensor(conn, t3);
  const Mat ginv = inverse(g.gram);
  const int d = t3.dim();
  Mat out(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      double s = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s -= ginv(i, j) * dt(i, j, k, l);
      out(k, l) = s;
    }
  return out;
}

std::vector<EigenCluster> symmetric_eigensplit(const Mat& s, const MetricData& g,
                                               double cluster_tol) {
  const int d = s.rows();
  const Mat f = gram_schmidt_frame(g.gram);
  const Mat sf = transpose(f) * s * f;
  // Symmetrize to keep Jacobi honest against roundoff.
  Mat sym(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) sym(i, j) = 0.5 * (sf(i, j) + sf(j, i));
  EigenSym eig = jacobi_eigensym(sym);

  double scale = 1.0;
  for (double v : eig.values) scale = std::max(scale, std::fabs(v));

  std::vector<EigenCluster> out;
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i < d && eig.values[i] - eig.values[i - 1] <= cluster_tol * scale) continue;
    EigenCluster cl;
    double mean = 0.0;
    for (int k = start; k < i; ++k) mean += eig.values[k];
    cl.value = mean / (i - start);
    cl.vectors = Mat(d, i - start);
    for (int k = start; k < i; ++k) {
      const Vec w = eig.vectors.col(k);
      cl.vectors.set_col(k - start, f * w);
    }
    out.push_back(std::move(cl));
    start = i;
  }
  return out;
}

}  // namespace liekahler
