// Implementation of the dense linear algebra kit.

#include "liekahler/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "liekahler/errors.hpp"

namespace liekahler {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::col(int c) const {
  Vec v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Mat::set_col(int c, const Vec& v) {
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Mat operator+(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.data()[i] + b.data()[i];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  Mat r(a.rows(), a.cols());
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.data()[i] - b.data()[i];
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  Mat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

Mat operator*(double s, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (size_t i = 0; i < r.data().size(); ++i) r.data()[i] = s * a.data()[i];
  return r;
}

Vec operator*(const Mat& a, const Vec& v) {
  Vec r(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

Mat transpose(const Mat& a) {
  Mat r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(j, i) = a(i, j);
  return r;
}

double max_abs(const Mat& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::fabs(x));
  return m;
}

double max_abs(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double frobenius(const Mat& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// LU decomposition with partial pivoting, in place.  Returns the permutation
// sign, or 0.0 if a pivot vanished (singular to working precision).
double lu_decompose(Mat& a, std::vector<int>& perm) {
  const int n = a.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0);
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double cand = std::fabs(a(r, k));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      a(r, k) /= a(k, k);
      const double f = a(r, k);
      if (f == 0.0) continue;
      for (int c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return sign;
}

}  // namespace

double determinant(const Mat& a) {
  Mat lu = a;
  std::vector<int> perm;
  const double sign = lu_decompose(lu, perm);
  if (sign == 0.0) return 0.0;
  double det = sign;
  for (int i = 0; i < a.rows(); ++i) det *= lu(i, i);
  return det;
}

Mat inverse(const Mat& a) {
  const int n = a.rows();
  Mat lu = a;
  std::vector<int> perm;
  const double sign = lu_decompose(lu, perm);
  if (sign == 0.0) throw InputError("matrix is singular, cannot invert");
  Mat inv(n, n);
  Vec x(n);
  for (int col = 0; col < n; ++col) {
    // Solve L y = P e_col, then U x = y.
    for (int i = 0; i < n; ++i) {
      double y = (perm[i] == col) ? 1.0 : 0.0;
      for (int j = 0; j < i; ++j) y -= lu(i, j) * x[j];
      x[i] = y;
    }
    for (int i = n - 1; i >= 0; --i) {
      double y = x[i];
      for (int j = i + 1; j < n; ++j) y -= lu(i, j) * x[j];
      x[i] = y / lu(i, i);
    }
    inv.set_col(col, x);
  }
  return inv;
}

EigenSym jacobi_eigensym(const Mat& s) {
  const int n = s.rows();
  Mat a = s;
  Mat v = Mat::identity(n);
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    double diag = 1.0;
    for (int p = 0; p < n; ++p) diag = std::max(diag, std::fabs(a(p, p)));
    if (std::sqrt(off) <= 1e-15 * diag * n) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-18 * diag) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        // Rotate rows/columns p and q of a, and columns p and q of v.
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  // Sort eigenpairs ascending and fix eigenvector signs deterministically.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
  EigenSym out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    Vec col = v.col(order[c]);
    int arg = 0;
    for (int r = 1; r < n; ++r)
      if (std::fabs(col[r]) > std::fabs(col[arg])) arg = r;
    if (col[arg] < 0.0)
      for (double& x : col) x = -x;
    out.vectors.set_col(c, col);
  }
  return out;
}

namespace {

double g_inner(const Mat& gram, const Vec& a, const Vec& b) {
  double s = 0.0;
  const int n = gram.rows();
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) s += a[i] * gram(i, j) * b[j];
  }
  return s;
}

// Modified Gram-Schmidt step: orthogonalize v against the g-orthonormal
// columns 0..k-1 of basis, twice for numerical safety.
void project_out(const Mat& gram, const Mat& basis, int k, Vec& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int c = 0; c < k; ++c) {
      const Vec b = basis.col(c);
      const double coeff = g_inner(gram, b, v);
      for (size_t i = 0; i < v.size(); ++i) v[i] -= coeff * b[i];
    }
  }
}

}  // namespace

Mat gram_schmidt_frame(const Mat& gram) {
  const int n = gram.rows();
  const double scale = std::max(1.0, max_abs(gram));
  Mat f(n, n);
  for (int k = 0; k < n; ++k) {
    Vec v(n, 0.0);
    v[k] = 1.0;
    project_out(gram, f, k, v);
    const double nrm2 = g_inner(gram, v, v);
    if (!(nrm2 > tols::kPositiveDefinite * scale))
      throw NotPositiveDefiniteError("gram matrix is not positive definite");
    const double inv = 1.0 / std::sqrt(nrm2);
    for (double& x : v) x *= inv;
    f.set_col(k, v);
  }
  return f;
}

Mat complete_orthonormal(const Mat& seed, const Mat& gram, double drop_tol) {
  const int n = gram.rows();
  Mat basis(n, n);
  int k = 0;
  for (int c = 0; c < seed.cols() && k < n; ++c) {
    basis.set_col(k, seed.col(c));
    ++k;
  }
  for (int e = 0; e < n && k < n; ++e) {
    Vec v(n, 0.0);
    v[e] = 1.0;
    project_out(gram, basis, k, v);
    const double nrm2 = g_inner(gram, v, v);
    if (nrm2 <= drop_tol * drop_tol) continue;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (double& x : v) x *= inv;
    basis.set_col(k, v);
    ++k;
  }
  if (k < n) throw InputError("could not complete an orthonormal basis");
  return basis;
}

Mat orthonormal_span(const Mat& vectors, const Mat& gram, double drop_tol) {
  const int n = gram.rows();
  Mat basis(n, n);
  int k = 0;
  double scale = std::max(1.0, max_abs(vectors));
  for (int c = 0; c < vectors.cols() && k < n; ++c) {
    Vec v = vectors.col(c);
    project_out(gram, basis, k, v);
    const double nrm2 = g_inner(gram, v, v);
    if (std::sqrt(nrm2) <= drop_tol * scale) continue;
    const double inv = 1.0 / std::sqrt(nrm2);
    for (double& x : v) x *= inv;
    basis.set_col(k, v);
    ++k;
  }
  Mat out(n, k);
  for (int c = 0; c < k; ++c) out.set_col(c, basis.col(c));
  return out;
}

}  // namespace liekahler
