// Small dense linear algebra kit: row-major matrices, a cyclic Jacobi
// eigensolver for symmetric matrices, Gram-Schmidt orthonormalization
// against an arbitrary inner product, and LU-based inverse/determinant.
//
// Everything is deterministic (fixed sweep order, fixed sign conventions) so
// that repeated runs and test oracles agree bit-for-bit.  Sizes stay tiny
// (dim <= 32), so clarity wins over blocking or vectorization tricks.

#ifndef LIEKAHLER_LINALG_HPP
#define LIEKAHLER_LINALG_HPP

#include <cstddef>
#include <vector>

namespace liekahler {

using Vec = std::vector<double>;

// Dense row-major matrix of doubles.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Vec col(int c) const;
  void set_col(int c, const Vec& v);

 private:
  int rows_, cols_;
  std::vector<double> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);
Vec operator*(const Mat& a, const Vec& v);

Mat transpose(const Mat& a);
double max_abs(const Mat& a);
double max_abs(const Vec& v);
// Frobenius norm (plain sum of squared entries, no 2-form weighting).
double frobenius(const Mat& a);
double dot(const Vec& a, const Vec& b);

// Determinant and inverse via LU with partial pivoting.
double determinant(const Mat& a);
// Throws InputError when the matrix is numerically singular.
Mat inverse(const Mat& a);

// Eigen-decomposition of a symmetric matrix.  `values` are sorted
// ascending; `vectors` holds the matching eigenvectors as columns,
// orthonormal, each sign-fixed so its largest-magnitude entry is positive.
struct EigenSym {
  Vec values;
  Mat vectors;
};

// Cyclic Jacobi rotations; input must be symmetric (only the given entries
// are read, no symmetrization is applied).
EigenSym jacobi_eigensym(const Mat& s);

// Orthonormalize the standard basis against the inner product defined by the
// symmetric positive-definite matrix `gram`.  Returns F with F^T * gram * F
// = identity; column k lies in the span of e_0..e_k, so the result is the
// (deterministic) Cholesky-style frame.  Throws NotPositiveDefiniteError.
Mat gram_schmidt_frame(const Mat& gram);

// Extend the g-orthonormal columns of `seed` (possibly zero columns) to a
// full g-orthonormal basis by sweeping the standard basis; vectors whose
// g-norm after projection falls below `drop_tol` (relative) are discarded.
// Used for span/complement computations with rank detection.
Mat complete_orthonormal(const Mat& seed, const Mat& gram, double drop_tol);

// g-orthonormalize the columns of `vectors`, dropping dependent ones.
// Returns a matrix whose columns are g-orthonormal and span the same space.
Mat orthonormal_span(const Mat& vectors, const Mat& gram, double drop_tol);

}  // namespace liekahler

#endif  // LIEKAHLER_LINALG_HPP
