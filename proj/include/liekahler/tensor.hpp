// Fixed-rank dense tensors with all extents equal to the algebra dimension,
// plus a multi-index iteration helper.  Rank is a compile-time parameter so
// the covariant-derivative and Laplacian code can be written once.

#ifndef LIEKAHLER_TENSOR_HPP
#define LIEKAHLER_TENSOR_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "liekahler/linalg.hpp"

namespace liekahler {

template <int R>
class Tensor {
  static_assert(R >= 1 && R <= 6, "rank out of supported range");

 public:
  Tensor() : d_(0) {}
  explicit Tensor(int d) : d_(d), v_(pow_dim(d), 0.0) {}

  int dim() const { return d_; }

  template <class... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == R, "index count must equal rank");
    return v_[flatten(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == R, "index count must equal rank");
    return v_[flatten(idx...)];
  }

  double& at(const std::array<int, R>& idx) { return v_[flatten_arr(idx)]; }
  double at(const std::array<int, R>& idx) const { return v_[flatten_arr(idx)]; }

  const std::vector<double>& data() const { return v_; }
  std::vector<double>& data() { return v_; }

  double max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
  }

 private:
  static size_t pow_dim(int d) {
    size_t s = 1;
    for (int r = 0; r < R; ++r) s *= static_cast<size_t>(d);
    return s;
  }
  template <class... I>
  size_t flatten(I... idx) const {
    size_t p = 0;
    ((p = p * d_ + static_cast<size_t>(idx)), ...);
    return p;
  }
  size_t flatten_arr(const std::array<int, R>& idx) const {
    size_t p = 0;
    for (int r = 0; r < R; ++r) p = p * d_ + static_cast<size_t>(idx[r]);
    return p;
  }

  int d_;
  std::vector<double> v_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;
using Tensor5 = Tensor<5>;

// Call f(idx) for every multi-index in {0..d-1}^R, in lexicographic order.
template <int R, class F>
void for_each_index(int d, F&& f) {
  std::array<int, R> idx{};
  while (true) {
    f(idx);
    int r = R - 1;
    while (r >= 0 && ++idx[r] == d) {
      idx[r] = 0;
      --r;
    }
    if (r < 0) break;
  }
}

// Rank-2 tensors are stored as Mat; converters keep the two worlds aligned.
inline Mat mat_from_rows(int d, const std::vector<double>& rowmajor) {
  Mat m(d, d);
  m.data() = rowmajor;
  return m;
}

}  // namespace liekahler

#endif  // LIEKAHLER_TENSOR_HPP
