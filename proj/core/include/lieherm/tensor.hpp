#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace lieherm {

using Complex = std::complex<double>;

/// Dense rank-3 tensor over a cube of side n. Indices are 0-based.
template <typename Scalar>
class Tensor3 {
public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n) {}

  int dim() const { return n_; }
  bool empty() const { return n_ == 0; }

  Scalar& operator()(int a, int b, int c) { return v_[index(a, b, c)]; }
  const Scalar& operator()(int a, int b, int c) const { return v_[index(a, b, c)]; }

  double max_abs() const {
    double m = 0.0;
    for (const Scalar& x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  const std::vector<Scalar>& data() const { return v_; }

private:
  std::size_t index(int a, int b, int c) const {
    assert(a >= 0 && a < n_ && b >= 0 && b < n_ && c >= 0 && c < n_);
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + c;
  }

  int n_ = 0;
  std::vector<Scalar> v_;
};

/// Dense rank-4 tensor over a hypercube of side n. Indices are 0-based.
template <typename Scalar>
class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n * n) {}

  int dim() const { return n_; }
  bool empty() const { return n_ == 0; }

  Scalar& operator()(int a, int b, int c, int d) { return v_[index(a, b, c, d)]; }
  const Scalar& operator()(int a, int b, int c, int d) const { return v_[index(a, b, c, d)]; }

  double max_abs() const {
    double m = 0.0;
    for (const Scalar& x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  const std::vector<Scalar>& data() const { return v_; }

private:
  std::size_t index(int a, int b, int c, int d) const {
    assert(a >= 0 && a < n_ && b >= 0 && b < n_ && c >= 0 && c < n_ && d >= 0 && d < n_);
    return ((static_cast<std::size_t>(a) * n_ + b) * n_ + c) * n_ + d;
  }

  int n_ = 0;
  std::vector<Scalar> v_;
};

using CTensor3 = Tensor3<Complex>;
using CTensor4 = Tensor4<Complex>;
using RTensor3 = Tensor3<double>;

}  // namespace lieherm
