#ifndef RSW_FIELD_HPP_
#define RSW_FIELD_HPP_

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

namespace rsw {

//! Dense 2D array of doubles, row-major with i (x-index) fastest.
class Field2D {
 public:
  Field2D() = default;
  Field2D(int nx, int ny, double fill = 0.0)
      : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * ny, fill) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
    return data_[static_cast<std::size_t>(j) * nx_ + i];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
    return data_[static_cast<std::size_t>(j) * nx_ + i];
  }

  double* row(int j) { return data_.data() + static_cast<std::size_t>(j) * nx_; }
  const double* row(int j) const { return data_.data() + static_cast<std::size_t>(j) * nx_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  void fill(double v) { data_.assign(data_.size(), v); }

  bool same_shape(const Field2D& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> data_;
};

}  // namespace rsw

#endif  // RSW_FIELD_HPP_
