#pragma once

#include <map>
#include <utility>

#include "wlsa/rational.hpp"

namespace wlsa {

// Sparse exact-rational matrix; zero entries are absent.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat get(int r, int c) const {
    auto it = data_.find({r, c});
    return it == data_.end() ? Rat(0) : it->second;
  }
  void set(int r, int c, const Rat& v) {
    if (v == 0)
      data_.erase({r, c});
    else
      data_[{r, c}] = v;
  }
  void add(int r, int c, const Rat& v) { set(r, c, get(r, c) + v); }

  const std::map<std::pair<int, int>, Rat>& entries() const { return data_; }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (const auto& [rc, v] : data_) t.set(rc.second, rc.first, v);
    return t;
  }

  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator+(const RatMatrix& o) const;
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // entrywise a <= b
  static bool leq(const RatMatrix& a, const RatMatrix& b);

  bool rows_sum_to_one() const;
  bool cols_sum_to_one() const;
  bool nonnegative() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::map<std::pair<int, int>, Rat> data_;
};

}  // namespace wlsa
