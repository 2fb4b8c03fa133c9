#include "wlsa/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace wlsa {

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix: dimension mismatch in product");
  RatMatrix out(rows_, o.cols_);
  // group o's entries by row for the sparse product
  std::vector<std::vector<std::pair<int, Rat>>> by_row(o.rows_);
  for (const auto& [rc, v] : o.data_) by_row[rc.first].emplace_back(rc.second, v);
  for (const auto& [rc, v] : data_)
    for (const auto& [c, w] : by_row[rc.second]) out.add(rc.first, c, v * w);
  return out;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("RatMatrix: dimension mismatch in sum");
  RatMatrix out = *this;
  for (const auto& [rc, v] : o.data_) out.add(rc.first, rc.second, v);
  return out;
}

bool RatMatrix::leq(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("RatMatrix: dimension mismatch in comparison");
  for (const auto& [rc, v] : a.data_)
    if (v > b.get(rc.first, rc.second)) return false;
  for (const auto& [rc, v] : b.data_)
    if (v < 0 && a.get(rc.first, rc.second) > v) return false;
  return true;
}

bool RatMatrix::rows_sum_to_one() const {
  std::vector<Rat> sums(rows_, Rat(0));
  for (const auto& [rc, v] : data_) sums[rc.first] += v;
  for (const Rat& s : sums)
    if (s != 1) return false;
  return true;
}

bool RatMatrix::cols_sum_to_one() const {
  std::vector<Rat> sums(cols_, Rat(0));
  for (const auto& [rc, v] : data_) sums[rc.second] += v;
  for (const Rat& s : sums)
    if (s != 1) return false;
  return true;
}

bool RatMatrix::nonnegative() const {
  for (const auto& [rc, v] : data_)
    if (v < 0) return false;
  return true;
}

}  // namespace wlsa
