#include "hopfkit/sparsemap.hpp"

#include <stdexcept>

namespace hopfkit {

SparseMap SparseMap::identity(std::size_t n) {
  SparseMap m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.e_.emplace(std::make_pair(i, i), Rat(1));
  return m;
}

Rat SparseMap::at(std::size_t r, std::size_t c) const {
  auto it = e_.find({r, c});
  return it == e_.end() ? Rat(0) : it->second;
}

void SparseMap::set(std::size_t r, std::size_t c, const Rat& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("sparse map entry out of range");
  if (v == 0)
    e_.erase({r, c});
  else
    e_[{r, c}] = v;
}

void SparseMap::add_to(std::size_t r, std::size_t c, const Rat& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("sparse map entry out of range");
  auto it = e_.find({r, c});
  if (it == e_.end()) {
    if (v != 0) e_.emplace(std::make_pair(r, c), v);
    return;
  }
  it->second += v;
  if (it->second == 0) e_.erase(it);
}

SparseMap& SparseMap::operator+=(const SparseMap& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("sparse map sum: shapes differ");
  for (const auto& [rc, v] : o.e_) add_to(rc.first, rc.second, v);
  return *this;
}

SparseMap SparseMap::operator+(const SparseMap& o) const {
  SparseMap m = *this;
  m += o;
  return m;
}

SparseMap SparseMap::scaled(const Rat& k) const {
  SparseMap m(rows_, cols_);
  if (k == 0) return m;
  for (const auto& [rc, v] : e_) m.e_.emplace(rc, v * k);
  return m;
}

SparseMap SparseMap::compose(const SparseMap& other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("sparse map compose: inner dimensions differ");
  // Group this map's entries by column for the join.
  std::map<std::size_t, std::map<std::size_t, Rat>> by_col;
  for (const auto& [rc, v] : e_) by_col[rc.second][rc.first] = v;
  SparseMap m(rows_, other.cols_);
  for (const auto& [rc, v] : other.e_) {
    auto it = by_col.find(rc.first);
    if (it == by_col.end()) continue;
    for (const auto& [row, w] : it->second) m.add_to(row, rc.second, w * v);
  }
  return m;
}

SparseMap SparseMap::tensor(const SparseMap& other) const {
  SparseMap m(rows_ * other.rows_, cols_ * other.cols_);
  for (const auto& [rc1, v1] : e_)
    for (const auto& [rc2, v2] : other.e_)
      m.e_.emplace(std::make_pair(rc1.first * other.rows_ + rc2.first,
                                  rc1.second * other.cols_ + rc2.second),
                   v1 * v2);
  return m;
}

bool SparseMap::operator==(const SparseMap& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool SparseMap::first_differing_column(const SparseMap& a, const SparseMap& b,
                                       std::size_t* col) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("differing-column probe: shapes differ");
  if (a == b) return false;
  for (std::size_t c = 0; c < a.cols_; ++c) {
    for (std::size_t r = 0; r < a.rows_; ++r)
      if (a.at(r, c) != b.at(r, c)) {
        *col = c;
        return true;
      }
  }
  return false;
}

}  // namespace hopfkit
