#pragma once

#include <cstddef>
#include <map>
#include <utility>

#include "hopfkit/rational.hpp"

namespace hopfkit {

/// A sparse linear map between finite index spaces, with exact rational
/// entries. Zero entries are never stored, so equality is entrywise.
/// Tensor-product index spaces are flattened row-major: (i, j) with j
/// drawn from the second factor maps to i * dim2 + j.
class SparseMap {
 public:
  SparseMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMap identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rat& v);  // overwrites; drops zeros
  void add_to(std::size_t r, std::size_t c, const Rat& v);

  SparseMap& operator+=(const SparseMap& o);
  SparseMap operator+(const SparseMap& o) const;
  SparseMap scaled(const Rat& k) const;

  // this ∘ other (apply other first); other.rows() must equal cols().
  SparseMap compose(const SparseMap& other) const;
  // Kronecker product with row-major flattening of both index spaces.
  SparseMap tensor(const SparseMap& other) const;

  bool is_zero() const { return e_.empty(); }
  std::size_t entry_count() const { return e_.size(); }
  bool operator==(const SparseMap& o) const;
  bool operator!=(const SparseMap& o) const { return !(*this == o); }

  const std::map<std::pair<std::size_t, std::size_t>, Rat>& entries() const { return e_; }

  // First column where the two maps act differently, if any; the probe
  // used by the axiom checkers to name a witness basis element.
  static bool first_differing_column(const SparseMap& a, const SparseMap& b, std::size_t* col);

 private:
  std::size_t rows_, cols_;
  std::map<std::pair<std::size_t, std::size_t>, Rat> e_;
};

}  // namespace hopfkit
