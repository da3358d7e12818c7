#pragma once

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

#include "hopfkit/rational.hpp"

namespace hopfkit {

/// Truncated power series with exact rational coefficients, degrees 0..N.
/// All arithmetic is stable under truncation: computing at order N and then
/// truncating to M <= N equals computing at order M.
class GFSeries {
 public:
  explicit GFSeries(int order);  // zero series
  GFSeries(int order, std::vector<Rat> coeffs);
  static GFSeries constant(int order, const Rat& c);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& coeff(int n) const;
  void set_coeff(int n, const Rat& v);
  const std::vector<Rat>& coeffs() const { return c_; }

  GFSeries truncate(int m) const;

  GFSeries operator+(const GFSeries& o) const;
  GFSeries operator-(const GFSeries& o) const;
  GFSeries operator*(const GFSeries& o) const;
  // Multiplicative inverse; requires a nonzero constant term.
  GFSeries reciprocal() const;
  // Coefficientwise product.
  GFSeries hadamard(const GFSeries& o) const;

  bool operator==(const GFSeries& o) const { return c_ == o.c_; }
  bool operator!=(const GFSeries& o) const { return c_ != o.c_; }

  // {"order": N, "coeffs": ["1","1","3","13"]}, coefficients as exact
  // decimal strings ("p/q" for non-integers).
  nlohmann::json to_json() const;
  static GFSeries from_json(const nlohmann::json& j);

  std::string render() const;  // "1,1,3,13"

 private:
  std::vector<Rat> c_;  // size order+1
};

}  // namespace hopfkit
