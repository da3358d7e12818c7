#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

#include "hopfkit/rational.hpp"
#include "hopfkit/species.hpp"

namespace hopfkit {

// Degree cap for the pair-enumeration path of the Hadamard transform
// (4^(n-1) composition pairs per degree).
inline constexpr int kHadamardEnumCap = 12;

/// A finite prefix (a_1, ..., a_N) of a rational sequence, indexed from 1.
/// The degree-0 coefficient is implicitly 1 in every series manipulation.
class Seq {
 public:
  Seq() = default;
  explicit Seq(std::vector<Rat> terms) : terms_(std::move(terms)) {}

  int length() const { return static_cast<int>(terms_.size()); }
  const Rat& at(int n) const;  // 1-indexed
  void push_back(Rat v) { terms_.push_back(std::move(v)); }
  const std::vector<Rat>& terms() const { return terms_; }

  bool operator==(const Seq& o) const { return terms_ == o.terms_; }
  bool operator!=(const Seq& o) const { return terms_ != o.terms_; }

  bool all_integer() const;
  bool all_nonnegative() const;

 private:
  std::vector<Rat> terms_;
};

// "1,2,6,24" or a JSON array of decimal strings.
Seq parse_seq(const std::string& text);
std::string render_seq(const Seq& s);           // comma-separated
nlohmann::json seq_to_json(const Seq& s);       // array of strings

// b_n = a_n - sum_{k=1}^{n-1} a_{n-k} b_k.
Seq boolean_transform(const Seq& a);

// a_n = b_n + sum_{k=1}^{n-1} a_{n-k} b_k; exact inverse of the transform.
Seq inverse_boolean(const Seq& b);

// Transform of the termwise product of the inverse transforms, by two
// routes: summing p_alpha q_beta over pairs of integer compositions whose
// cut sets are disjoint, and transforming the product of the inverse
// transforms. Both are computed and compared exactly; lengths above
// kHadamardEnumCap are rejected.
Seq hadamard_boolean(const Seq& p, const Seq& q);
Seq hadamard_boolean_by_pairs(const Seq& p, const Seq& q);
Seq hadamard_boolean_by_transform(const Seq& p, const Seq& q);

struct ConditionVerdict {
  bool pass = true;
  nlohmann::json witness;  // null when passing
};

/// Independent verdicts for the four necessary conditions on the dimension
/// sequence of a connected Hopf monoid; no short-circuiting, since the
/// conditions are logically independent.
struct FeasibilityReport {
  ConditionVerdict boolean_nonneg;  // all transform terms >= 0
  ConditionVerdict submult;         // a_i a_j <= a_{i+j}
  ConditionVerdict exp_ratio;       // (1 + sum a_n x^n) / (1 + sum a_n/n! x^n) >= 0
  ConditionVerdict cubic;           // a_3 >= 3 a_2 a_1 - 2 a_1^3

  bool all_pass() const;
  nlohmann::json to_json() const;
};

// Requires nonnegative integer terms.
FeasibilityReport feasibility(const Seq& a);

// Smallest next term keeping the transform nonnegative; requires an
// integer prefix that itself passes, and equals
// sum_{k=1}^{N} a_{N+1-k} b_k.
Int min_next_term(const Seq& a);

// b_n = sum over indecomposable compositions F of [n] of the product of
// base dimensions over the blocks; cross-checked exactly against the
// Boolean transform of the dimension sequence of the free monoid.
Seq indecomposable_transform(const SpeciesPtr& p, int N, int cap = kDefaultEnumCap);

// Brute-force count of partitions of [n] in which no proper prefix [i] is
// a union of blocks.
Int atomic_partitions(int n, int cap = kDefaultEnumCap);

// For weights w weakly decreasing with w_1 <= 1: coefficient sequences of
// 1 - (1 + sum w_n a_n x^n)/(1 + sum a_n x^n) and of its reciprocal-form
// companion (1 + sum a_n x^n)/(1 + sum w_n a_n x^n), degrees 1..N.
std::pair<Seq, Seq> weighted_ratio_series(const Seq& a, const Seq& w);

}  // namespace hopfkit
