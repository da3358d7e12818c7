#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hopfkit {

// Default size cap for set-composition enumeration (ordered Bell growth),
// and the hard ceiling no override may exceed.
inline constexpr int kDefaultEnumCap = 8;
inline constexpr int kHardEnumCap = 12;

/// A finite set of integer labels in [0, 63], stored as a bitmask.
/// The canonical ground set [n] is {1, ..., n}.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<int> xs);
  static LabelSet from_bits(std::uint64_t bits) { return LabelSet(bits, 0); }
  static LabelSet canonical(int n);  // {1,...,n}

  std::uint64_t bits() const { return bits_; }
  int size() const;
  bool empty() const { return bits_ == 0; }
  bool contains(int x) const;
  bool subset_of(const LabelSet& other) const { return (bits_ & ~other.bits_) == 0; }
  bool disjoint(const LabelSet& other) const { return (bits_ & other.bits_) == 0; }

  LabelSet set_union(const LabelSet& o) const { return from_bits(bits_ | o.bits_); }
  LabelSet set_intersect(const LabelSet& o) const { return from_bits(bits_ & o.bits_); }
  LabelSet set_minus(const LabelSet& o) const { return from_bits(bits_ & ~o.bits_); }

  std::vector<int> elements() const;  // ascending
  int min() const;                    // smallest element; set must be nonempty

  // Lexicographic order on the ascending element lists ({1} < {1,2} < {2}).
  static bool lex_less(const LabelSet& a, const LabelSet& b);

  bool operator==(const LabelSet& o) const { return bits_ == o.bits_; }
  bool operator!=(const LabelSet& o) const { return bits_ != o.bits_; }
  bool operator<(const LabelSet& o) const { return bits_ < o.bits_; }

  std::string render() const;  // "{1,2}", "{}" for the empty set

 private:
  LabelSet(std::uint64_t bits, int) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// An ordered pair (S, T) of disjoint sets covering S ∪ T; either part may
/// be empty.
struct Decomposition {
  LabelSet S, T;
  Decomposition(LabelSet s, LabelSet t);
  LabelSet ground() const { return S.set_union(T); }
};

/// An ordered sequence of disjoint nonempty blocks. The empty composition
/// (zero blocks, empty ground set) is the unique composition of {}.
class SetComposition {
 public:
  SetComposition() = default;  // the empty composition
  explicit SetComposition(std::vector<LabelSet> blocks);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  const LabelSet& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  const std::vector<LabelSet>& blocks() const { return blocks_; }
  LabelSet ground() const;

  bool operator==(const SetComposition& o) const { return blocks_ == o.blocks_; }
  bool operator!=(const SetComposition& o) const { return !(*this == o); }
  bool operator<(const SetComposition& o) const;  // lex on blocks, LabelSet::lex_less

  std::string render() const;  // "{1,2}|{3}", "()" when empty

 private:
  std::vector<LabelSet> blocks_;
};

SetComposition parse_set_composition(const std::string& text);

// Concatenation F·G; F must be a composition of witness.S and G of witness.T.
SetComposition concat_set(const SetComposition& F, const SetComposition& G,
                          const Decomposition& witness);

// S is F-admissible when every block lies inside S or misses it. Requires
// S ⊆ ground(F).
bool is_admissible(const LabelSet& S, const SetComposition& F);

// Block subsequence of F contained in S; requires is_admissible(S, F).
SetComposition restrict_to(const SetComposition& F, const LabelSet& S);

// Schubert statistic: sum over block pairs i < j of |I_i ∩ T| · |I_j ∩ S|.
// Equals the count of pairs (s, t) in S x T with s in a strictly later
// block than t. Requires ground(F) = D.ground().
int area(const Decomposition& D, const SetComposition& F);

// Refinement order: F <= G when every block of F is a union of adjacent
// blocks of G. (I) is the minimum; linear orders are maximal.
bool coarsens(const SetComposition& F, const SetComposition& G);  // F <= G

// Greatest lower bound under refinement, via flag intersection: intersect
// the chains of initial partial unions, read off successive differences.
SetComposition meet_set(const SetComposition& F, const SetComposition& G);

// All compositions of I, duplicate-free, in the documented order: first
// block ranges over nonempty subsets of I lexicographically (sorted element
// lists), then recursively over the rest. Throws when |I| exceeds the cap.
std::vector<SetComposition> enumerate_set_compositions(const LabelSet& I,
                                                       int cap = kDefaultEnumCap);

// A composition of [n] is decomposable when it concatenates a composition
// of [i] with one of [n]\[i] for some 0 < i < n. Ground set must be
// canonical. Cross-checked internally against meet with the canonical
// linear order.
bool is_indecomposable(const SetComposition& F);

// The canonical linear order ({1},...,{n}) as a set composition.
SetComposition canonical_order(int n);

/// A composition of n >= 0 into positive parts. Determined by its set of
/// partial sums inside {1,...,n-1}, kept as a bitmask for meet operations.
class IntComposition {
 public:
  IntComposition() = default;  // the empty composition of 0
  explicit IntComposition(std::vector<int> parts);
  static IntComposition from_cuts(int n, std::uint64_t cuts);

  const std::vector<int>& parts() const { return parts_; }
  int total() const { return n_; }
  std::uint64_t cuts() const { return cuts_; }  // partial sums as bits

  bool operator==(const IntComposition& o) const { return parts_ == o.parts_; }
  bool operator!=(const IntComposition& o) const { return !(*this == o); }

  std::string render() const;  // "2+1", "0" when empty

 private:
  std::vector<int> parts_;
  int n_ = 0;
  std::uint64_t cuts_ = 0;
};

IntComposition parse_int_composition(const std::string& text);

// Meet in the Boolean lattice of compositions of n: intersect partial-sum
// sets. Requires equal totals.
IntComposition meet_int(const IntComposition& a, const IntComposition& b);

// All 2^(n-1) compositions of n, ordered by ascending cut mask.
std::vector<IntComposition> enumerate_int_compositions(int n);

// Integer-composition analogue of indecomposability: every raw prefix sum
// splits a multi-part composition, so this is simply "one part".
bool is_indecomposable(const IntComposition& a);

// Sizes of the blocks of F, as a composition of |ground(F)|.
IntComposition size_sequence(const SetComposition& F);

}  // namespace hopfkit
