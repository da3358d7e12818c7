#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hopfkit/compositions.hpp"
#include "hopfkit/gf.hpp"
#include "hopfkit/rational.hpp"

namespace hopfkit {

// Largest basis we are willing to materialize with an index; streaming
// enumeration has no such limit.
inline constexpr long kBasisMaterializeCap = 300000;

/// A labeled basis structure. Variants cover every construction in the
/// library: Unit (the empty-set structure of the unit species), Singleton
/// and Element (a marked point), Order (a linear order as a word),
/// Partition (unordered blocks, kept sorted by least element), TensorWord
/// (factors laid along the blocks of a set composition), Pair (two
/// structures on the same ground set), Split (two structures on the two
/// parts of a decomposition).
struct BasisLabel {
  enum class Kind : int {
    Unit = 0,
    Singleton,
    Order,
    Partition,
    Element,
    TensorWord,
    Pair,
    Split
  };

  Kind kind = Kind::Unit;
  int point = 0;                     // Singleton, Element
  std::vector<int> word;             // Order
  std::vector<LabelSet> blocks;      // Partition
  SetComposition comp;               // TensorWord
  LabelSet split_left, split_right;  // Split
  std::vector<BasisLabel> children;  // TensorWord: one per block; Pair/Split: two

  static BasisLabel unit();
  static BasisLabel singleton(int x);
  static BasisLabel order(std::vector<int> w);
  static BasisLabel partition(std::vector<LabelSet> blocks);
  static BasisLabel element(int x);
  static BasisLabel tensor_word(SetComposition comp, std::vector<BasisLabel> factors);
  static BasisLabel pair(BasisLabel left, BasisLabel right);
  static BasisLabel split(LabelSet S, LabelSet T, BasisLabel left, BasisLabel right);

  int compare(const BasisLabel& o) const;  // structural three-way
  bool operator==(const BasisLabel& o) const { return compare(o) == 0; }
  bool operator!=(const BasisLabel& o) const { return compare(o) != 0; }
  bool operator<(const BasisLabel& o) const { return compare(o) < 0; }

  std::string repr() const;  // canonical serialization
};

/// A bijection between two label sets, stored as a table on [0, 63].
class Bijection {
 public:
  static Bijection identity(const LabelSet& I);
  // i-th smallest of `from` maps to i-th smallest of `to`.
  static Bijection increasing(const LabelSet& from, const LabelSet& to);
  // i-th smallest of `from` maps to images[i].
  static Bijection from_images(const LabelSet& from, const std::vector<int>& images);

  int apply(int x) const;
  LabelSet apply(const LabelSet& s) const;
  SetComposition apply(const SetComposition& f) const;
  Bijection then(const Bijection& next) const;  // x -> next(this(x))

  const LabelSet& domain() const { return domain_; }

 private:
  Bijection() { table_.fill(-1); }
  LabelSet domain_;
  std::array<signed char, 64> table_;
};

// The functorial transport of a structure along a bijection.
BasisLabel relabel(const Bijection& sigma, const BasisLabel& b);

struct BasisData {
  std::vector<BasisLabel> labels;           // sorted in canonical order
  std::map<BasisLabel, std::size_t> index;  // label -> position
};

/// A finite-dimensional species presented by explicit labeled bases on the
/// canonical sets [n]; values on other label sets are obtained by
/// transport along the increasing bijection. Instances are immutable and
/// safe for concurrent readers; per-instance memo tables are internal.
class Species {
 public:
  virtual ~Species() = default;

  const std::string& name() const { return name_; }
  bool positive() const { return positive_; }

  // |basis([n])|, computed by closed form or convolution and memoized.
  Int dim(int n) const;

  // Streams the basis of I in a deterministic order (not necessarily the
  // sorted canonical order; see basis_data).
  void for_each_basis(const LabelSet& I,
                      const std::function<void(const BasisLabel&)>& fn) const;

  // Materialized basis sorted by canonical serialization with an index
  // map, memoized per ground set. Throws std::length_error beyond
  // kBasisMaterializeCap.
  const BasisData& basis_data(const LabelSet& I) const;
  std::vector<BasisLabel> basis(const LabelSet& I) const;
  std::size_t index_of(const LabelSet& I, const BasisLabel& b) const;

 protected:
  Species(std::string name, bool positive) : name_(std::move(name)), positive_(positive) {}

  virtual Int dim_impl(int n) const = 0;
  // Generate the basis on the canonical set [n].
  virtual void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const = 0;

 private:
  std::string name_;
  bool positive_;
  mutable std::mutex mu_;
  mutable std::map<int, Int> dim_memo_;
  mutable std::map<std::uint64_t, std::shared_ptr<const BasisData>> basis_memo_;
};

using SpeciesPtr = std::shared_ptr<const Species>;

// Built-in species by name: one, X, E, Eplus, L, Pi, elem.
SpeciesPtr builtin(const std::string& name);

SpeciesPtr cauchy(SpeciesPtr p, SpeciesPtr q);
SpeciesPtr hadamard_species(SpeciesPtr p, SpeciesPtr q);
// Positive species spanned by pairs of tensor words whose compositions
// meet at the one-block composition. Both factors must be positive.
SpeciesPtr star(SpeciesPtr p, SpeciesPtr q, int cap = kDefaultEnumCap);
// Underlying species of the free monoid on a positive species.
SpeciesPtr free_species(SpeciesPtr base, int cap = kDefaultEnumCap);

// Prefix grammar: one,X,E,Eplus,L,Pi,elem, cauchy(a,b), hadamard(a,b),
// star(a,b), free(a).
SpeciesPtr parse_species(const std::string& expr, int cap = kDefaultEnumCap);

GFSeries ordinary_gf(const Species& p, int order);
GFSeries type_gf(const Species& p, int order);

// Orbits of the symmetric-group action on basis([n]), counted by streaming
// canonical representatives.
Int orbit_count(const Species& p, int n);

}  // namespace hopfkit
