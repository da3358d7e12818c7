#pragma once

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/compositions.hpp"
#include "hopfkit/sparsemap.hpp"
#include "hopfkit/species.hpp"

namespace hopfkit {

/// Product/coproduct structure maps over a connected carrier species, as
/// sparse exact linear maps indexed by the carrier's canonical basis
/// order. Maps are computed lazily per decomposition and cached
/// (write-once per key, safe under concurrent readers).
class HopfStructure {
 public:
  virtual ~HopfStructure() = default;

  const std::string& name() const { return name_; }
  const SpeciesPtr& carrier() const { return carrier_; }
  const Rat& deformation() const { return q_; }

  // carrier(S) ⊗ carrier(T) -> carrier(I)
  SparseMap product(const Decomposition& D) const;
  // carrier(I) -> carrier(S) ⊗ carrier(T)
  SparseMap coproduct(const Decomposition& D) const;
  // k -> carrier[{}] and carrier[{}] -> k; connected, so both are 1x1.
  SparseMap unit_map() const;
  SparseMap counit_map() const;

 protected:
  HopfStructure(std::string name, SpeciesPtr carrier, Rat q);
  virtual SparseMap compute_product(const Decomposition& D) const = 0;
  virtual SparseMap compute_coproduct(const Decomposition& D) const = 0;

 private:
  std::string name_;
  SpeciesPtr carrier_;
  Rat q_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<std::uint64_t, std::uint64_t>, SparseMap> product_cache_;
  mutable std::map<std::pair<std::uint64_t, std::uint64_t>, SparseMap> coproduct_cache_;
};

using HopfPtr = std::shared_ptr<const HopfStructure>;

// Words of linear orders; concatenation product, restriction coproduct
// weighted by q to the Schubert statistic.
HopfPtr linear_orders_hopf(const Rat& q);

// One structure per ground set; all structure maps forced.
HopfPtr exponential_hopf();

// Free monoid on a positive species with the q-deformed deconcatenation
// coproduct: a tensor word over F splits along an admissible S with
// coefficient q^area, and is killed otherwise.
HopfPtr free_hopf(const Rat& q, SpeciesPtr base, int cap = kDefaultEnumCap);

// Componentwise structure on the Hadamard product of carriers, middle
// factors switched; the deformation parameter is the product of the
// factors' parameters.
HopfPtr hadamard_hopf(HopfPtr h, HopfPtr k);

// Table-built fixture with dimension 1 in even degrees and 0 in odd ones;
// products and coproducts are the forced isomorphisms on even splits.
// Not a bimonoid: compatibility fails at |I| = 4.
HopfPtr mock_even_hopf();

// Test helper: identical to `inner` except for one overridden product map.
HopfPtr with_product_override(HopfPtr inner, const Decomposition& D, SparseMap replacement,
                              std::string name);

// Structure grammar for the CLI: L | E | mock-even | free(<species>) |
// hadamard(<structure>,<structure>). The parameter q applies to each L or
// free(...) node; Hadamard nodes multiply their factors' parameters.
HopfPtr parse_structure(const std::string& expr, const Rat& q, int cap = kDefaultEnumCap);

// q^(|S||T|)-scaled swap carrier(S)⊗carrier(T) -> carrier(T)⊗carrier(S),
// flattened row-major on both sides.
SparseMap braiding_map(const Rat& q, std::size_t dim_s, std::size_t dim_t, int size_s,
                       int size_t_);

struct CheckFailure {
  std::string axiom;
  LabelSet I, S, T;
  LabelSet Sp, Tp;  // second decomposition, compat only
  bool has_second = false;
  std::string witness;
};

struct CheckReport {
  std::string structure;
  Rat q;
  int n_max = 0;
  std::vector<CheckFailure> failures;

  bool passed() const { return failures.empty(); }
  // {"structure": ..., "q": "1/2", "n_max": 4, "failures": [...]}
  nlohmann::json to_json() const;
};

// Associativity over all double decompositions of [n], n <= n_max, plus
// both unit laws.
CheckReport check_monoid(const HopfStructure& h, int n_max);
// Coassociativity and counit laws, dually.
CheckReport check_comonoid(const HopfStructure& h, int n_max);
// The compatibility square for every pair of decompositions of [n],
// with the braiding at the structure's parameter, plus the connected
// composite (coproduct after product is the identity).
CheckReport check_compat(const HopfStructure& h, int n_max);
// Union of the three.
CheckReport check_all(const HopfStructure& h, int n_max);

/// Mutually inverse degree-wise maps between the free monoid on p ⋆ q and
/// the Hadamard product of the free monoids on p and q: a word of meet-
/// constrained pairs flattens to a pair of words, and a pair of words
/// splits along the meet of their compositions.
struct StarIso {
  SpeciesPtr domain;    // free(star(p,q))
  SpeciesPtr codomain;  // hadamard(free(p),free(q))
  SparseMap forward(const LabelSet& I) const;
  SparseMap backward(const LabelSet& I) const;
};

StarIso star_iso(SpeciesPtr p, SpeciesPtr q, int cap = kDefaultEnumCap);

// A species morphism presented on basis labels: the image of a basis
// label of the source on I is a sparse vector in the target carrier's
// basis coordinates on I.
using BasisMorphism = std::function<std::vector<std::pair<std::size_t, Rat>>(
    const LabelSet& I, const BasisLabel& b)>;

// The unique monoid morphism out of a free monoid extending zeta: apply
// zeta factorwise, then the left-iterated product of the target.
// `free_of_base` must present its basis by tensor words.
SparseMap universal_map(const Species& free_of_base, const HopfStructure& target,
                        const BasisMorphism& zeta, const LabelSet& I);

}  // namespace hopfkit
