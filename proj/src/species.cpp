#include "hopfkit/species.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace hopfkit {

namespace {

int cmp_int(long a, long b) { return a < b ? -1 : (a > b ? 1 : 0); }

int cmp_set(const LabelSet& a, const LabelSet& b) {
  if (LabelSet::lex_less(a, b)) return -1;
  if (LabelSet::lex_less(b, a)) return 1;
  return 0;
}

int cmp_word(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return cmp_int(a[i], b[i]);
  return cmp_int(static_cast<long>(a.size()), static_cast<long>(b.size()));
}

int cmp_blocks(const std::vector<LabelSet>& a, const std::vector<LabelSet>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (int c = cmp_set(a[i], b[i])) return c;
  return cmp_int(static_cast<long>(a.size()), static_cast<long>(b.size()));
}

}  // namespace

BasisLabel BasisLabel::unit() { return BasisLabel{}; }

BasisLabel BasisLabel::singleton(int x) {
  BasisLabel b;
  b.kind = Kind::Singleton;
  b.point = x;
  return b;
}

BasisLabel BasisLabel::order(std::vector<int> w) {
  BasisLabel b;
  b.kind = Kind::Order;
  b.word = std::move(w);
  return b;
}

BasisLabel BasisLabel::partition(std::vector<LabelSet> blocks) {
  for (const LabelSet& blk : blocks)
    if (blk.empty()) throw std::invalid_argument("partition with empty block");
  std::sort(blocks.begin(), blocks.end(),
            [](const LabelSet& a, const LabelSet& b) { return a.min() < b.min(); });
  BasisLabel b;
  b.kind = Kind::Partition;
  b.blocks = std::move(blocks);
  return b;
}

BasisLabel BasisLabel::element(int x) {
  BasisLabel b;
  b.kind = Kind::Element;
  b.point = x;
  return b;
}

BasisLabel BasisLabel::tensor_word(SetComposition comp, std::vector<BasisLabel> factors) {
  if (static_cast<std::size_t>(comp.block_count()) != factors.size())
    throw std::invalid_argument("tensor word: one factor per block required");
  BasisLabel b;
  b.kind = Kind::TensorWord;
  b.comp = std::move(comp);
  b.children = std::move(factors);
  return b;
}

BasisLabel BasisLabel::pair(BasisLabel left, BasisLabel right) {
  BasisLabel b;
  b.kind = Kind::Pair;
  b.children.push_back(std::move(left));
  b.children.push_back(std::move(right));
  return b;
}

BasisLabel BasisLabel::split(LabelSet S, LabelSet T, BasisLabel left, BasisLabel right) {
  if (!S.disjoint(T)) throw std::invalid_argument("split parts overlap");
  BasisLabel b;
  b.kind = Kind::Split;
  b.split_left = S;
  b.split_right = T;
  b.children.push_back(std::move(left));
  b.children.push_back(std::move(right));
  return b;
}

int BasisLabel::compare(const BasisLabel& o) const {
  if (int c = cmp_int(static_cast<long>(kind), static_cast<long>(o.kind))) return c;
  switch (kind) {
    case Kind::Unit:
      return 0;
    case Kind::Singleton:
    case Kind::Element:
      return cmp_int(point, o.point);
    case Kind::Order:
      return cmp_word(word, o.word);
    case Kind::Partition:
      return cmp_blocks(blocks, o.blocks);
    case Kind::TensorWord: {
      if (int c = cmp_blocks(comp.blocks(), o.comp.blocks())) return c;
      break;
    }
    case Kind::Pair:
      break;
    case Kind::Split: {
      if (int c = cmp_set(split_left, o.split_left)) return c;
      if (int c = cmp_set(split_right, o.split_right)) return c;
      break;
    }
  }
  for (std::size_t i = 0; i < children.size() && i < o.children.size(); ++i)
    if (int c = children[i].compare(o.children[i])) return c;
  return cmp_int(static_cast<long>(children.size()), static_cast<long>(o.children.size()));
}

std::string BasisLabel::repr() const {
  switch (kind) {
    case Kind::Unit:
      return "*";
    case Kind::Singleton:
      return std::to_string(point);
    case Kind::Element:
      return "@" + std::to_string(point);
    case Kind::Order: {
      if (word.empty()) return "()";
      std::string s;
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += "|";
        s += std::to_string(word[i]);
      }
      return s;
    }
    case Kind::Partition: {
      if (blocks.empty()) return "{}";
      std::string s;
      for (const LabelSet& b : blocks) s += b.render();
      return s;
    }
    case Kind::TensorWord: {
      std::string s = "w(";
      for (int i = 0; i < comp.block_count(); ++i) {
        if (i) s += ",";
        s += comp.block(i).render() + ":" + children[static_cast<std::size_t>(i)].repr();
      }
      return s + ")";
    }
    case Kind::Pair:
      return "(" + children[0].repr() + "," + children[1].repr() + ")";
    case Kind::Split:
      return "s(" + split_left.render() + ":" + children[0].repr() + "," +
             split_right.render() + ":" + children[1].repr() + ")";
  }
  return "?";
}

Bijection Bijection::identity(const LabelSet& I) {
  Bijection b;
  b.domain_ = I;
  for (int e : I.elements()) b.table_[static_cast<std::size_t>(e)] = static_cast<signed char>(e);
  return b;
}

Bijection Bijection::increasing(const LabelSet& from, const LabelSet& to) {
  return from_images(from, to.elements());
}

Bijection Bijection::from_images(const LabelSet& from, const std::vector<int>& images) {
  std::vector<int> src = from.elements();
  if (src.size() != images.size())
    throw std::invalid_argument("bijection: domain and image sizes differ");
  Bijection b;
  b.domain_ = from;
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    int img = images[i];
    if (img < 0 || img > 63) throw std::invalid_argument("bijection image out of range");
    if ((seen >> img) & 1u) throw std::invalid_argument("bijection images repeat");
    seen |= std::uint64_t{1} << img;
    b.table_[static_cast<std::size_t>(src[i])] = static_cast<signed char>(img);
  }
  return b;
}

int Bijection::apply(int x) const {
  if (x < 0 || x > 63 || table_[static_cast<std::size_t>(x)] < 0)
    throw std::invalid_argument("bijection applied outside its domain");
  return table_[static_cast<std::size_t>(x)];
}

LabelSet Bijection::apply(const LabelSet& s) const {
  std::uint64_t bits = 0;
  for (int e : s.elements()) bits |= std::uint64_t{1} << apply(e);
  return LabelSet::from_bits(bits);
}

SetComposition Bijection::apply(const SetComposition& f) const {
  std::vector<LabelSet> blocks;
  blocks.reserve(static_cast<std::size_t>(f.block_count()));
  for (const LabelSet& b : f.blocks()) blocks.push_back(apply(b));
  return SetComposition(std::move(blocks));
}

Bijection Bijection::then(const Bijection& next) const {
  Bijection b;
  b.domain_ = domain_;
  for (int e : domain_.elements())
    b.table_[static_cast<std::size_t>(e)] = static_cast<signed char>(next.apply(apply(e)));
  return b;
}

BasisLabel relabel(const Bijection& sigma, const BasisLabel& b) {
  switch (b.kind) {
    case BasisLabel::Kind::Unit:
      return BasisLabel::unit();
    case BasisLabel::Kind::Singleton:
      return BasisLabel::singleton(sigma.apply(b.point));
    case BasisLabel::Kind::Element:
      return BasisLabel::element(sigma.apply(b.point));
    case BasisLabel::Kind::Order: {
      std::vector<int> w;
      w.reserve(b.word.size());
      for (int x : b.word) w.push_back(sigma.apply(x));
      return BasisLabel::order(std::move(w));
    }
    case BasisLabel::Kind::Partition: {
      std::vector<LabelSet> blocks;
      blocks.reserve(b.blocks.size());
      for (const LabelSet& blk : b.blocks) blocks.push_back(sigma.apply(blk));
      return BasisLabel::partition(std::move(blocks));
    }
    case BasisLabel::Kind::TensorWord: {
      std::vector<BasisLabel> ch;
      ch.reserve(b.children.size());
      for (const BasisLabel& c : b.children) ch.push_back(relabel(sigma, c));
      return BasisLabel::tensor_word(sigma.apply(b.comp), std::move(ch));
    }
    case BasisLabel::Kind::Pair:
      return BasisLabel::pair(relabel(sigma, b.children[0]), relabel(sigma, b.children[1]));
    case BasisLabel::Kind::Split:
      return BasisLabel::split(sigma.apply(b.split_left), sigma.apply(b.split_right),
                               relabel(sigma, b.children[0]), relabel(sigma, b.children[1]));
  }
  throw std::logic_error("relabel: unknown label kind");
}

Int Species::dim(int n) const {
  if (n < 0) throw std::invalid_argument("dimension degree must be >= 0");
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = dim_memo_.find(n);
    if (it != dim_memo_.end()) return it->second;
  }
  Int d = dim_impl(n);
  std::lock_guard<std::mutex> lock(mu_);
  dim_memo_.emplace(n, d);
  return d;
}

void Species::for_each_basis(const LabelSet& I,
                             const std::function<void(const BasisLabel&)>& fn) const {
  int n = I.size();
  LabelSet can = LabelSet::canonical(n);
  if (I == can) {
    gen_canonical(n, fn);
    return;
  }
  Bijection tau = Bijection::increasing(can, I);
  gen_canonical(n, [&](const BasisLabel& b) { fn(relabel(tau, b)); });
}

const BasisData& Species::basis_data(const LabelSet& I) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = basis_memo_.find(I.bits());
    if (it != basis_memo_.end()) return *it->second;
  }
  if (dim(I.size()) > kBasisMaterializeCap)
    throw std::length_error("basis of " + name() + " on a set of size " +
                            std::to_string(I.size()) + " is too large to materialize");
  auto data = std::make_shared<BasisData>();
  for_each_basis(I, [&](const BasisLabel& b) { data->labels.push_back(b); });
  std::sort(data->labels.begin(), data->labels.end());
  for (std::size_t i = 0; i < data->labels.size(); ++i) data->index.emplace(data->labels[i], i);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = basis_memo_.emplace(I.bits(), std::move(data));
  return *it->second;
}

std::vector<BasisLabel> Species::basis(const LabelSet& I) const { return basis_data(I).labels; }

std::size_t Species::index_of(const LabelSet& I, const BasisLabel& b) const {
  const BasisData& data = basis_data(I);
  auto it = data.index.find(b);
  if (it == data.index.end())
    throw std::invalid_argument("label " + b.repr() + " is not a basis element of " + name());
  return it->second;
}

namespace {

class OneSpecies final : public Species {
 public:
  OneSpecies() : Species("one", false) {}

 protected:
  Int dim_impl(int n) const override { return n == 0 ? 1 : 0; }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    if (n == 0) fn(BasisLabel::unit());
  }
};

class XSpecies final : public Species {
 public:
  XSpecies() : Species("X", true) {}

 protected:
  Int dim_impl(int n) const override { return n == 1 ? 1 : 0; }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    if (n == 1) fn(BasisLabel::singleton(1));
  }
};

class ESpecies final : public Species {
 public:
  explicit ESpecies(bool positive) : Species(positive ? "Eplus" : "E", positive) {}

 protected:
  Int dim_impl(int n) const override { return (n == 0 && positive()) ? 0 : 1; }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    if (n == 0) {
      if (!positive()) fn(BasisLabel::partition({}));
      return;
    }
    fn(BasisLabel::partition({LabelSet::canonical(n)}));
  }
};

class LSpecies final : public Species {
 public:
  LSpecies() : Species("L", false) {}

 protected:
  Int dim_impl(int n) const override { return factorial(static_cast<unsigned>(n)); }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    std::vector<int> w;
    for (int i = 1; i <= n; ++i) w.push_back(i);
    do {
      fn(BasisLabel::order(w));
    } while (std::next_permutation(w.begin(), w.end()));
  }
};

class PiSpecies final : public Species {
 public:
  PiSpecies() : Species("Pi", false) {}

 protected:
  Int dim_impl(int n) const override { return bell_number(static_cast<unsigned>(n)); }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    // Restricted-growth strings in lexicographic order; blocks appear in
    // order of first element, i.e. sorted by least element.
    if (n == 0) {
      fn(BasisLabel::partition({}));
      return;
    }
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    auto emit = [&] {
      int parts = 1 + *std::max_element(rgs.begin(), rgs.end());
      std::vector<std::uint64_t> bits(static_cast<std::size_t>(parts), 0);
      for (int i = 0; i < n; ++i)
        bits[static_cast<std::size_t>(rgs[static_cast<std::size_t>(i)])] |=
            std::uint64_t{1} << (i + 1);
      std::vector<LabelSet> blocks;
      for (std::uint64_t b : bits) blocks.push_back(LabelSet::from_bits(b));
      fn(BasisLabel::partition(std::move(blocks)));
    };
    while (true) {
      emit();
      int i = n - 1;
      while (i > 0) {
        int maxprefix = 0;
        for (int j = 0; j < i; ++j)
          maxprefix = std::max(maxprefix, rgs[static_cast<std::size_t>(j)]);
        if (rgs[static_cast<std::size_t>(i)] <= maxprefix) break;
        --i;
      }
      if (i == 0) return;
      ++rgs[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) rgs[static_cast<std::size_t>(j)] = 0;
    }
  }
};

class ElemSpecies final : public Species {
 public:
  ElemSpecies() : Species("elem", true) {}

 protected:
  Int dim_impl(int n) const override { return n; }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    for (int i = 1; i <= n; ++i) fn(BasisLabel::element(i));
  }
};

std::vector<LabelSet> subsets_lex(const LabelSet& I) {
  std::vector<LabelSet> subs;
  std::uint64_t full = I.bits();
  std::uint64_t s = full;
  while (true) {
    subs.push_back(LabelSet::from_bits(s));
    if (s == 0) break;
    s = (s - 1) & full;
  }
  std::sort(subs.begin(), subs.end(), LabelSet::lex_less);
  return subs;
}

class CauchySpecies final : public Species {
 public:
  CauchySpecies(SpeciesPtr p, SpeciesPtr q, std::string name, bool positive)
      : Species(std::move(name), positive), p_(std::move(p)), q_(std::move(q)) {}

 protected:
  Int dim_impl(int n) const override {
    Int total = 0;
    for (int k = 0; k <= n; ++k)
      total += binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) * p_->dim(k) *
               q_->dim(n - k);
    return total;
  }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    LabelSet I = LabelSet::canonical(n);
    for (const LabelSet& S : subsets_lex(I)) {
      LabelSet T = I.set_minus(S);
      if (p_->dim(S.size()) == 0 || q_->dim(T.size()) == 0) continue;
      for (const BasisLabel& bp : basis_of(*p_, S))
        for (const BasisLabel& bq : basis_of(*q_, T))
          fn(BasisLabel::split(S, T, bp, bq));
    }
  }

 private:
  static const std::vector<BasisLabel>& basis_of(const Species& sp, const LabelSet& I) {
    return sp.basis_data(I).labels;
  }
  SpeciesPtr p_, q_;
};

class HadamardSpecies final : public Species {
 public:
  HadamardSpecies(SpeciesPtr p, SpeciesPtr q, std::string name, bool positive)
      : Species(std::move(name), positive), p_(std::move(p)), q_(std::move(q)) {}

 protected:
  Int dim_impl(int n) const override { return p_->dim(n) * q_->dim(n); }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    LabelSet I = LabelSet::canonical(n);
    if (p_->dim(n) == 0 || q_->dim(n) == 0) return;
    for (const BasisLabel& bp : p_->basis_data(I).labels)
      for (const BasisLabel& bq : q_->basis_data(I).labels) fn(BasisLabel::pair(bp, bq));
  }

 private:
  SpeciesPtr p_, q_;
};

// Interior partial unions of a composition (the full flag minus {} and I);
// two compositions meet at the one-block composition exactly when these
// are disjoint.
std::vector<std::uint64_t> interior_flag(const SetComposition& F) {
  std::vector<std::uint64_t> out;
  std::uint64_t acc = 0;
  for (int i = 0; i + 1 < F.block_count(); ++i) {
    acc |= F.block(i).bits();
    out.push_back(acc);
  }
  return out;
}

bool sorted_disjoint(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

struct WeightedComp {
  SetComposition F;
  std::vector<std::uint64_t> interior;
  Int weight;  // product of factor dimensions over the blocks
};

std::vector<WeightedComp> weighted_comps(const Species& sp, const LabelSet& I, int cap) {
  std::vector<WeightedComp> out;
  for (SetComposition& F : enumerate_set_compositions(I, cap)) {
    Int w = 1;
    for (const LabelSet& b : F.blocks()) {
      w *= sp.dim(b.size());
      if (w == 0) break;
    }
    if (w == 0) continue;
    auto interior = interior_flag(F);
    out.push_back(WeightedComp{std::move(F), std::move(interior), std::move(w)});
  }
  return out;
}

// Runs fn once per choice of one basis label for each block of F, drawing
// from sp's basis on that block.
void for_each_factor_tuple(const Species& sp, const SetComposition& F,
                           const std::function<void(const std::vector<BasisLabel>&)>& fn) {
  int k = F.block_count();
  std::vector<const std::vector<BasisLabel>*> lists;
  for (int i = 0; i < k; ++i) {
    lists.push_back(&sp.basis_data(F.block(i)).labels);
    if (lists.back()->empty()) return;
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  std::vector<BasisLabel> tuple;
  while (true) {
    tuple.clear();
    for (int i = 0; i < k; ++i) tuple.push_back((*lists[static_cast<std::size_t>(i)])[idx[static_cast<std::size_t>(i)]]);
    fn(tuple);
    int pos = k - 1;
    while (pos >= 0) {
      if (++idx[static_cast<std::size_t>(pos)] < lists[static_cast<std::size_t>(pos)]->size()) break;
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

class StarSpecies final : public Species {
 public:
  StarSpecies(SpeciesPtr p, SpeciesPtr q, int cap, std::string name)
      : Species(std::move(name), true), p_(std::move(p)), q_(std::move(q)), cap_(cap) {
    if (!p_->positive() || !q_->positive())
      throw std::invalid_argument("star requires positive species");
  }

 protected:
  Int dim_impl(int n) const override {
    if (n == 0) return 0;
    LabelSet I = LabelSet::canonical(n);
    auto ps = weighted_comps(*p_, I, cap_);
    auto qs = weighted_comps(*q_, I, cap_);
    Int total = 0;
    for (const auto& a : ps)
      for (const auto& b : qs)
        if (sorted_disjoint(a.interior, b.interior)) total += a.weight * b.weight;
    return total;
  }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    if (n == 0) return;
    LabelSet I = LabelSet::canonical(n);
    auto ps = weighted_comps(*p_, I, cap_);
    auto qs = weighted_comps(*q_, I, cap_);
    for (const auto& a : ps)
      for (const auto& b : qs) {
        if (!sorted_disjoint(a.interior, b.interior)) continue;
        for_each_factor_tuple(*p_, a.F, [&](const std::vector<BasisLabel>& pf) {
          BasisLabel left = BasisLabel::tensor_word(a.F, pf);
          for_each_factor_tuple(*q_, b.F, [&](const std::vector<BasisLabel>& qf) {
            fn(BasisLabel::pair(left, BasisLabel::tensor_word(b.F, qf)));
          });
        });
      }
  }

 private:
  SpeciesPtr p_, q_;
  int cap_;
};

class FreeSpecies final : public Species {
 public:
  FreeSpecies(SpeciesPtr base, int cap, std::string name)
      : Species(std::move(name), false), base_(std::move(base)), cap_(cap) {
    if (!base_->positive())
      throw std::invalid_argument("free monoid requires a positive species");
  }

  const SpeciesPtr& base() const { return base_; }

 protected:
  Int dim_impl(int n) const override {
    if (n == 0) return 1;
    // Sum over integer compositions of n of the multinomial coefficient
    // times the product of base dimensions of the parts.
    Int total = 0;
    for (const IntComposition& alpha : enumerate_int_compositions(n)) {
      Int term = 1;
      int used = 0;
      for (int part : alpha.parts()) {
        used += part;
        term *= binomial(static_cast<unsigned>(used), static_cast<unsigned>(part));
        term *= base_->dim(part);
        if (term == 0) break;
      }
      total += term;
    }
    return total;
  }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    LabelSet I = LabelSet::canonical(n);
    for (const SetComposition& F : enumerate_set_compositions(I, cap_)) {
      bool dead = false;
      for (const LabelSet& b : F.blocks())
        if (base_->dim(b.size()) == 0) {
          dead = true;
          break;
        }
      if (dead) continue;
      for_each_factor_tuple(*base_, F, [&](const std::vector<BasisLabel>& factors) {
        fn(BasisLabel::tensor_word(F, factors));
      });
    }
  }

 private:
  SpeciesPtr base_;
  int cap_;
};

}  // namespace

SpeciesPtr builtin(const std::string& name) {
  if (name == "one") return std::make_shared<OneSpecies>();
  if (name == "X") return std::make_shared<XSpecies>();
  if (name == "E") return std::make_shared<ESpecies>(false);
  if (name == "Eplus") return std::make_shared<ESpecies>(true);
  if (name == "L") return std::make_shared<LSpecies>();
  if (name == "Pi") return std::make_shared<PiSpecies>();
  if (name == "elem") return std::make_shared<ElemSpecies>();
  throw std::invalid_argument("unknown species name: '" + name + "'");
}

SpeciesPtr cauchy(SpeciesPtr p, SpeciesPtr q) {
  bool positive = p->dim(0) * q->dim(0) == 0;
  std::string name = "cauchy(" + p->name() + "," + q->name() + ")";
  return std::make_shared<CauchySpecies>(std::move(p), std::move(q), std::move(name), positive);
}

SpeciesPtr hadamard_species(SpeciesPtr p, SpeciesPtr q) {
  bool positive = p->dim(0) * q->dim(0) == 0;
  std::string name = "hadamard(" + p->name() + "," + q->name() + ")";
  return std::make_shared<HadamardSpecies>(std::move(p), std::move(q), std::move(name), positive);
}

SpeciesPtr star(SpeciesPtr p, SpeciesPtr q, int cap) {
  std::string name = "star(" + p->name() + "," + q->name() + ")";
  return std::make_shared<StarSpecies>(std::move(p), std::move(q), cap, std::move(name));
}

SpeciesPtr free_species(SpeciesPtr base, int cap) {
  std::string name = "free(" + base->name() + ")";
  return std::make_shared<FreeSpecies>(std::move(base), cap, std::move(name));
}

namespace {

struct ExprParser {
  const std::string& s;
  std::size_t pos = 0;
  int cap;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected a name in species expression: " + s);
    return s.substr(start, pos - start);
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  SpeciesPtr expr() {
    std::string name = ident();
    if (name == "cauchy" || name == "hadamard" || name == "star") {
      if (!eat('(')) throw std::invalid_argument("expected '(' after " + name);
      SpeciesPtr a = expr();
      if (!eat(',')) throw std::invalid_argument("expected ',' in " + name + "(...)");
      SpeciesPtr b = expr();
      if (!eat(')')) throw std::invalid_argument("expected ')' in " + name + "(...)");
      if (name == "cauchy") return cauchy(a, b);
      if (name == "hadamard") return hadamard_species(a, b);
      return star(a, b, cap);
    }
    if (name == "free") {
      if (!eat('(')) throw std::invalid_argument("expected '(' after free");
      SpeciesPtr a = expr();
      if (!eat(')')) throw std::invalid_argument("expected ')' in free(...)");
      return free_species(a, cap);
    }
    return builtin(name);
  }
};

}  // namespace

SpeciesPtr parse_species(const std::string& expr, int cap) {
  ExprParser p{expr, 0, cap};
  SpeciesPtr result = p.expr();
  p.skip_ws();
  if (p.pos != expr.size())
    throw std::invalid_argument("trailing input in species expression: " + expr);
  return result;
}

GFSeries ordinary_gf(const Species& p, int order) {
  GFSeries s(order);
  for (int n = 0; n <= order; ++n) s.set_coeff(n, Rat(p.dim(n)));
  return s;
}

namespace {

// A structurally determined linear order covering the label's ground set,
// when the label contains enough order data to pin one down. Relabeling
// commutes with this extraction, so orbits of anchored labels are counted
// with a single transport each.
std::optional<std::vector<int>> anchor_order(const BasisLabel& b) {
  switch (b.kind) {
    case BasisLabel::Kind::Unit:
      return std::vector<int>{};
    case BasisLabel::Kind::Singleton:
      return std::vector<int>{b.point};
    case BasisLabel::Kind::Order:
      return b.word;
    case BasisLabel::Kind::Partition:
      if (b.blocks.empty()) return std::vector<int>{};
      return std::nullopt;
    case BasisLabel::Kind::Element:
      return std::nullopt;
    case BasisLabel::Kind::TensorWord: {
      std::vector<int> acc;
      for (const BasisLabel& c : b.children) {
        auto sub = anchor_order(c);
        if (!sub) return std::nullopt;
        acc.insert(acc.end(), sub->begin(), sub->end());
      }
      return acc;
    }
    case BasisLabel::Kind::Pair: {
      if (auto left = anchor_order(b.children[0])) return left;
      return anchor_order(b.children[1]);
    }
    case BasisLabel::Kind::Split: {
      auto left = anchor_order(b.children[0]);
      if (!left) return std::nullopt;
      auto right = anchor_order(b.children[1]);
      if (!right) return std::nullopt;
      left->insert(left->end(), right->begin(), right->end());
      return left;
    }
  }
  return std::nullopt;
}

std::string canonical_rep(const BasisLabel& b, const LabelSet& I) {
  std::vector<int> elems = I.elements();
  if (auto a = anchor_order(b)) {
    // sigma sends the anchor word to the increasing order of I.
    std::vector<int> by_source(elems.size());
    for (std::size_t j = 0; j < a->size(); ++j) {
      int src = (*a)[j];
      std::size_t rank = static_cast<std::size_t>(
          std::lower_bound(elems.begin(), elems.end(), src) - elems.begin());
      by_source[rank] = elems[j];
    }
    Bijection sigma = Bijection::from_images(I, by_source);
    return relabel(sigma, b).repr();
  }
  std::vector<int> images = elems;
  std::string best;
  bool first = true;
  do {
    Bijection sigma = Bijection::from_images(I, images);
    std::string r = relabel(sigma, b).repr();
    if (first || r < best) {
      best = std::move(r);
      first = false;
    }
  } while (std::next_permutation(images.begin(), images.end()));
  return best;
}

}  // namespace

Int orbit_count(const Species& p, int n) {
  LabelSet I = LabelSet::canonical(n);
  std::unordered_set<std::string> reps;
  p.for_each_basis(I, [&](const BasisLabel& b) { reps.insert(canonical_rep(b, I)); });
  return Int(reps.size());
}

GFSeries type_gf(const Species& p, int order) {
  GFSeries s(order);
  for (int n = 0; n <= order; ++n) s.set_coeff(n, Rat(orbit_count(p, n)));
  return s;
}

}  // namespace hopfkit
