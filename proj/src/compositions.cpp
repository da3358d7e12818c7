#include "hopfkit/compositions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace hopfkit {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

LabelSet::LabelSet(std::initializer_list<int> xs) {
  for (int x : xs) {
    if (x < 0 || x > 63) fail("label out of range [0,63]: " + std::to_string(x));
    bits_ |= (std::uint64_t{1} << x);
  }
}

LabelSet LabelSet::canonical(int n) {
  if (n < 0 || n > 63) fail("canonical set size out of range");
  std::uint64_t b = 0;
  for (int i = 1; i <= n; ++i) b |= (std::uint64_t{1} << i);
  return from_bits(b);
}

int LabelSet::size() const { return std::popcount(bits_); }

bool LabelSet::contains(int x) const {
  return x >= 0 && x <= 63 && (bits_ >> x) & 1u;
}

std::vector<int> LabelSet::elements() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

int LabelSet::min() const {
  if (bits_ == 0) fail("min of empty label set");
  return std::countr_zero(bits_);
}

bool LabelSet::lex_less(const LabelSet& a, const LabelSet& b) {
  std::uint64_t x = a.bits_, y = b.bits_;
  while (x && y) {
    int ex = std::countr_zero(x), ey = std::countr_zero(y);
    if (ex != ey) return ex < ey;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

std::string LabelSet::render() const {
  std::string s = "{";
  bool first = true;
  for (int e : elements()) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

Decomposition::Decomposition(LabelSet s, LabelSet t) : S(s), T(t) {
  if (!S.disjoint(T)) fail("decomposition parts overlap");
}

SetComposition::SetComposition(std::vector<LabelSet> blocks) : blocks_(std::move(blocks)) {
  std::uint64_t seen = 0;
  for (const LabelSet& b : blocks_) {
    if (b.empty()) fail("set composition with an empty block");
    if (seen & b.bits()) fail("set composition blocks overlap");
    seen |= b.bits();
  }
}

LabelSet SetComposition::ground() const {
  std::uint64_t b = 0;
  for (const LabelSet& blk : blocks_) b |= blk.bits();
  return LabelSet::from_bits(b);
}

bool SetComposition::operator<(const SetComposition& o) const {
  return std::lexicographical_compare(blocks_.begin(), blocks_.end(), o.blocks_.begin(),
                                      o.blocks_.end(), LabelSet::lex_less);
}

std::string SetComposition::render() const {
  if (blocks_.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += "|";
    s += blocks_[i].render();
  }
  return s;
}

SetComposition parse_set_composition(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "()" || t.empty()) return SetComposition{};
  std::vector<LabelSet> blocks;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] != '{') fail("expected '{' in set composition: " + text);
    auto close = t.find('}', i);
    if (close == std::string::npos) fail("unterminated block in: " + text);
    std::uint64_t bits = 0;
    std::size_t j = i + 1;
    while (j < close) {
      std::size_t k = j;
      while (k < close && t[k] != ',') ++k;
      std::string num = t.substr(j, k - j);
      if (num.empty()) fail("empty label in: " + text);
      for (char c : num)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad label in: " + text);
      int v = std::stoi(num);
      if (v > 63) fail("label out of range in: " + text);
      bits |= (std::uint64_t{1} << v);
      j = k + 1;
    }
    if (bits == 0) fail("empty block in: " + text);
    blocks.push_back(LabelSet::from_bits(bits));
    i = close + 1;
    if (i < t.size()) {
      if (t[i] != '|') fail("expected '|' between blocks in: " + text);
      ++i;
    }
  }
  return SetComposition(std::move(blocks));
}

SetComposition concat_set(const SetComposition& F, const SetComposition& G,
                          const Decomposition& witness) {
  if (F.ground() != witness.S || G.ground() != witness.T)
    fail("concat_set: ground sets do not match the decomposition");
  std::vector<LabelSet> blocks = F.blocks();
  blocks.insert(blocks.end(), G.blocks().begin(), G.blocks().end());
  return SetComposition(std::move(blocks));
}

bool is_admissible(const LabelSet& S, const SetComposition& F) {
  if (!S.subset_of(F.ground())) fail("is_admissible: S not a subset of the ground set");
  for (const LabelSet& b : F.blocks())
    if (!b.subset_of(S) && !b.disjoint(S)) return false;
  return true;
}

SetComposition restrict_to(const SetComposition& F, const LabelSet& S) {
  if (!is_admissible(S, F)) fail("restrict_to: inadmissible subset");
  std::vector<LabelSet> blocks;
  for (const LabelSet& b : F.blocks())
    if (b.subset_of(S)) blocks.push_back(b);
  return SetComposition(std::move(blocks));
}

int area(const Decomposition& D, const SetComposition& F) {
  if (F.ground() != D.ground()) fail("area: ground set mismatch");
  int total = 0;
  const auto& blocks = F.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      total += blocks[i].set_intersect(D.T).size() * blocks[j].set_intersect(D.S).size();
  return total;
}

namespace {

// Flag of initial partial unions, including {} and the full ground set;
// strictly increasing, so popcount order is chain order.
std::vector<std::uint64_t> flag_of(const SetComposition& F) {
  std::vector<std::uint64_t> flag{0};
  std::uint64_t acc = 0;
  for (const LabelSet& b : F.blocks()) {
    acc |= b.bits();
    flag.push_back(acc);
  }
  return flag;
}

}  // namespace

bool coarsens(const SetComposition& F, const SetComposition& G) {
  if (F.ground() != G.ground()) fail("coarsens: ground set mismatch");
  auto ff = flag_of(F), fg = flag_of(G);
  // F <= G iff every partial union of F appears among those of G.
  std::size_t j = 0;
  for (std::uint64_t x : ff) {
    while (j < fg.size() && fg[j] != x) ++j;
    if (j == fg.size()) return false;
  }
  return true;
}

SetComposition meet_set(const SetComposition& F, const SetComposition& G) {
  if (F.ground() != G.ground()) fail("meet_set: ground set mismatch");
  auto ff = flag_of(F), fg = flag_of(G);
  std::vector<std::uint64_t> common;
  std::set_intersection(ff.begin(), ff.end(), fg.begin(), fg.end(),
                        std::back_inserter(common),
                        [](std::uint64_t a, std::uint64_t b) {
                          int pa = std::popcount(a), pb = std::popcount(b);
                          return pa != pb ? pa < pb : a < b;
                        });
  std::vector<LabelSet> blocks;
  for (std::size_t i = 1; i < common.size(); ++i)
    blocks.push_back(LabelSet::from_bits(common[i] & ~common[i - 1]));
  return SetComposition(std::move(blocks));
}

namespace {

std::vector<LabelSet> nonempty_subsets_lex(const LabelSet& I) {
  std::vector<LabelSet> subs;
  std::uint64_t full = I.bits();
  for (std::uint64_t s = full; s; s = (s - 1) & full) subs.push_back(LabelSet::from_bits(s));
  std::sort(subs.begin(), subs.end(), LabelSet::lex_less);
  return subs;
}

void enumerate_rec(const LabelSet& rest, std::vector<LabelSet>& prefix,
                   std::vector<SetComposition>& out) {
  if (rest.empty()) {
    out.push_back(SetComposition(prefix));
    return;
  }
  for (const LabelSet& first : nonempty_subsets_lex(rest)) {
    prefix.push_back(first);
    enumerate_rec(rest.set_minus(first), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<SetComposition> enumerate_set_compositions(const LabelSet& I, int cap) {
  int effective = std::min(cap, kHardEnumCap);
  if (I.size() > effective)
    fail("enumerate_set_compositions: |I| = " + std::to_string(I.size()) +
         " exceeds cap " + std::to_string(effective));
  std::vector<SetComposition> out;
  std::vector<LabelSet> prefix;
  enumerate_rec(I, prefix, out);
  return out;
}

SetComposition canonical_order(int n) {
  std::vector<LabelSet> blocks;
  for (int i = 1; i <= n; ++i) blocks.push_back(LabelSet{i});
  return SetComposition(std::move(blocks));
}

bool is_indecomposable(const SetComposition& F) {
  int n = F.ground().size();
  if (F.ground() != LabelSet::canonical(n))
    fail("is_indecomposable: ground set must be canonical [n]");
  bool direct = true;
  if (n == 0) direct = true;
  for (int i = 1; i < n; ++i) {
    // F splits at i iff some prefix of blocks covers exactly [i].
    std::uint64_t acc = 0;
    std::uint64_t target = LabelSet::canonical(i).bits();
    for (const LabelSet& b : F.blocks()) {
      acc |= b.bits();
      if (acc == target) {
        direct = false;
        break;
      }
      if (acc & ~target) break;
    }
    if (!direct) break;
  }
  if (n > 0) {
    bool via_meet = meet_set(F, canonical_order(n)).block_count() == 1;
    if (via_meet != direct)
      throw std::logic_error("is_indecomposable: split scan and meet cross-check disagree");
  }
  return direct;
}

IntComposition::IntComposition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p < 1) fail("integer composition part must be positive");
    n_ += p;
  }
  if (n_ > 63) fail("integer composition total out of range");
  int acc = 0;
  for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
    acc += parts_[i];
    cuts_ |= (std::uint64_t{1} << acc);
  }
}

IntComposition IntComposition::from_cuts(int n, std::uint64_t cuts) {
  std::vector<int> parts;
  int prev = 0;
  for (int i = 1; i < n; ++i)
    if ((cuts >> i) & 1u) {
      parts.push_back(i - prev);
      prev = i;
    }
  if (n > 0) parts.push_back(n - prev);
  return IntComposition(std::move(parts));
}

std::string IntComposition::render() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += "+";
    s += std::to_string(parts_[i]);
  }
  return s;
}

IntComposition parse_int_composition(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "0" || t.empty()) return IntComposition{};
  std::vector<int> parts;
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t j = i;
    while (j < t.size() && t[j] != '+') ++j;
    std::string num = t.substr(i, j - i);
    if (num.empty()) fail("empty part in: " + text);
    for (char c : num)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad part in: " + text);
    parts.push_back(std::stoi(num));
    i = j + 1;
  }
  return IntComposition(std::move(parts));
}

IntComposition meet_int(const IntComposition& a, const IntComposition& b) {
  if (a.total() != b.total()) fail("meet_int: totals differ");
  return IntComposition::from_cuts(a.total(), a.cuts() & b.cuts());
}

std::vector<IntComposition> enumerate_int_compositions(int n) {
  if (n < 0 || n > 63) fail("enumerate_int_compositions: n out of range");
  std::vector<IntComposition> out;
  if (n == 0) {
    out.push_back(IntComposition{});
    return out;
  }
  std::uint64_t limit = std::uint64_t{1} << (n - 1);
  for (std::uint64_t m = 0; m < limit; ++m)
    out.push_back(IntComposition::from_cuts(n, m << 1));
  return out;
}

bool is_indecomposable(const IntComposition& a) {
  return a.parts().size() == 1;
}

IntComposition size_sequence(const SetComposition& F) {
  std::vector<int> parts;
  for (const LabelSet& b : F.blocks()) parts.push_back(b.size());
  return IntComposition(std::move(parts));
}

}  // namespace hopfkit
