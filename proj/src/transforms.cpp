#include "hopfkit/transforms.hpp"

#include <cctype>
#include <stdexcept>

#include "hopfkit/gf.hpp"

namespace hopfkit {

const Rat& Seq::at(int n) const {
  if (n < 1 || n > length()) throw std::out_of_range("sequence index out of range");
  return terms_[static_cast<std::size_t>(n - 1)];
}

bool Seq::all_integer() const {
  for (const Rat& t : terms_)
    if (!is_integer(t)) return false;
  return true;
}

bool Seq::all_nonnegative() const {
  for (const Rat& t : terms_)
    if (t < 0) return false;
  return true;
}

Seq parse_seq(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::vector<Rat> terms;
  if (i < text.size() && text[i] == '[') {
    nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& item : j) {
      if (item.is_string())
        terms.push_back(parse_rat(item.get<std::string>()));
      else if (item.is_number_integer())
        terms.push_back(Rat(item.get<long long>()));
      else
        throw std::invalid_argument("sequence entries must be decimal strings");
    }
  } else {
    std::string tok;
    for (std::size_t k = i; k <= text.size(); ++k) {
      if (k == text.size() || text[k] == ',') {
        if (!tok.empty()) terms.push_back(parse_rat(tok));
        tok.clear();
      } else {
        tok += text[k];
      }
    }
  }
  if (terms.empty()) throw std::invalid_argument("empty sequence");
  return Seq(std::move(terms));
}

std::string render_seq(const Seq& s) {
  std::string out;
  for (int n = 1; n <= s.length(); ++n) {
    if (n > 1) out += ",";
    out += rat_str(s.at(n));
  }
  return out;
}

nlohmann::json seq_to_json(const Seq& s) {
  nlohmann::json j = nlohmann::json::array();
  for (int n = 1; n <= s.length(); ++n) j.push_back(rat_str(s.at(n)));
  return j;
}

Seq boolean_transform(const Seq& a) {
  int n_max = a.length();
  std::vector<Rat> b(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    Rat acc = a.at(n);
    for (int k = 1; k < n; ++k) acc -= a.at(n - k) * b[static_cast<std::size_t>(k - 1)];
    b[static_cast<std::size_t>(n - 1)] = acc;
  }
  return Seq(std::move(b));
}

Seq inverse_boolean(const Seq& b) {
  int n_max = b.length();
  std::vector<Rat> a(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    Rat acc = b.at(n);
    for (int k = 1; k < n; ++k) acc += a[static_cast<std::size_t>(n - k - 1)] * b.at(k);
    a[static_cast<std::size_t>(n - 1)] = acc;
  }
  return Seq(std::move(a));
}

namespace {

void require_equal_lengths(const Seq& p, const Seq& q) {
  if (p.length() != q.length())
    throw std::invalid_argument("sequence lengths differ: " + std::to_string(p.length()) +
                                " vs " + std::to_string(q.length()));
}

// Products over the parts of every composition of n, indexed by cut mask
// (bits 1..n-1 of the mask select the partial sums).
std::vector<Rat> products_by_cuts(const Seq& s, int n) {
  std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::vector<Rat> out(static_cast<std::size_t>(count));
  for (std::uint64_t m = 0; m < count; ++m) {
    Rat prod = 1;
    int prev = 0;
    for (int i = 1; i < n; ++i)
      if ((m >> (i - 1)) & 1u) {
        prod *= s.at(i - prev);
        prev = i;
      }
    prod *= s.at(n - prev);
    out[static_cast<std::size_t>(m)] = prod;
  }
  return out;
}

}  // namespace

Seq hadamard_boolean_by_pairs(const Seq& p, const Seq& q) {
  require_equal_lengths(p, q);
  int n_max = p.length();
  if (n_max > kHadamardEnumCap)
    throw std::invalid_argument("pair enumeration capped at length " +
                                std::to_string(kHadamardEnumCap));
  std::vector<Rat> r(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Rat> pp = products_by_cuts(p, n);
    std::vector<Rat> qq = products_by_cuts(q, n);
    // Meet of two compositions is (n) exactly when their cut sets are
    // disjoint.
    Rat acc = 0;
    std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t x = 0; x < count; ++x)
      for (std::uint64_t y = 0; y < count; ++y)
        if ((x & y) == 0)
          acc += pp[static_cast<std::size_t>(x)] * qq[static_cast<std::size_t>(y)];
    r[static_cast<std::size_t>(n - 1)] = acc;
  }
  return Seq(std::move(r));
}

Seq hadamard_boolean_by_transform(const Seq& p, const Seq& q) {
  require_equal_lengths(p, q);
  Seq a = inverse_boolean(p);
  Seq b = inverse_boolean(q);
  std::vector<Rat> prod;
  for (int n = 1; n <= a.length(); ++n) prod.push_back(a.at(n) * b.at(n));
  return boolean_transform(Seq(std::move(prod)));
}

Seq hadamard_boolean(const Seq& p, const Seq& q) {
  Seq by_pairs = hadamard_boolean_by_pairs(p, q);
  Seq by_transform = hadamard_boolean_by_transform(p, q);
  if (by_pairs != by_transform)
    throw std::logic_error("hadamard transform: enumeration and transform paths disagree");
  return by_pairs;
}

bool FeasibilityReport::all_pass() const {
  return boolean_nonneg.pass && submult.pass && exp_ratio.pass && cubic.pass;
}

nlohmann::json FeasibilityReport::to_json() const {
  auto verdict = [](const ConditionVerdict& v) {
    return nlohmann::json{{"pass", v.pass}, {"witness", v.witness}};
  };
  return nlohmann::json{{"boolean_nonneg", verdict(boolean_nonneg)},
                        {"submult", verdict(submult)},
                        {"exp_ratio", verdict(exp_ratio)},
                        {"cubic", verdict(cubic)},
                        {"all_pass", all_pass()}};
}

FeasibilityReport feasibility(const Seq& a) {
  if (!a.all_integer() || !a.all_nonnegative())
    throw std::invalid_argument("feasibility requires nonnegative integer terms");
  int n_max = a.length();
  FeasibilityReport report;

  Seq b = boolean_transform(a);
  for (int n = 1; n <= n_max; ++n)
    if (b.at(n) < 0) {
      report.boolean_nonneg.pass = false;
      report.boolean_nonneg.witness = {{"index", n}, {"value", rat_str(b.at(n))}};
      break;
    }

  for (int n = 2; n <= n_max && report.submult.pass; ++n)
    for (int i = 1; i + i <= n; ++i) {
      Rat lhs = a.at(i) * a.at(n - i);
      if (lhs > a.at(n)) {
        report.submult.pass = false;
        report.submult.witness = {
            {"i", i}, {"j", n - i}, {"lhs", rat_str(lhs)}, {"rhs", rat_str(a.at(n))}};
        break;
      }
    }

  GFSeries numer(n_max), denom(n_max);
  numer.set_coeff(0, Rat(1));
  denom.set_coeff(0, Rat(1));
  for (int n = 1; n <= n_max; ++n) {
    numer.set_coeff(n, a.at(n));
    denom.set_coeff(n, a.at(n) / Rat(factorial(static_cast<unsigned>(n))));
  }
  GFSeries ratio = numer * denom.reciprocal();
  for (int n = 1; n <= n_max; ++n)
    if (ratio.coeff(n) < 0) {
      report.exp_ratio.pass = false;
      report.exp_ratio.witness = {{"index", n}, {"value", rat_str(ratio.coeff(n))}};
      break;
    }

  if (n_max >= 3) {
    Rat rhs = Rat(3) * a.at(2) * a.at(1) - Rat(2) * a.at(1) * a.at(1) * a.at(1);
    if (a.at(3) < rhs) {
      report.cubic.pass = false;
      report.cubic.witness = {{"lhs", rat_str(a.at(3))}, {"rhs", rat_str(rhs)}};
    }
  }
  return report;
}

Int min_next_term(const Seq& a) {
  if (!a.all_integer()) throw std::invalid_argument("min_next_term requires integer terms");
  Seq b = boolean_transform(a);
  for (int n = 1; n <= b.length(); ++n)
    if (b.at(n) < 0)
      throw std::domain_error("prefix already has a negative transform at index " +
                              std::to_string(n));
  Rat acc = 0;
  int n_max = a.length();
  for (int k = 1; k <= n_max; ++k) acc += a.at(n_max + 1 - k) * b.at(k);
  return numerator(acc);
}

Seq indecomposable_transform(const SpeciesPtr& p, int N, int cap) {
  if (!p->positive())
    throw std::invalid_argument("indecomposable transform requires a positive species");
  std::vector<Rat> b;
  for (int n = 1; n <= N; ++n) {
    Int acc = 0;
    for (const SetComposition& F : enumerate_set_compositions(LabelSet::canonical(n), cap)) {
      if (!is_indecomposable(F)) continue;
      Int w = 1;
      for (const LabelSet& blk : F.blocks()) {
        w *= p->dim(blk.size());
        if (w == 0) break;
      }
      acc += w;
    }
    b.push_back(Rat(acc));
  }
  Seq result(std::move(b));

  SpeciesPtr tp = free_species(p, cap);
  std::vector<Rat> dims;
  for (int n = 1; n <= N; ++n) dims.push_back(Rat(tp->dim(n)));
  if (boolean_transform(Seq(std::move(dims))) != result)
    throw std::logic_error(
        "indecomposable sums disagree with the transform of the free-monoid dimensions");
  return result;
}

Int atomic_partitions(int n, int cap) {
  if (n < 1) throw std::invalid_argument("atomic_partitions requires n >= 1");
  if (n > std::min(cap, kHardEnumCap))
    throw std::invalid_argument("atomic_partitions: n exceeds the cap");
  SpeciesPtr pi = builtin("Pi");
  Int count = 0;
  pi->for_each_basis(LabelSet::canonical(n), [&](const BasisLabel& part) {
    for (int i = 1; i < n; ++i) {
      LabelSet prefix = LabelSet::canonical(i);
      bool split = true;
      for (const LabelSet& blk : part.blocks)
        if (!blk.subset_of(prefix) && !blk.disjoint(prefix)) {
          split = false;
          break;
        }
      if (split) return;  // [i] is a union of blocks
    }
    ++count;
  });
  return count;
}

std::pair<Seq, Seq> weighted_ratio_series(const Seq& a, const Seq& w) {
  require_equal_lengths(a, w);
  for (int n = 1; n <= w.length(); ++n) {
    if (n == 1 && w.at(1) > 1)
      throw std::invalid_argument("weights must start at or below 1");
    if (n > 1 && w.at(n) > w.at(n - 1))
      throw std::invalid_argument("weights must be weakly decreasing");
  }
  int n_max = a.length();
  GFSeries base(n_max), weighted(n_max);
  base.set_coeff(0, Rat(1));
  weighted.set_coeff(0, Rat(1));
  for (int n = 1; n <= n_max; ++n) {
    base.set_coeff(n, a.at(n));
    weighted.set_coeff(n, w.at(n) * a.at(n));
  }
  GFSeries first = GFSeries::constant(n_max, Rat(1)) - weighted * base.reciprocal();
  GFSeries second = base * weighted.reciprocal();
  std::vector<Rat> c1, c2;
  for (int n = 1; n <= n_max; ++n) {
    c1.push_back(first.coeff(n));
    c2.push_back(second.coeff(n));
  }
  return {Seq(std::move(c1)), Seq(std::move(c2))};
}

}  // namespace hopfkit
