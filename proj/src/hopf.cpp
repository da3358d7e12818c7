#include "hopfkit/hopf.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

namespace hopfkit {

namespace {

std::size_t to_size(const Int& d) {
  return static_cast<std::size_t>(d.convert_to<unsigned long long>());
}

SetComposition word_comp(const std::vector<int>& w) {
  std::vector<LabelSet> blocks;
  blocks.reserve(w.size());
  for (int x : w) blocks.push_back(LabelSet{x});
  return SetComposition(std::move(blocks));
}

}  // namespace

HopfStructure::HopfStructure(std::string name, SpeciesPtr carrier, Rat q)
    : name_(std::move(name)), carrier_(std::move(carrier)), q_(std::move(q)) {
  if (carrier_->dim(0) != 1)
    throw std::invalid_argument("Hopf structure requires a connected carrier");
}

SparseMap HopfStructure::product(const Decomposition& D) const {
  std::pair<std::uint64_t, std::uint64_t> key{D.S.bits(), D.T.bits()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
  }
  SparseMap m = compute_product(D);
  std::lock_guard<std::mutex> lock(mu_);
  return product_cache_.emplace(key, std::move(m)).first->second;
}

SparseMap HopfStructure::coproduct(const Decomposition& D) const {
  std::pair<std::uint64_t, std::uint64_t> key{D.S.bits(), D.T.bits()};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = coproduct_cache_.find(key);
    if (it != coproduct_cache_.end()) return it->second;
  }
  SparseMap m = compute_coproduct(D);
  std::lock_guard<std::mutex> lock(mu_);
  return coproduct_cache_.emplace(key, std::move(m)).first->second;
}

SparseMap HopfStructure::unit_map() const {
  SparseMap m(1, 1);
  m.set(0, 0, Rat(1));
  return m;
}

SparseMap HopfStructure::counit_map() const {
  SparseMap m(1, 1);
  m.set(0, 0, Rat(1));
  return m;
}

SparseMap braiding_map(const Rat& q, std::size_t dim_s, std::size_t dim_t, int size_s,
                       int size_t_) {
  SparseMap m(dim_t * dim_s, dim_s * dim_t);
  Rat coeff = rat_pow(q, static_cast<unsigned>(size_s) * static_cast<unsigned>(size_t_));
  if (coeff == 0 && size_s * size_t_ > 0) return m;
  for (std::size_t s = 0; s < dim_s; ++s)
    for (std::size_t t = 0; t < dim_t; ++t) m.set(t * dim_s + s, s * dim_t + t, coeff);
  return m;
}

namespace {

class LinearOrdersHopf final : public HopfStructure {
 public:
  explicit LinearOrdersHopf(const Rat& q) : HopfStructure("L", builtin("L"), q) {}

 protected:
  SparseMap compute_product(const Decomposition& D) const override {
    const BasisData& bs = carrier()->basis_data(D.S);
    const BasisData& bt = carrier()->basis_data(D.T);
    const BasisData& bi = carrier()->basis_data(D.ground());
    SparseMap m(bi.labels.size(), bs.labels.size() * bt.labels.size());
    for (std::size_t i = 0; i < bs.labels.size(); ++i)
      for (std::size_t j = 0; j < bt.labels.size(); ++j) {
        std::vector<int> w = bs.labels[i].word;
        w.insert(w.end(), bt.labels[j].word.begin(), bt.labels[j].word.end());
        std::size_t row = bi.index.at(BasisLabel::order(std::move(w)));
        m.set(row, i * bt.labels.size() + j, Rat(1));
      }
    return m;
  }

  SparseMap compute_coproduct(const Decomposition& D) const override {
    const BasisData& bs = carrier()->basis_data(D.S);
    const BasisData& bt = carrier()->basis_data(D.T);
    const BasisData& bi = carrier()->basis_data(D.ground());
    SparseMap m(bs.labels.size() * bt.labels.size(), bi.labels.size());
    for (std::size_t c = 0; c < bi.labels.size(); ++c) {
      const std::vector<int>& w = bi.labels[c].word;
      std::vector<int> ws, wt;
      for (int x : w) (D.S.contains(x) ? ws : wt).push_back(x);
      Rat coeff = rat_pow(deformation(),
                          static_cast<unsigned>(area(D, word_comp(w))));
      if (coeff == 0) continue;
      std::size_t rs = bs.index.at(BasisLabel::order(ws));
      std::size_t rt = bt.index.at(BasisLabel::order(wt));
      m.set(rs * bt.labels.size() + rt, c, coeff);
    }
    return m;
  }
};

class ExponentialHopf final : public HopfStructure {
 public:
  ExponentialHopf() : HopfStructure("E", builtin("E"), Rat(1)) {}

 protected:
  SparseMap compute_product(const Decomposition&) const override {
    SparseMap m(1, 1);
    m.set(0, 0, Rat(1));
    return m;
  }
  SparseMap compute_coproduct(const Decomposition&) const override {
    SparseMap m(1, 1);
    m.set(0, 0, Rat(1));
    return m;
  }
};

class FreeHopf final : public HopfStructure {
 public:
  FreeHopf(const Rat& q, SpeciesPtr base, int cap)
      : HopfStructure("free(" + base->name() + ")", free_species(base, cap), q) {}

 protected:
  SparseMap compute_product(const Decomposition& D) const override {
    const BasisData& bs = carrier()->basis_data(D.S);
    const BasisData& bt = carrier()->basis_data(D.T);
    const BasisData& bi = carrier()->basis_data(D.ground());
    SparseMap m(bi.labels.size(), bs.labels.size() * bt.labels.size());
    for (std::size_t i = 0; i < bs.labels.size(); ++i)
      for (std::size_t j = 0; j < bt.labels.size(); ++j) {
        const BasisLabel& a = bs.labels[i];
        const BasisLabel& b = bt.labels[j];
        SetComposition comp = concat_set(a.comp, b.comp, D);
        std::vector<BasisLabel> factors = a.children;
        factors.insert(factors.end(), b.children.begin(), b.children.end());
        std::size_t row = bi.index.at(BasisLabel::tensor_word(std::move(comp), std::move(factors)));
        m.set(row, i * bt.labels.size() + j, Rat(1));
      }
    return m;
  }

  SparseMap compute_coproduct(const Decomposition& D) const override {
    const BasisData& bs = carrier()->basis_data(D.S);
    const BasisData& bt = carrier()->basis_data(D.T);
    const BasisData& bi = carrier()->basis_data(D.ground());
    SparseMap m(bs.labels.size() * bt.labels.size(), bi.labels.size());
    for (std::size_t c = 0; c < bi.labels.size(); ++c) {
      const BasisLabel& wrd = bi.labels[c];
      if (!is_admissible(D.S, wrd.comp)) continue;
      Rat coeff = rat_pow(deformation(), static_cast<unsigned>(area(D, wrd.comp)));
      if (coeff == 0) continue;
      std::vector<LabelSet> sblocks, tblocks;
      std::vector<BasisLabel> sfactors, tfactors;
      for (int i = 0; i < wrd.comp.block_count(); ++i) {
        if (wrd.comp.block(i).subset_of(D.S)) {
          sblocks.push_back(wrd.comp.block(i));
          sfactors.push_back(wrd.children[static_cast<std::size_t>(i)]);
        } else {
          tblocks.push_back(wrd.comp.block(i));
          tfactors.push_back(wrd.children[static_cast<std::size_t>(i)]);
        }
      }
      std::size_t rs = bs.index.at(
          BasisLabel::tensor_word(SetComposition(std::move(sblocks)), std::move(sfactors)));
      std::size_t rt = bt.index.at(
          BasisLabel::tensor_word(SetComposition(std::move(tblocks)), std::move(tfactors)));
      m.set(rs * bt.labels.size() + rt, c, coeff);
    }
    return m;
  }
};

class HadamardHopf final : public HopfStructure {
 public:
  HadamardHopf(HopfPtr h, HopfPtr k)
      : HopfStructure("hadamard(" + h->name() + "," + k->name() + ")",
                      hadamard_species(h->carrier(), k->carrier()),
                      h->deformation() * k->deformation()),
        h_(std::move(h)),
        k_(std::move(k)) {}

 protected:
  // The Pair basis of the Hadamard carrier is ordered lexicographically by
  // (left, right), so its positions are exactly row-major over the factor
  // bases; index arithmetic below relies on that.
  SparseMap compute_product(const Decomposition& D) const override {
    SparseMap mh = h_->product(D);
    SparseMap mk = k_->product(D);
    std::size_t hs = to_size(h_->carrier()->dim(D.S.size()));
    std::size_t ht = to_size(h_->carrier()->dim(D.T.size()));
    std::size_t ks = to_size(k_->carrier()->dim(D.S.size()));
    std::size_t kt = to_size(k_->carrier()->dim(D.T.size()));
    std::size_t ki = to_size(k_->carrier()->dim(D.ground().size()));
    SparseMap m(mh.rows() * ki, hs * ks * ht * kt);
    for (const auto& [rch, vh] : mh.entries())
      for (const auto& [rck, vk] : mk.entries()) {
        std::size_t ihs = rch.second / ht, iht = rch.second % ht;
        std::size_t iks = rck.second / kt, ikt = rck.second % kt;
        std::size_t col = (ihs * ks + iks) * (ht * kt) + (iht * kt + ikt);
        m.add_to(rch.first * ki + rck.first, col, vh * vk);
      }
    return m;
  }

  SparseMap compute_coproduct(const Decomposition& D) const override {
    SparseMap dh = h_->coproduct(D);
    SparseMap dk = k_->coproduct(D);
    std::size_t hs = to_size(h_->carrier()->dim(D.S.size()));
    std::size_t ht = to_size(h_->carrier()->dim(D.T.size()));
    std::size_t ks = to_size(k_->carrier()->dim(D.S.size()));
    std::size_t kt = to_size(k_->carrier()->dim(D.T.size()));
    std::size_t ki = to_size(k_->carrier()->dim(D.ground().size()));
    SparseMap m(hs * ks * ht * kt, dh.cols() * ki);
    for (const auto& [rch, vh] : dh.entries())
      for (const auto& [rck, vk] : dk.entries()) {
        std::size_t ihs = rch.first / ht, iht = rch.first % ht;
        std::size_t iks = rck.first / kt, ikt = rck.first % kt;
        std::size_t row = (ihs * ks + iks) * (ht * kt) + (iht * kt + ikt);
        m.add_to(row, rch.second * ki + rck.second, vh * vk);
      }
    return m;
  }

 private:
  HopfPtr h_, k_;
};

class EvenSpecies final : public Species {
 public:
  EvenSpecies() : Species("mock-even", false) {}

 protected:
  Int dim_impl(int n) const override { return n % 2 == 0 ? 1 : 0; }
  void gen_canonical(int n, const std::function<void(const BasisLabel&)>& fn) const override {
    if (n % 2 != 0) return;
    if (n == 0)
      fn(BasisLabel::partition({}));
    else
      fn(BasisLabel::partition({LabelSet::canonical(n)}));
  }
};

// Fixture: dimension 1 in even degrees, all structure maps the forced
// entries on even splits. Deliberately not a bimonoid.
class MockEvenHopf final : public HopfStructure {
 public:
  MockEvenHopf() : HopfStructure("mock-even", std::make_shared<EvenSpecies>(), Rat(1)) {}

 protected:
  SparseMap compute_product(const Decomposition& D) const override {
    std::size_t ds = to_size(carrier()->dim(D.S.size()));
    std::size_t dt = to_size(carrier()->dim(D.T.size()));
    std::size_t di = to_size(carrier()->dim(D.ground().size()));
    SparseMap m(di, ds * dt);
    if (ds * dt == 1 && di == 1) m.set(0, 0, Rat(1));
    return m;
  }
  SparseMap compute_coproduct(const Decomposition& D) const override {
    std::size_t ds = to_size(carrier()->dim(D.S.size()));
    std::size_t dt = to_size(carrier()->dim(D.T.size()));
    std::size_t di = to_size(carrier()->dim(D.ground().size()));
    SparseMap m(ds * dt, di);
    if (ds * dt == 1 && di == 1) m.set(0, 0, Rat(1));
    return m;
  }
};

class ProductOverrideHopf final : public HopfStructure {
 public:
  ProductOverrideHopf(HopfPtr inner, const Decomposition& D, SparseMap replacement,
                      std::string name)
      : HopfStructure(std::move(name), inner->carrier(), inner->deformation()),
        inner_(std::move(inner)),
        s_(D.S),
        t_(D.T),
        replacement_(std::move(replacement)) {}

 protected:
  SparseMap compute_product(const Decomposition& D) const override {
    if (D.S == s_ && D.T == t_) return replacement_;
    return inner_->product(D);
  }
  SparseMap compute_coproduct(const Decomposition& D) const override {
    return inner_->coproduct(D);
  }

 private:
  HopfPtr inner_;
  LabelSet s_, t_;
  SparseMap replacement_;
};

}  // namespace

HopfPtr linear_orders_hopf(const Rat& q) { return std::make_shared<LinearOrdersHopf>(q); }

HopfPtr exponential_hopf() { return std::make_shared<ExponentialHopf>(); }

HopfPtr free_hopf(const Rat& q, SpeciesPtr base, int cap) {
  return std::make_shared<FreeHopf>(q, std::move(base), cap);
}

HopfPtr hadamard_hopf(HopfPtr h, HopfPtr k) {
  return std::make_shared<HadamardHopf>(std::move(h), std::move(k));
}

HopfPtr mock_even_hopf() { return std::make_shared<MockEvenHopf>(); }

HopfPtr with_product_override(HopfPtr inner, const Decomposition& D, SparseMap replacement,
                              std::string name) {
  return std::make_shared<ProductOverrideHopf>(std::move(inner), D, std::move(replacement),
                                               std::move(name));
}

namespace {

struct StructParser {
  const std::string& s;
  std::size_t pos;
  Rat q;
  int cap;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '-'))
      ++pos;
    if (start == pos)
      throw std::invalid_argument("expected a name in structure expression: " + s);
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

  std::string balanced_until(char closer) {
    // Consume up to the matching closer at depth 0, excluding it.
    int depth = 0;
    std::size_t start = pos;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '(') ++depth;
      if (c == ')' || c == ',') {
        if (depth == 0 && c == closer) return s.substr(start, pos - start);
        if (c == ')') {
          if (depth == 0) throw std::invalid_argument("unbalanced ')' in: " + s);
          --depth;
        }
      }
      ++pos;
    }
    throw std::invalid_argument("missing '" + std::string(1, closer) + "' in: " + s);
  }

  HopfPtr expr() {
    std::string name = ident();
    if (name == "L") return linear_orders_hopf(q);
    if (name == "E") return exponential_hopf();
    if (name == "mock-even") return mock_even_hopf();
    if (name == "free") {
      if (!eat('(')) throw std::invalid_argument("expected '(' after free");
      std::string inner = balanced_until(')');
      if (!eat(')')) throw std::invalid_argument("expected ')' after free(...)");
      return free_hopf(q, parse_species(inner, cap), cap);
    }
    if (name == "hadamard") {
      if (!eat('(')) throw std::invalid_argument("expected '(' after hadamard");
      HopfPtr a = expr();
      if (!eat(',')) throw std::invalid_argument("expected ',' in hadamard(...)");
      HopfPtr b = expr();
      if (!eat(')')) throw std::invalid_argument("expected ')' in hadamard(...)");
      return hadamard_hopf(a, b);
    }
    throw std::invalid_argument("unknown structure name: '" + name + "'");
  }
};

}  // namespace

HopfPtr parse_structure(const std::string& expr, const Rat& q, int cap) {
  StructParser p{expr, 0, q, cap};
  HopfPtr result = p.expr();
  p.skip_ws();
  if (p.pos != expr.size())
    throw std::invalid_argument("trailing input in structure expression: " + expr);
  return result;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json failures_json = nlohmann::json::array();
  for (const CheckFailure& f : failures) {
    nlohmann::json j{{"axiom", f.axiom},
                     {"I", f.I.elements()},
                     {"S", f.S.elements()},
                     {"T", f.T.elements()},
                     {"witness", f.witness}};
    if (f.has_second) {
      j["Sp"] = f.Sp.elements();
      j["Tp"] = f.Tp.elements();
    }
    failures_json.push_back(std::move(j));
  }
  return nlohmann::json{{"structure", structure},
                        {"q", rat_str(q)},
                        {"n_max", n_max},
                        {"failures", failures_json}};
}

namespace {

std::vector<LabelSet> subsets_ascending(const LabelSet& I) {
  std::vector<LabelSet> out;
  std::uint64_t full = I.bits();
  std::uint64_t s = 0;
  while (true) {
    out.push_back(LabelSet::from_bits(s));
    if (s == full) break;
    s = (s - full) & full;  // next submask in ascending numeric order
  }
  return out;
}

std::string tensor_witness(const Species& sp, const std::vector<LabelSet>& grounds,
                           std::size_t col) {
  std::vector<std::size_t> dims;
  for (const LabelSet& g : grounds) dims.push_back(sp.basis_data(g).labels.size());
  std::vector<std::size_t> idx(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    idx[i] = col % dims[i];
    col /= dims[i];
  }
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += " (x) ";
    out += sp.basis_data(grounds[i]).labels[idx[i]].repr();
  }
  return out;
}

std::size_t dim_on(const HopfStructure& h, const LabelSet& I) {
  return to_size(h.carrier()->dim(I.size()));
}

}  // namespace

CheckReport check_monoid(const HopfStructure& h, int n_max) {
  CheckReport report{h.name(), h.deformation(), n_max, {}};
  const Species& sp = *h.carrier();
  for (int n = 0; n <= n_max; ++n) {
    LabelSet I = LabelSet::canonical(n);
    std::size_t di = dim_on(h, I);
    SparseMap id_i = SparseMap::identity(di);
    // Unit laws.
    SparseMap left_unit =
        h.product(Decomposition(LabelSet{}, I)).compose(h.unit_map().tensor(id_i));
    if (left_unit != id_i) {
      std::size_t col = 0;
      SparseMap::first_differing_column(left_unit, id_i, &col);
      report.failures.push_back(CheckFailure{"unit_left", I, LabelSet{}, I, {}, {}, false,
                                             tensor_witness(sp, {I}, col)});
    }
    SparseMap right_unit =
        h.product(Decomposition(I, LabelSet{})).compose(id_i.tensor(h.unit_map()));
    if (right_unit != id_i) {
      std::size_t col = 0;
      SparseMap::first_differing_column(right_unit, id_i, &col);
      report.failures.push_back(CheckFailure{"unit_right", I, I, LabelSet{}, {}, {}, false,
                                             tensor_witness(sp, {I}, col)});
    }
    // Associativity over all double decompositions.
    for (const LabelSet& R : subsets_ascending(I))
      for (const LabelSet& S : subsets_ascending(I.set_minus(R))) {
        LabelSet T = I.set_minus(R).set_minus(S);
        LabelSet RS = R.set_union(S), ST = S.set_union(T);
        SparseMap left = h.product(Decomposition(RS, T))
                             .compose(h.product(Decomposition(R, S))
                                          .tensor(SparseMap::identity(dim_on(h, T))));
        SparseMap right = h.product(Decomposition(R, ST))
                              .compose(SparseMap::identity(dim_on(h, R))
                                           .tensor(h.product(Decomposition(S, T))));
        if (left != right) {
          std::size_t col = 0;
          SparseMap::first_differing_column(left, right, &col);
          report.failures.push_back(
              CheckFailure{"assoc", I, R, S, T, {}, true,
                           tensor_witness(sp, {R, S, T}, col)});
        }
      }
  }
  return report;
}

CheckReport check_comonoid(const HopfStructure& h, int n_max) {
  CheckReport report{h.name(), h.deformation(), n_max, {}};
  const Species& sp = *h.carrier();
  for (int n = 0; n <= n_max; ++n) {
    LabelSet I = LabelSet::canonical(n);
    std::size_t di = dim_on(h, I);
    SparseMap id_i = SparseMap::identity(di);
    // Counit laws.
    SparseMap left_counit =
        h.counit_map().tensor(id_i).compose(h.coproduct(Decomposition(LabelSet{}, I)));
    if (left_counit != id_i) {
      std::size_t col = 0;
      SparseMap::first_differing_column(left_counit, id_i, &col);
      report.failures.push_back(CheckFailure{"counit_left", I, LabelSet{}, I, {}, {}, false,
                                             tensor_witness(sp, {I}, col)});
    }
    SparseMap right_counit =
        id_i.tensor(h.counit_map()).compose(h.coproduct(Decomposition(I, LabelSet{})));
    if (right_counit != id_i) {
      std::size_t col = 0;
      SparseMap::first_differing_column(right_counit, id_i, &col);
      report.failures.push_back(CheckFailure{"counit_right", I, I, LabelSet{}, {}, {}, false,
                                             tensor_witness(sp, {I}, col)});
    }
    // Coassociativity.
    for (const LabelSet& R : subsets_ascending(I))
      for (const LabelSet& S : subsets_ascending(I.set_minus(R))) {
        LabelSet T = I.set_minus(R).set_minus(S);
        LabelSet RS = R.set_union(S), ST = S.set_union(T);
        SparseMap left = h.coproduct(Decomposition(R, S))
                             .tensor(SparseMap::identity(dim_on(h, T)))
                             .compose(h.coproduct(Decomposition(RS, T)));
        SparseMap right = SparseMap::identity(dim_on(h, R))
                              .tensor(h.coproduct(Decomposition(S, T)))
                              .compose(h.coproduct(Decomposition(R, ST)));
        if (left != right) {
          std::size_t col = 0;
          SparseMap::first_differing_column(left, right, &col);
          report.failures.push_back(CheckFailure{"coassoc", I, R, S, T, {}, true,
                                                 tensor_witness(sp, {I}, col)});
        }
      }
  }
  return report;
}

CheckReport check_compat(const HopfStructure& h, int n_max) {
  CheckReport report{h.name(), h.deformation(), n_max, {}};
  const Species& sp = *h.carrier();
  for (int n = 0; n <= n_max; ++n) {
    LabelSet I = LabelSet::canonical(n);
    for (const LabelSet& S : subsets_ascending(I)) {
      LabelSet T = I.set_minus(S);
      Decomposition st(S, T);
      // Connected composite: splitting right after assembling is the
      // identity on carrier(S) ⊗ carrier(T).
      SparseMap round_trip = h.coproduct(st).compose(h.product(st));
      SparseMap id_st = SparseMap::identity(dim_on(h, S) * dim_on(h, T));
      if (round_trip != id_st) {
        std::size_t col = 0;
        SparseMap::first_differing_column(round_trip, id_st, &col);
        report.failures.push_back(CheckFailure{"mu_delta_id", I, S, T, {}, {}, false,
                                               tensor_witness(sp, {S, T}, col)});
      }
      for (const LabelSet& Sp : subsets_ascending(I)) {
        LabelSet Tp = I.set_minus(Sp);
        LabelSet A = S.set_intersect(Sp), B = S.set_intersect(Tp);
        LabelSet C = T.set_intersect(Sp), D = T.set_intersect(Tp);
        SparseMap bottom = h.coproduct(Decomposition(Sp, Tp)).compose(h.product(st));
        SparseMap swap = braiding_map(h.deformation(), dim_on(h, B), dim_on(h, C),
                                      B.size(), C.size());
        SparseMap middle = SparseMap::identity(dim_on(h, A))
                               .tensor(swap)
                               .tensor(SparseMap::identity(dim_on(h, D)));
        SparseMap top = h.product(Decomposition(A, C))
                            .tensor(h.product(Decomposition(B, D)))
                            .compose(middle)
                            .compose(h.coproduct(Decomposition(A, B))
                                         .tensor(h.coproduct(Decomposition(C, D))));
        if (bottom != top) {
          std::size_t col = 0;
          SparseMap::first_differing_column(bottom, top, &col);
          report.failures.push_back(CheckFailure{"compat", I, S, T, Sp, Tp, true,
                                                 tensor_witness(sp, {S, T}, col)});
        }
      }
    }
  }
  return report;
}

CheckReport check_all(const HopfStructure& h, int n_max) {
  CheckReport report = check_monoid(h, n_max);
  CheckReport co = check_comonoid(h, n_max);
  CheckReport compat = check_compat(h, n_max);
  report.failures.insert(report.failures.end(), co.failures.begin(), co.failures.end());
  report.failures.insert(report.failures.end(), compat.failures.begin(),
                         compat.failures.end());
  return report;
}

namespace {

// Splits the blocks (and attached factors) of a refinement F of H into one
// consecutive run per block of H.
std::vector<std::pair<SetComposition, std::vector<BasisLabel>>> split_along(
    const SetComposition& H, const SetComposition& F, const std::vector<BasisLabel>& factors) {
  std::vector<std::pair<SetComposition, std::vector<BasisLabel>>> out;
  int fi = 0;
  for (int hi = 0; hi < H.block_count(); ++hi) {
    std::uint64_t target = H.block(hi).bits();
    std::uint64_t acc = 0;
    std::vector<LabelSet> blocks;
    std::vector<BasisLabel> fs;
    while (acc != target) {
      if (fi >= F.block_count() || (F.block(fi).bits() & ~target))
        throw std::logic_error("split_along: composition does not refine the base");
      acc |= F.block(fi).bits();
      blocks.push_back(F.block(fi));
      fs.push_back(factors[static_cast<std::size_t>(fi)]);
      ++fi;
    }
    out.emplace_back(SetComposition(std::move(blocks)), std::move(fs));
  }
  return out;
}

}  // namespace

SparseMap StarIso::forward(const LabelSet& I) const {
  const BasisData& dom = domain->basis_data(I);
  const BasisData& cod = codomain->basis_data(I);
  SparseMap m(cod.labels.size(), dom.labels.size());
  for (std::size_t c = 0; c < dom.labels.size(); ++c) {
    const BasisLabel& word = dom.labels[c];
    std::vector<LabelSet> fblocks, gblocks;
    std::vector<BasisLabel> pf, qf;
    for (const BasisLabel& factor : word.children) {
      const BasisLabel& left = factor.children[0];
      const BasisLabel& right = factor.children[1];
      fblocks.insert(fblocks.end(), left.comp.blocks().begin(), left.comp.blocks().end());
      pf.insert(pf.end(), left.children.begin(), left.children.end());
      gblocks.insert(gblocks.end(), right.comp.blocks().begin(), right.comp.blocks().end());
      qf.insert(qf.end(), right.children.begin(), right.children.end());
    }
    BasisLabel image = BasisLabel::pair(
        BasisLabel::tensor_word(SetComposition(std::move(fblocks)), std::move(pf)),
        BasisLabel::tensor_word(SetComposition(std::move(gblocks)), std::move(qf)));
    m.set(cod.index.at(image), c, Rat(1));
  }
  return m;
}

SparseMap StarIso::backward(const LabelSet& I) const {
  const BasisData& dom = domain->basis_data(I);
  const BasisData& cod = codomain->basis_data(I);
  SparseMap m(dom.labels.size(), cod.labels.size());
  for (std::size_t c = 0; c < cod.labels.size(); ++c) {
    const BasisLabel& pr = cod.labels[c];
    const BasisLabel& fw = pr.children[0];
    const BasisLabel& gw = pr.children[1];
    SetComposition H = meet_set(fw.comp, gw.comp);
    auto fruns = split_along(H, fw.comp, fw.children);
    auto gruns = split_along(H, gw.comp, gw.children);
    std::vector<BasisLabel> factors;
    for (std::size_t i = 0; i < fruns.size(); ++i)
      factors.push_back(BasisLabel::pair(
          BasisLabel::tensor_word(fruns[i].first, fruns[i].second),
          BasisLabel::tensor_word(gruns[i].first, gruns[i].second)));
    BasisLabel image = BasisLabel::tensor_word(H, std::move(factors));
    m.set(dom.index.at(image), c, Rat(1));
  }
  return m;
}

StarIso star_iso(SpeciesPtr p, SpeciesPtr q, int cap) {
  SpeciesPtr st = star(p, q, cap);
  return StarIso{free_species(st, cap),
                 hadamard_species(free_species(p, cap), free_species(q, cap))};
}

SparseMap universal_map(const Species& free_of_base, const HopfStructure& target,
                        const BasisMorphism& zeta, const LabelSet& I) {
  const BasisData& words = free_of_base.basis_data(I);
  const Species& tc = *target.carrier();
  SparseMap m(to_size(tc.dim(I.size())), words.labels.size());
  for (std::size_t c = 0; c < words.labels.size(); ++c) {
    const BasisLabel& word = words.labels[c];
    if (word.kind != BasisLabel::Kind::TensorWord)
      throw std::invalid_argument("universal_map requires a tensor-word basis");
    std::map<std::size_t, Rat> acc;
    LabelSet ground;
    auto image_of = [&](const LabelSet& blk, const BasisLabel& x) {
      std::map<std::size_t, Rat> vec;
      std::size_t bound = to_size(tc.dim(blk.size()));
      for (const auto& [idx, v] : zeta(blk, x)) {
        if (idx >= bound)
          throw std::invalid_argument("morphism image index out of range on " + blk.render());
        if (v != 0) vec[idx] += v;
      }
      return vec;
    };
    if (word.children.empty()) {
      acc[0] = Rat(1);  // the unit of the connected target
    } else {
      acc = image_of(word.comp.block(0), word.children[0]);
      ground = word.comp.block(0);
      for (int i = 1; i < word.comp.block_count(); ++i) {
        const LabelSet& blk = word.comp.block(i);
        std::map<std::size_t, Rat> factor =
            image_of(blk, word.children[static_cast<std::size_t>(i)]);
        SparseMap mu = target.product(Decomposition(ground, blk));
        std::size_t dim_b = to_size(tc.dim(blk.size()));
        std::map<std::size_t, Rat> next;
        for (const auto& [rc, w] : mu.entries()) {
          std::size_t a = rc.second / dim_b, b = rc.second % dim_b;
          auto ia = acc.find(a);
          if (ia == acc.end()) continue;
          auto ib = factor.find(b);
          if (ib == factor.end()) continue;
          next[rc.first] += w * ia->second * ib->second;
        }
        acc = std::move(next);
        ground = ground.set_union(blk);
      }
    }
    for (const auto& [row, v] : acc)
      if (v != 0) m.set(row, c, v);
  }
  return m;
}

}  // namespace hopfkit
