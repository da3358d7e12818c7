// Acceptance suite: runs every top-level requirement at its stated
// tolerance (all equalities exact) and prints one pass/fail line per
// criterion, with the measured wall time against the budget.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hopfkit/gf.hpp"
#include "hopfkit/hopf.hpp"
#include "hopfkit/transforms.hpp"
#include "oracles.hpp"

using namespace hopfkit;

namespace {

struct Criterion {
  int id;
  std::string summary;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

bool expect(bool ok, const std::string& what, std::string& detail) {
  if (!ok && detail.empty()) detail = what;
  return ok;
}

Seq factorial_seq(int n) {
  std::vector<Rat> t;
  for (int i = 1; i <= n; ++i) t.emplace_back(factorial(static_cast<unsigned>(i)));
  return Seq(std::move(t));
}

std::vector<Decomposition> decomps(int n) {
  LabelSet I = LabelSet::canonical(n);
  std::vector<Decomposition> out;
  for (std::uint64_t s = 0;; s = (s - I.bits()) & I.bits()) {
    LabelSet S = LabelSet::from_bits(s);
    out.emplace_back(S, I.set_minus(S));
    if (s == I.bits()) break;
  }
  return out;
}

GFSeries geometric_like(const GFSeries& t) {
  return (GFSeries::constant(t.order(), Rat(1)) - t).reciprocal();
}

bool criterion_factorial_transform(std::string& detail) {
  Seq b = boolean_transform(parse_seq("1,2,6,24,120,720"));
  return expect(render_seq(b) == "1,1,3,13,71,461", "transform of factorials", detail);
}

bool criterion_squared_factorials(std::string& detail) {
  std::vector<Rat> sq;
  for (int n = 1; n <= 4; ++n) {
    Int f = factorial(static_cast<unsigned>(n));
    sq.emplace_back(f * f);
  }
  bool ok = expect(render_seq(boolean_transform(Seq(sq))) == "1,3,29,499",
                   "recursion route", detail);
  Seq p = boolean_transform(factorial_seq(4));
  ok &= expect(render_seq(hadamard_boolean_by_pairs(p, p)) == "1,3,29,499",
               "pair-enumeration route", detail);
  return ok;
}

bool criterion_hadamard_closed_forms(std::string& detail) {
  oracles::Rng rng(0xacce97);
  for (int trial = 0; trial < 50; ++trial) {
    Seq p(rng.rational_seq(3));
    Seq q(rng.rational_seq(3));
    Seq r = hadamard_boolean(p, q);
    Rat p1 = p.at(1), p2 = p.at(2), p3 = p.at(3);
    Rat q1 = q.at(1), q2 = q.at(2), q3 = q.at(3);
    if (!expect(r.at(1) == p1 * q1, "degree-1 closed form", detail)) return false;
    if (!expect(r.at(2) == p2 * q2 + p2 * q1 * q1 + p1 * p1 * q2, "degree-2 closed form",
                detail))
      return false;
    if (!expect(r.at(3) == p3 * q3 + 2 * p3 * q2 * q1 + 2 * p2 * p1 * q3 +
                               2 * p2 * p1 * q2 * q1 + p1 * p1 * p1 * q3 +
                               p3 * q1 * q1 * q1,
                "degree-3 closed form", detail))
      return false;
  }
  return true;
}

bool criterion_atomic_partitions(std::string& detail) {
  Seq bells(std::vector<Rat>{Rat(1), Rat(2), Rat(5), Rat(15), Rat(52), Rat(203)});
  Seq expected = boolean_transform(bells);
  for (int n = 1; n <= 6; ++n)
    if (!expect(Rat(atomic_partitions(n)) == expected.at(n),
                "atomic count at n=" + std::to_string(n), detail))
      return false;
  return true;
}

bool criterion_indecomposable_sums(std::string& detail) {
  std::vector<SpeciesPtr> bases = {builtin("X"), builtin("Eplus"),
                                   star(builtin("X"), builtin("X"))};
  for (const auto& p : bases) {
    // indecomposable_transform cross-checks internally; recompute the
    // second route here as well so the comparison is visible.
    Seq sums = indecomposable_transform(p, 6);
    std::vector<Rat> dims;
    SpeciesPtr tp = free_species(p);
    for (int n = 1; n <= 6; ++n) dims.emplace_back(tp->dim(n));
    if (!expect(sums == boolean_transform(Seq(dims)), "routes differ for " + p->name(),
                detail))
      return false;
  }
  return true;
}

bool criterion_star_iso_product(std::string& detail) {
  auto txx = free_species(star(builtin("X"), builtin("X")));
  for (int n = 0; n <= 5; ++n) {
    Int f = factorial(static_cast<unsigned>(n));
    if (!expect(txx->dim(n) == f * f, "squared-factorial dimensions", detail)) return false;
  }
  StarIso iso = star_iso(builtin("X"), builtin("X"));
  auto dom = free_hopf(Rat(0), star(builtin("X"), builtin("X")));
  auto cod = hadamard_hopf(free_hopf(Rat(0), builtin("X")), free_hopf(Rat(0), builtin("X")));
  for (int n = 0; n <= 4; ++n) {
    LabelSet I = LabelSet::canonical(n);
    SparseMap fwd = iso.forward(I);
    SparseMap back = iso.backward(I);
    if (!expect(back.compose(fwd) == SparseMap::identity(fwd.cols()), "backward o forward",
                detail))
      return false;
    if (!expect(fwd.compose(back) == SparseMap::identity(fwd.rows()), "forward o backward",
                detail))
      return false;
    for (const auto& d : decomps(n)) {
      SparseMap lhs = fwd.compose(dom->product(d));
      SparseMap rhs = cod->product(d).compose(iso.forward(d.S).tensor(iso.forward(d.T)));
      if (!expect(lhs == rhs, "product intertwining at n=" + std::to_string(n), detail))
        return false;
    }
  }
  return true;
}

bool criterion_star_iso_coproduct(std::string& detail) {
  StarIso iso = star_iso(builtin("X"), builtin("X"));
  auto sxx = star(builtin("X"), builtin("X"));
  auto dom0 = free_hopf(Rat(0), sxx);
  auto cod0 = hadamard_hopf(free_hopf(Rat(0), builtin("X")), free_hopf(Rat(0), builtin("X")));
  for (int n = 0; n <= 4; ++n) {
    LabelSet I = LabelSet::canonical(n);
    for (const auto& d : decomps(n)) {
      SparseMap lhs = iso.forward(d.S).tensor(iso.forward(d.T)).compose(dom0->coproduct(d));
      SparseMap rhs = cod0->coproduct(d).compose(iso.forward(I));
      if (!expect(lhs == rhs, "coproduct intertwining at parameter 0", detail)) return false;
    }
  }

  auto dom1 = free_hopf(Rat(1), sxx);
  auto cod1 = hadamard_hopf(free_hopf(Rat(1), builtin("X")), free_hopf(Rat(1), builtin("X")));
  LabelSet I{1, 2};
  Decomposition d(LabelSet{1}, LabelSet{2});
  SparseMap lhs = iso.forward(d.S).tensor(iso.forward(d.T)).compose(dom1->coproduct(d));
  SparseMap rhs = cod1->coproduct(d).compose(iso.forward(I));
  std::size_t col = 0;
  if (!expect(SparseMap::first_differing_column(lhs, rhs, &col),
              "expected a degree-2 mismatch at parameter 1", detail))
    return false;
  const BasisLabel& witness = dom1->carrier()->basis_data(I).labels[col];
  bool lhs_zero = true, rhs_nonzero = false;
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    if (lhs.at(r, col) != 0) lhs_zero = false;
    if (rhs.at(r, col) != 0) rhs_nonzero = true;
  }
  if (!expect(witness.comp.block_count() == 1 && lhs_zero && rhs_nonzero,
              "mismatch witness shape", detail))
    return false;
  detail = "witness " + witness.repr();
  return true;
}

bool criterion_axiom_checks(std::string& detail) {
  const std::vector<std::string> samples = {"0", "1", "-1", "2", "1/2"};
  // Every identity checked below is polynomial in the parameter of degree
  // at most floor(n^2/4) per ground set [n]; distinct sample points beyond
  // that degree make the pointwise checks equivalent to symbolic equality.
  const int n_max = 4;
  if (!expect(static_cast<int>(samples.size()) >= (n_max * n_max) / 4 + 1,
              "not enough parameter sample points for degree " + std::to_string(n_max),
              detail))
    return false;
  for (const std::string& qs : samples) {
    Rat q = parse_rat(qs);
    auto l = linear_orders_hopf(q);
    if (!expect(check_all(*l, n_max).passed(), "orders structure at q=" + qs, detail))
      return false;
    auto t = free_hopf(q, builtin("Eplus"));
    if (!expect(check_all(*t, n_max).passed(), "free structure at q=" + qs, detail))
      return false;
  }
  return true;
}

bool criterion_negative_fixtures(std::string& detail) {
  CheckReport mock = check_compat(*mock_even_hopf(), 4);
  bool witness_seen = false;
  for (const auto& f : mock.failures)
    if (f.axiom == "compat" && f.I == LabelSet::canonical(4) && f.S == LabelSet{1, 2} &&
        f.T == LabelSet{3, 4} && f.Sp == LabelSet{1, 3} && f.Tp == LabelSet{2, 4})
      witness_seen = true;
  if (!expect(witness_seen, "mock structure must fail at the four-point witness", detail))
    return false;

  auto l = linear_orders_hopf(Rat(1));
  Decomposition d(LabelSet{1}, LabelSet{2});
  const BasisData& bi = l->carrier()->basis_data(LabelSet{1, 2});
  SparseMap bad(2, 1);
  bad.set(bi.index.at(BasisLabel::order({2, 1})), 0, Rat(1));
  auto faulty = with_product_override(l, d, bad, "L-corrupted");
  return expect(!check_monoid(*faulty, 3).passed(), "corrupted product must fail", detail);
}

bool criterion_feasibility_battery(std::string& detail) {
  if (!expect(feasibility(factorial_seq(6)).all_pass(), "factorials pass", detail))
    return false;
  FeasibilityReport fib = feasibility(parse_seq("1,2,3,5,8"));
  if (!expect(fib.boolean_nonneg.pass && !fib.cubic.pass &&
                  fib.cubic.witness["lhs"] == "3" && fib.cubic.witness["rhs"] == "4",
              "Fibonacci verdicts", detail))
    return false;
  FeasibilityReport grow = feasibility(parse_seq("1,2,3,4,32,64"));
  if (!expect(grow.submult.pass && !grow.boolean_nonneg.pass &&
                  grow.boolean_nonneg.witness["index"] == 4 &&
                  grow.boolean_nonneg.witness["value"] == "-1",
              "mixed-growth verdicts", detail))
    return false;
  return expect(min_next_term(parse_seq("1,2,3")) == 5, "smallest next term", detail);
}

bool criterion_type_identities(std::string& detail) {
  for (const std::string& name : {"X", "Eplus"}) {
    auto q = builtin(name);
    if (!expect(type_gf(*free_species(q), 5) == geometric_like(type_gf(*q, 5)),
                "free type identity for " + name, detail))
      return false;
  }
  for (const std::string& name : {"L", "Pi"}) {
    auto p = builtin(name);
    if (!expect(type_gf(*hadamard_species(p, builtin("L")), 5) == ordinary_gf(*p, 5),
                "order-pairing identity for " + name, detail))
      return false;
  }
  return true;
}

bool criterion_property_suites(std::string& detail) {
  oracles::Rng rng(0xacce12);
  for (int trial = 0; trial < 100; ++trial) {
    Seq a(rng.rational_seq(10));
    if (!expect(inverse_boolean(boolean_transform(a)) == a, "round trip", detail))
      return false;
  }
  for (int trial = 0; trial < 20; ++trial) {
    Seq b(rng.rational_seq(10));
    Seq a = inverse_boolean(b);
    for (int n = 1; n <= 10; ++n) {
      Rat acc = 0;
      for (const IntComposition& alpha : enumerate_int_compositions(n)) {
        Rat prod = 1;
        for (int part : alpha.parts()) prod *= b.at(part);
        acc += prod;
      }
      if (!expect(acc == a.at(n), "composition-sum identity", detail)) return false;
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    int n = rng.uniform(2, 8);
    Seq bp(rng.nonneg_int_seq(n));
    Seq bq(rng.nonneg_int_seq(n));
    Seq a = inverse_boolean(bp);
    Seq b = inverse_boolean(bq);
    std::vector<Rat> prod;
    for (int i = 1; i <= n; ++i) prod.push_back(a.at(i) * b.at(i));
    Seq r = boolean_transform(Seq(std::move(prod)));
    for (int i = 1; i <= n; ++i)
      if (!expect(r.at(i) >= 0, "closure under the coefficientwise product", detail))
        return false;
  }
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; a + b <= 5; ++b) {
      LabelSet S = LabelSet::canonical(a);
      LabelSet T = LabelSet::canonical(a + b).set_minus(S);
      Decomposition d(S, T);
      auto left = enumerate_set_compositions(S);
      auto right = enumerate_set_compositions(T);
      for (const auto& F : left)
        for (const auto& G : left)
          for (const auto& Fp : right)
            for (const auto& Gp : right)
              if (!expect(meet_set(concat_set(F, Fp, d), concat_set(G, Gp, d)) ==
                              concat_set(meet_set(F, G), meet_set(Fp, Gp), d),
                          "meet/concatenation distributivity", detail))
                return false;
    }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "Boolean transform of factorials 1..6", 1.0, criterion_factorial_transform},
      {2, "transform of squared factorials by both routes", 1.0,
       criterion_squared_factorials},
      {3, "Hadamard-transform closed forms on 50 random rational pairs", 5.0,
       criterion_hadamard_closed_forms},
      {4, "atomic partition counts equal the Bell transform, n <= 6", 10.0,
       criterion_atomic_partitions},
      {5, "indecomposable sums equal free-monoid transforms, n <= 6", 30.0,
       criterion_indecomposable_sums},
      {6, "squared-factorial dimensions and the product-intertwining bijection", 60.0,
       criterion_star_iso_product},
      {7, "coproduct intertwining at parameter 0; degree-2 mismatch at 1", 60.0,
       criterion_star_iso_coproduct},
      {8, "axiom suite passes for orders and free structures at five parameters", 120.0,
       criterion_axiom_checks},
      {9, "mock even-degree structure and corrupted product are caught", 120.0,
       criterion_negative_fixtures},
      {10, "feasibility battery verdicts and smallest next term", 10.0,
       criterion_feasibility_battery},
      {11, "generating-function identities at truncation 5", 120.0,
       criterion_type_identities},
      {12, "property suites: round trip, composition sums, closure, distributivity", 300.0,
       criterion_property_suites},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = seconds < c.budget_seconds;
    bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("criterion %02d: %s (%.3fs, budget %.0fs) — %s%s%s\n", c.id,
                pass ? "PASS" : "FAIL", seconds, c.budget_seconds, c.summary.c_str(),
                detail.empty() ? "" : "; ", detail.c_str());
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria pass\n", criteria.size());
  else
    std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
