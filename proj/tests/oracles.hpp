// Test-only oracles, kept independent of the library paths they check.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "hopfkit/compositions.hpp"
#include "hopfkit/rational.hpp"
#include "hopfkit/sparsemap.hpp"
#include "hopfkit/species.hpp"

namespace oracles {

using hopfkit::Int;
using hopfkit::Rat;

// Pascal's triangle, recomputed locally.
inline Int choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<Int>> tri(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    tri[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j)
      tri[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          tri[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          tri[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
  }
  return tri[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// Ordered Bell numbers via a(n) = sum_k C(n,k) a(n-k).
inline Int ordered_bell(int n) {
  std::vector<Int> a(static_cast<std::size_t>(n) + 1);
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Int s = 0;
    for (int k = 1; k <= m; ++k) s += choose(m, k) * a[static_cast<std::size_t>(m - k)];
    a[static_cast<std::size_t>(m)] = s;
  }
  return a[static_cast<std::size_t>(n)];
}

// Bell numbers via B(n+1) = sum_k C(n,k) B(k).
inline Int bell(int n) {
  std::vector<Int> b(static_cast<std::size_t>(n) + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Int s = 0;
    for (int k = 0; k < m; ++k) s += choose(m - 1, k) * b[static_cast<std::size_t>(k)];
    b[static_cast<std::size_t>(m)] = s;
  }
  return b[static_cast<std::size_t>(n)];
}

// Refinement check by direct definition: every block of coarse is a union
// of consecutive blocks of fine, in order.
inline bool refines(const hopfkit::SetComposition& coarse, const hopfkit::SetComposition& fine) {
  int fi = 0;
  for (int ci = 0; ci < coarse.block_count(); ++ci) {
    std::uint64_t target = coarse.block(ci).bits();
    std::uint64_t acc = 0;
    while (acc != target) {
      if (fi >= fine.block_count()) return false;
      std::uint64_t nb = fine.block(fi).bits();
      if (nb & ~target) return false;
      acc |= nb;
      ++fi;
    }
  }
  return fi == fine.block_count();
}

// Greatest lower bound by scanning every composition of the ground set.
inline hopfkit::SetComposition meet_by_scan(const hopfkit::SetComposition& F,
                                            const hopfkit::SetComposition& G) {
  const hopfkit::LabelSet I = F.ground();
  std::vector<hopfkit::SetComposition> lower;
  for (const auto& H : hopfkit::enumerate_set_compositions(I))
    if (refines(H, F) && refines(H, G)) lower.push_back(H);
  // The maximum lower bound refines every other lower bound.
  for (const auto& H : lower) {
    bool top = true;
    for (const auto& K : lower)
      if (!refines(K, H)) {
        top = false;
        break;
      }
    if (top) return H;
  }
  return hopfkit::SetComposition({I});
}

// Schubert statistic by the raw pair count.
inline int area_by_pairs(const hopfkit::Decomposition& D, const hopfkit::SetComposition& F) {
  auto block_of = [&](int x) {
    for (int i = 0; i < F.block_count(); ++i)
      if (F.block(i).contains(x)) return i;
    return -1;
  };
  int count = 0;
  for (int s : D.S.elements())
    for (int t : D.T.elements())
      if (block_of(s) > block_of(t)) ++count;
  return count;
}

// Orbit count by the Burnside average: orbits = (1/|G|) sum_g |Fix(g)|,
// accumulated as sum over labels of |Stab(label)|.
inline Int orbit_count_burnside(const hopfkit::Species& sp, int n) {
  hopfkit::LabelSet I = hopfkit::LabelSet::canonical(n);
  std::vector<int> elems = I.elements();
  Int stab_sum = 0;
  sp.for_each_basis(I, [&](const hopfkit::BasisLabel& b) {
    std::vector<int> images = elems;
    do {
      hopfkit::Bijection sigma = hopfkit::Bijection::from_images(I, images);
      if (hopfkit::relabel(sigma, b) == b) ++stab_sum;
    } while (std::next_permutation(images.begin(), images.end()));
  });
  Int order = 1;
  for (int i = 2; i <= n; ++i) order *= i;
  if (stab_sum % order != 0) return Int(-1);  // not a group action: flag loudly
  return stab_sum / order;
}

// Orbit count via minimal serialization over the whole group.
inline Int orbit_count_min_form(const hopfkit::Species& sp, int n) {
  hopfkit::LabelSet I = hopfkit::LabelSet::canonical(n);
  std::vector<int> elems = I.elements();
  std::vector<std::string> reps;
  sp.for_each_basis(I, [&](const hopfkit::BasisLabel& b) {
    std::vector<int> images = elems;
    std::string best;
    bool first = true;
    do {
      hopfkit::Bijection sigma = hopfkit::Bijection::from_images(I, images);
      std::string r = hopfkit::relabel(sigma, b).repr();
      if (first || r < best) {
        best = std::move(r);
        first = false;
      }
    } while (std::next_permutation(images.begin(), images.end()));
    reps.push_back(std::move(best));
  });
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return Int(reps.size());
}

// Rank over the rationals by Gaussian elimination.
inline std::size_t rank_by_elimination(const hopfkit::SparseMap& m) {
  std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols(), Rat(0)));
  for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;
  std::size_t rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && a[pivot][col] == 0) ++pivot;
    if (pivot == m.rows()) continue;
    std::swap(a[pivot], a[row]);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rat f = a[r][col] / a[row][col];
      for (std::size_t c = col; c < m.cols(); ++c) a[r][c] -= f * a[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }
  Rat rational(int num_lo = -9, int num_hi = 9, int den_hi = 4) {
    return Rat(uniform(num_lo, num_hi), uniform(1, den_hi));
  }
  std::vector<Rat> rational_seq(int length) {
    std::vector<Rat> out;
    for (int i = 0; i < length; ++i) out.push_back(rational());
    return out;
  }
  std::vector<Rat> nonneg_int_seq(int length, int hi = 6) {
    std::vector<Rat> out;
    for (int i = 0; i < length; ++i) out.push_back(Rat(uniform(0, hi)));
    return out;
  }
};

}  // namespace oracles
