#ifndef ADJOINTFORGE_TEST_SUPPORT_HPP
#define ADJOINTFORGE_TEST_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "adjointforge/catalog.hpp"
#include "adjointforge/lattice.hpp"
#include "adjointforge/nbb.hpp"

// Shared fixtures and independent oracles for the test suites.  Everything
// here stays deliberately naive: oracle code trades speed for obviousness
// so it can vouch for the optimized library paths.

namespace testsupport {

using namespace adjointforge;

// Boolean lattice on n atoms, via subset inclusion.
inline FiniteLattice boolean_lattice(int n) {
  int m = 1 << n;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if ((a & ~b) == 0) pairs.emplace_back(a, b);
  return FiniteLattice::build(m, pairs);
}

// The rank-4 lattice used throughout: flats of U(4,6) with the five flats
// {0,1,2},{0,1,3},{0,1,5},{0,2,3},{0,2,5} removed (0-based labels).
inline FlatLattice pruned_u46_lattice() {
  Matroid u46 = catalog::uniform(4, 6);
  FlatLattice fl = lattice_of_flats(u46);
  std::set<set64> removed = {
      bits::from_elements({0, 1, 2}), bits::from_elements({0, 1, 3}), bits::from_elements({0, 1, 5}),
      bits::from_elements({0, 2, 3}), bits::from_elements({0, 2, 5})};
  std::vector<int> keep;
  for (int x = 0; x < fl.lattice.size(); ++x)
    if (!removed.count(fl.flats[static_cast<std::size_t>(x)])) keep.push_back(x);
  std::vector<std::pair<int, int>> pairs;
  int k = static_cast<int>(keep.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (fl.lattice.leq(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)])) pairs.emplace_back(i, j);
  auto built = FiniteLattice::build_indexed(k, pairs);
  std::vector<set64> labels(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    labels[static_cast<std::size_t>(built.new_of_old[static_cast<std::size_t>(i)])] = fl.flats[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])];
  return FlatLattice{std::move(built.lattice), std::move(labels)};
}

// Oracle: independence by scanning *all* atom orders, straight from the
// definition.  Exponential; keep atom counts tiny.
inline bool independent_by_full_order_scan(const FiniteLattice& l, set64 atom_set) {
  int na = l.atom_count();
  std::vector<int> perm(static_cast<std::size_t>(na));
  for (int i = 0; i < na; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    LinearOrder w;
    w.sequence = perm;
    if (is_nbb_set(l, w, atom_set)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Oracle: matroid rank of a set by scanning all subsets of all bases.
inline int rank_by_enumeration(const Matroid& m, set64 s) {
  int best = 0;
  for (set64 b : m.bases())
    bits::for_each_subset(b & s, [&](set64 sub) { best = std::max(best, bits::count(sub)); });
  return best;
}

// Random linear matroids over GF(2) or GF(3); the workhorse for property
// checks that want "plenty of small matroids".
inline Matroid random_linear_matroid(std::mt19937& rng, int max_n = 7, int max_rank = 4) {
  std::uniform_int_distribution<int> pd(0, 1);
  int p = pd(rng) ? 2 : 3;
  std::uniform_int_distribution<int> rd(1, max_rank);
  int r = rd(rng);
  std::uniform_int_distribution<int> nd(r, max_n);
  int n = nd(rng);
  std::uniform_int_distribution<int> ed(0, p - 1);
  while (true) {
    GFMatrix a(p, r, n);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < n; ++j) a.at(i, j) = ed(rng);
    Matroid m = Matroid::from_matrix(a);
    if (m.rank() >= 1) return m;
  }
}

}  // namespace testsupport

#endif
