#ifndef ADJOINTFORGE_LATTICE_HPP
#define ADJOINTFORGE_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "matroid.hpp"
#include "small_set.hpp"

namespace adjointforge {

/// An explicit finite bounded graded lattice.  Construction validates that
/// the input relation is a partial order with unique bounds, that every
/// pair has a unique join and meet, and that the longest-chain rank makes
/// every cover step exactly one.  Elements are renumbered canonically by
/// (rank, atom support), so equal abstract inputs serialize identically.
/// Immutable after construction.
class FiniteLattice {
 public:
  struct Built;  // lattice + index mapping, defined below

  static Built build_indexed(int m, const std::vector<std::pair<int, int>>& leq_pairs);
  static FiniteLattice build(int m, const std::vector<std::pair<int, int>>& leq_pairs);

  int size() const { return m_; }
  int rank() const { return rank_[static_cast<std::size_t>(top_)]; }
  int rank_of(int x) const { return rank_[static_cast<std::size_t>(x)]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

  bool leq(int x, int y) const { return (up_[row(x) + static_cast<std::size_t>(y >> 6)] >> (y & 63)) & 1u; }
  bool lt(int x, int y) const { return x != y && leq(x, y); }

  int join(int x, int y) const { return join_[static_cast<std::size_t>(x) * m_ + y]; }
  int meet(int x, int y) const { return meet_[static_cast<std::size_t>(x) * m_ + y]; }

  const std::vector<int>& atoms() const { return atoms_; }
  const std::vector<int>& coatoms() const { return coatoms_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  bool is_atomic() const { return atomic_; }
  bool is_coatomic() const { return coatomic_; }

  /// Atoms below x, as a bitset over atom positions (atom i = atoms()[i]).
  set64 atom_support(int x) const {
    require(atom_count() <= 64, errc::invalid_argument, "atom support needs at most 64 atoms");
    return atom_support_[static_cast<std::size_t>(x)];
  }

  int atom_element(int atom_index) const { return atoms_[static_cast<std::size_t>(atom_index)]; }

  /// Position of element x within atoms(), or -1.
  int atom_index_of(int x) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == x) return static_cast<int>(i);
    return -1;
  }

  /// Join of a set of atoms given by atom positions; empty set joins to bottom.
  int join_of_atoms(set64 atom_set) const {
    int x = bottom_;
    for (int i : bits::elements(atom_set)) x = join(x, atoms_[static_cast<std::size_t>(i)]);
    return x;
  }

  std::vector<int> covers_of(int x) const {
    std::vector<int> out;
    for (int y = 0; y < m_; ++y)
      if (lt(x, y) && rank_of(y) == rank_of(x) + 1) out.push_back(y);
    return out;
  }

  /// Semimodular rank inequality on all pairs (plus atomicity): the
  /// defining property of geometric lattices.
  bool is_geometric() const {
    if (!atomic_) return false;
    for (int x = 0; x < m_; ++x)
      for (int y = 0; y < m_; ++y)
        if (rank_of(x) + rank_of(y) < rank_of(join(x, y)) + rank_of(meet(x, y))) return false;
    return true;
  }

  bool is_modular() const {
    for (int x = 0; x < m_; ++x)
      for (int y = 0; y < m_; ++y)
        if (rank_of(x) + rank_of(y) != rank_of(join(x, y)) + rank_of(meet(x, y))) return false;
    return true;
  }

  /// Cover pairs (x, y) with x covered by y; enough to rebuild the order.
  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < m_; ++x)
      for (int y = 0; y < m_; ++y)
        if (lt(x, y) && rank_of(y) == rank_of(x) + 1) out.emplace_back(x, y);
    return out;
  }

  bool operator==(const FiniteLattice& o) const {
    return m_ == o.m_ && up_ == o.up_;
  }

 private:
  std::size_t row(int x) const { return static_cast<std::size_t>(x) * words_; }

  int m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> up_;  // up_[x] bitset: all y with x <= y
  std::vector<int> join_, meet_;
  std::vector<int> rank_;
  std::vector<int> atoms_, coatoms_;
  std::vector<set64> atom_support_;
  int bottom_ = 0, top_ = 0;
  bool atomic_ = false, coatomic_ = false;
};

struct FiniteLattice::Built {
  FiniteLattice lattice;
  std::vector<int> new_of_old;  // canonical index of each input index
};

inline FiniteLattice::Built FiniteLattice::build_indexed(int m, const std::vector<std::pair<int, int>>& leq_pairs) {
  require(m >= 1, errc::no_bounds, "a bounded lattice needs at least one element");
  require(m <= 4096, errc::invalid_argument, "lattice too large (limit 4096 elements)");
  std::size_t words = static_cast<std::size_t>((m + 63) / 64);
  std::vector<std::uint64_t> up(static_cast<std::size_t>(m) * words, 0);
  auto set_bit = [&](int x, int y) { up[static_cast<std::size_t>(x) * words + static_cast<std::size_t>(y >> 6)] |= std::uint64_t{1} << (y & 63); };
  auto get_bit = [&](int x, int y) {
    return (up[static_cast<std::size_t>(x) * words + static_cast<std::size_t>(y >> 6)] >> (y & 63)) & 1u;
  };
  for (int x = 0; x < m; ++x) set_bit(x, x);
  for (auto [a, b] : leq_pairs) {
    require(0 <= a && a < m && 0 <= b && b < m, errc::invalid_argument, "relation index out of range");
    set_bit(a, b);
  }
  // Reflexive-transitive closure (Warshall on bit rows).
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      if (get_bit(i, k))
        for (std::size_t w = 0; w < words; ++w)
          up[static_cast<std::size_t>(i) * words + w] |= up[static_cast<std::size_t>(k) * words + w];
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y)
      require(!(get_bit(x, y) && get_bit(y, x)), errc::not_a_lattice, "relation contains a cycle");

  // Bounds.
  int bottom = -1, top = -1;
  for (int x = 0; x < m; ++x) {
    bool below_all = true, above_all = true;
    for (int y = 0; y < m; ++y) {
      below_all = below_all && get_bit(x, y);
      above_all = above_all && get_bit(y, x);
    }
    if (below_all) bottom = x;
    if (above_all) top = x;
  }
  require(bottom >= 0 && top >= 0, errc::no_bounds, "order has no minimum or no maximum");

  // Longest-chain rank from the bottom.
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> downsize(static_cast<std::size_t>(m), 0);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (get_bit(y, x)) ++downsize[static_cast<std::size_t>(x)];
  std::sort(order.begin(), order.end(), [&](int a, int b) { return downsize[static_cast<std::size_t>(a)] < downsize[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(static_cast<std::size_t>(m), 0);
  for (int x : order)
    for (int y = 0; y < m; ++y)
      if (y != x && get_bit(y, x)) rank[static_cast<std::size_t>(x)] = std::max(rank[static_cast<std::size_t>(x)], rank[static_cast<std::size_t>(y)] + 1);

  // Covers must climb exactly one rank.
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      if (x == y || !get_bit(x, y)) continue;
      bool has_between = false;
      for (int z = 0; z < m && !has_between; ++z)
        if (z != x && z != y && get_bit(x, z) && get_bit(z, y)) has_between = true;
      if (!has_between)
        require(rank[static_cast<std::size_t>(y)] == rank[static_cast<std::size_t>(x)] + 1, errc::not_graded,
                "a cover skips a rank level");
    }

  // Joins and meets, scanning candidates in rank order so the first hit is
  // the least upper bound (checked to dominate the whole bound set).
  std::vector<int> by_rank = order;
  std::sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
    if (rank[static_cast<std::size_t>(a)] != rank[static_cast<std::size_t>(b)]) return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
    return a < b;
  });
  std::vector<int> join_t(static_cast<std::size_t>(m) * m, -1), meet_t(static_cast<std::size_t>(m) * m, -1);
  for (int x = 0; x < m; ++x) {
    for (int y = x; y < m; ++y) {
      int j = -1, mt = -1;
      for (int u : by_rank) {
        if (!get_bit(x, u) || !get_bit(y, u)) continue;
        bool dominates = true;
        for (int v = 0; v < m && dominates; ++v)
          if (get_bit(x, v) && get_bit(y, v) && !get_bit(u, v)) dominates = false;
        if (dominates) j = u;
        break;  // first common upper bound in rank order must be the join
      }
      require(j >= 0, errc::not_a_lattice, "a pair has no unique join");
      for (auto it = by_rank.rbegin(); it != by_rank.rend(); ++it) {
        int u = *it;
        if (!get_bit(u, x) || !get_bit(u, y)) continue;
        bool dominates = true;
        for (int v = 0; v < m && dominates; ++v)
          if (get_bit(v, x) && get_bit(v, y) && !get_bit(v, u)) dominates = false;
        if (dominates) mt = u;
        break;
      }
      require(mt >= 0, errc::not_a_lattice, "a pair has no unique meet");
      join_t[static_cast<std::size_t>(x) * m + y] = join_t[static_cast<std::size_t>(y) * m + x] = j;
      meet_t[static_cast<std::size_t>(x) * m + y] = meet_t[static_cast<std::size_t>(y) * m + x] = mt;
    }
  }

  // Atoms (rank 1) in input order, then supports for the canonical key.
  std::vector<int> atoms_raw;
  for (int x = 0; x < m; ++x)
    if (rank[static_cast<std::size_t>(x)] == 1) atoms_raw.push_back(x);
  int na = static_cast<int>(atoms_raw.size());
  std::vector<std::vector<std::uint64_t>> support(static_cast<std::size_t>(m),
                                                  std::vector<std::uint64_t>(static_cast<std::size_t>((na + 63) / 64), 0));
  for (int i = 0; i < na; ++i)
    for (int x = 0; x < m; ++x)
      if (get_bit(atoms_raw[static_cast<std::size_t>(i)], x)) support[static_cast<std::size_t>(x)][static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);

  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (rank[static_cast<std::size_t>(a)] != rank[static_cast<std::size_t>(b)]) return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
    return support[static_cast<std::size_t>(a)] < support[static_cast<std::size_t>(b)];
  });
  std::vector<int> new_of_old(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) new_of_old[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;

  FiniteLattice l;
  l.m_ = m;
  l.words_ = words;
  l.up_.assign(static_cast<std::size_t>(m) * words, 0);
  auto set_new = [&](int x, int y) { l.up_[static_cast<std::size_t>(x) * words + static_cast<std::size_t>(y >> 6)] |= std::uint64_t{1} << (y & 63); };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (get_bit(x, y)) set_new(new_of_old[static_cast<std::size_t>(x)], new_of_old[static_cast<std::size_t>(y)]);
  l.join_.assign(static_cast<std::size_t>(m) * m, 0);
  l.meet_.assign(static_cast<std::size_t>(m) * m, 0);
  l.rank_.assign(static_cast<std::size_t>(m), 0);
  for (int x = 0; x < m; ++x) {
    l.rank_[static_cast<std::size_t>(new_of_old[static_cast<std::size_t>(x)])] = rank[static_cast<std::size_t>(x)];
    for (int y = 0; y < m; ++y) {
      l.join_[static_cast<std::size_t>(new_of_old[static_cast<std::size_t>(x)]) * m + new_of_old[static_cast<std::size_t>(y)]] =
          new_of_old[static_cast<std::size_t>(join_t[static_cast<std::size_t>(x) * m + y])];
      l.meet_[static_cast<std::size_t>(new_of_old[static_cast<std::size_t>(x)]) * m + new_of_old[static_cast<std::size_t>(y)]] =
          new_of_old[static_cast<std::size_t>(meet_t[static_cast<std::size_t>(x) * m + y])];
    }
  }
  l.bottom_ = new_of_old[static_cast<std::size_t>(bottom)];
  l.top_ = new_of_old[static_cast<std::size_t>(top)];
  for (int x = 0; x < m; ++x)
    if (l.rank_[static_cast<std::size_t>(x)] == 1) l.atoms_.push_back(x);
  int top_rank = l.rank_[static_cast<std::size_t>(l.top_)];
  for (int x = 0; x < m; ++x)
    if (l.rank_[static_cast<std::size_t>(x)] == top_rank - 1 && l.leq(x, l.top_)) l.coatoms_.push_back(x);

  if (l.atom_count() <= 64) {
    l.atom_support_.assign(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < l.atoms_.size(); ++i)
      for (int x = 0; x < m; ++x)
        if (l.leq(l.atoms_[i], x)) l.atom_support_[static_cast<std::size_t>(x)] |= set64{1} << i;
    l.atomic_ = true;
    for (int x = 0; x < m && l.atomic_; ++x)
      if (l.join_of_atoms(l.atom_support_[static_cast<std::size_t>(x)]) != x) l.atomic_ = false;
  } else {
    l.atomic_ = true;
    for (int x = 0; x < m && l.atomic_; ++x) {
      int jn = l.bottom_;
      for (int a : l.atoms_)
        if (l.leq(a, x)) jn = l.join(jn, a);
      if (jn != x) l.atomic_ = false;
    }
  }
  l.coatomic_ = true;
  for (int x = 0; x < m && l.coatomic_; ++x) {
    int mt = l.top_;
    for (int c : l.coatoms_)
      if (l.leq(x, c)) mt = l.meet(mt, c);
    if (mt != x) l.coatomic_ = false;
  }
  return Built{std::move(l), std::move(new_of_old)};
}

inline FiniteLattice FiniteLattice::build(int m, const std::vector<std::pair<int, int>>& leq_pairs) {
  return build_indexed(m, leq_pairs).lattice;
}

/// A sub- or transformed lattice together with the provenance of each of
/// its elements in the parent lattice.
struct LatticeMinor {
  FiniteLattice lattice;
  std::vector<int> parent_element;  // parent index of each element
};

namespace detail {

inline LatticeMinor build_induced(const FiniteLattice& l, const std::vector<int>& keep) {
  std::vector<std::pair<int, int>> pairs;
  int k = static_cast<int>(keep.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (l.leq(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)])) pairs.emplace_back(i, j);
  auto built = FiniteLattice::build_indexed(k, pairs);
  std::vector<int> parent(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) parent[static_cast<std::size_t>(built.new_of_old[static_cast<std::size_t>(i)])] = keep[static_cast<std::size_t>(i)];
  return LatticeMinor{std::move(built.lattice), std::move(parent)};
}

}  // namespace detail

/// The interval [bottom, x].
inline LatticeMinor restrict_to(const FiniteLattice& l, int x) {
  require(l.rank_of(x) >= 1, errc::rank_too_small, "restriction needs an element of rank >= 1");
  std::vector<int> keep;
  for (int y = 0; y < l.size(); ++y)
    if (l.leq(y, x)) keep.push_back(y);
  return detail::build_induced(l, keep);
}

/// The interval [x, top].
inline LatticeMinor contract_at(const FiniteLattice& l, int x) {
  require(l.rank_of(x) <= l.rank() - 1, errc::rank_too_large, "contraction needs an element below the top");
  std::vector<int> keep;
  for (int y = 0; y < l.size(); ++y)
    if (l.leq(x, y)) keep.push_back(y);
  return detail::build_induced(l, keep);
}

/// Elements of rank < m plus a single new top; the new top's parent is the
/// old top.
inline LatticeMinor truncate_to(const FiniteLattice& l, int m) {
  require(1 <= m && m <= l.rank(), errc::bad_rank, "truncation level out of range");
  std::vector<int> keep;
  for (int y = 0; y < l.size(); ++y)
    if (l.rank_of(y) < m) keep.push_back(y);
  int k = static_cast<int>(keep.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j)
      if (l.leq(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)])) pairs.emplace_back(i, j);
    pairs.emplace_back(i, k);  // everything sits below the new top
  }
  auto built = FiniteLattice::build_indexed(k + 1, pairs);
  std::vector<int> parent(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i < k; ++i) parent[static_cast<std::size_t>(built.new_of_old[static_cast<std::size_t>(i)])] = keep[static_cast<std::size_t>(i)];
  parent[static_cast<std::size_t>(built.new_of_old[static_cast<std::size_t>(k)])] = l.top();
  return LatticeMinor{std::move(built.lattice), std::move(parent)};
}

/// Same elements, reversed order.
inline LatticeMinor dual_lattice(const FiniteLattice& l) {
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < l.size(); ++x)
    for (int y = 0; y < l.size(); ++y)
      if (l.leq(y, x)) pairs.emplace_back(x, y);
  auto built = FiniteLattice::build_indexed(l.size(), pairs);
  std::vector<int> parent(static_cast<std::size_t>(l.size()));
  for (int i = 0; i < l.size(); ++i) parent[static_cast<std::size_t>(built.new_of_old[static_cast<std::size_t>(i)])] = i;
  return LatticeMinor{std::move(built.lattice), std::move(parent)};
}

/// The lattice of flats of a matroid, with each element labeled by its flat.
struct FlatLattice {
  FiniteLattice lattice;
  std::vector<set64> flats;  // flats[element] = closed subset of the ground set
};

inline FlatLattice lattice_of_flats(const Matroid& m) {
  std::vector<set64> flats;
  std::vector<set64> queue{m.closure(0)};
  flats.push_back(queue[0]);
  while (!queue.empty()) {
    set64 f = queue.back();
    queue.pop_back();
    for (int e = 0; e < m.size(); ++e) {
      if (bits::contains(f, e)) continue;
      set64 g = m.closure(bits::with(f, e));
      if (!std::binary_search(flats.begin(), flats.end(), g)) {
        flats.insert(std::lower_bound(flats.begin(), flats.end(), g), g);
        queue.push_back(g);
      }
    }
  }
  int k = static_cast<int>(flats.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (bits::subset(flats[static_cast<std::size_t>(i)], flats[static_cast<std::size_t>(j)])) pairs.emplace_back(i, j);
  auto built = FiniteLattice::build_indexed(k, pairs);
  std::vector<set64> labels(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) labels[static_cast<std::size_t>(built.new_of_old[static_cast<std::size_t>(i)])] = flats[static_cast<std::size_t>(i)];
  return FlatLattice{std::move(built.lattice), std::move(labels)};
}

}  // namespace adjointforge

#endif
