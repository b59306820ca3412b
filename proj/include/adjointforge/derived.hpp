#ifndef ADJOINTFORGE_DERIVED_HPP
#define ADJOINTFORGE_DERIVED_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "adjoint.hpp"
#include "errors.hpp"
#include "matroid.hpp"
#include "small_set.hpp"

// The combinatorial derived matroid: a matroid structure on the circuits of
// M obtained by closing the families outside the ceiling S(M) under the
// union-minus-common-circuit generation step, then reading the result as
// the dependent sets.  Also the val machinery: proper sequences over the
// mandatory circuit families give a universal upper bound on the rank
// function of any adjoint, and their minimum recovers the rank function of
// the maximal one when it exists.

namespace adjointforge {

/// An up-closed collection of circuit families, stored as the antichain of
/// its minimal members.
struct DependentClosure {
  int universe = 0;
  SetFamily minimal;  // antichain
  long iterations = 0;

  bool contains(set64 s) const {
    for (set64 m : minimal.members())
      if (bits::subset(m, s)) return true;
    return false;
  }
};

inline DependentClosure non_s_closure(const CircuitUniverse& cu) {
  DependentClosure d;
  d.universe = cu.count();
  d.minimal = minimal_non_s_sets(cu);
  return d;
}

namespace detail {

// Generation step on a hashed antichain.  size_cap: when every set of that
// size is already dependent (true for corank+1 from the seeds on), larger
// generated sets are never minimal and are dropped outright.
inline bool eps_step_hashed(int universe, std::unordered_set<set64>& family, std::vector<set64>& members,
                            int size_cap) {
  std::vector<set64> fresh;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      set64 inter = members[i] & members[j];
      if (inter == 0 || dominated(family, inter)) continue;
      set64 uni = members[i] | members[j];
      if (bits::count(uni) - 1 > size_cap) continue;
      for (int c : bits::elements(inter)) {
        set64 g = bits::without(uni, c);
        if (!dominated(family, g)) fresh.push_back(g);
      }
    }
  if (fresh.empty()) return false;
  std::sort(fresh.begin(), fresh.end());
  fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
  // rebuild the antichain: old members may now be dominated by fresh ones
  std::vector<set64> all = members;
  all.insert(all.end(), fresh.begin(), fresh.end());
  std::sort(all.begin(), all.end(), [](set64 a, set64 b) {
    if (bits::count(a) != bits::count(b)) return bits::count(a) < bits::count(b);
    return a < b;
  });
  family.clear();
  members.clear();
  bool changed = false;
  for (set64 s : all) {
    if (dominated(family, s)) continue;
    family.insert(s);
    members.push_back(s);
  }
  std::sort(members.begin(), members.end());
  changed = true;
  (void)universe;
  return changed;
}

}  // namespace detail

/// One generation step: for minimal members A1, A2 whose intersection is
/// still independent, every (A1 ∪ A2) minus a common circuit becomes
/// dependent.  Working with minimal members only is enough: a pair of
/// arbitrary up-closed members either already contains a minimal dependent
/// subset of the generated set, or contains the set generated from the
/// minimal pair underneath it (split on whether the removed circuit lies in
/// the minimal members).
inline DependentClosure eps_step(const DependentClosure& d, int size_cap = 64) {
  require(!d.minimal.contains(0), errc::empty_set_dependent, "the empty family must stay independent");
  std::unordered_set<set64> family(d.minimal.members().begin(), d.minimal.members().end());
  std::vector<set64> members = d.minimal.members();
  detail::eps_step_hashed(d.universe, family, members, size_cap);
  DependentClosure next;
  next.universe = d.universe;
  next.minimal = SetFamily(d.universe, std::move(members));
  next.iterations = d.iterations + 1;
  return next;
}

/// Least fixpoint of the generation step, seeded with the minimal families
/// outside the ceiling: the dependent sets of the derived matroid.  Every
/// set of corank+1 circuits is outside the ceiling, so minimal members
/// never exceed that size and larger generated sets can be dropped.
inline DependentClosure derived_dependents(const CircuitUniverse& cu) {
  DependentClosure d = non_s_closure(cu);
  require(!d.minimal.empty(), errc::no_circuits, "matroid has no dependent circuit families");
  std::unordered_set<set64> family(d.minimal.members().begin(), d.minimal.members().end());
  std::vector<set64> members = d.minimal.members();
  long iterations = 0;
  while (detail::eps_step_hashed(cu.count(), family, members, cu.corank + 1)) ++iterations;
  DependentClosure out;
  out.universe = cu.count();
  out.minimal = SetFamily(cu.count(), std::move(members));
  out.iterations = iterations;
  return out;
}

namespace detail {

// Maximal sets containing no member of the antichain, as a basis list.
inline std::vector<set64> independent_maxima(int universe, const SetFamily& min_dependent, int rank_bound) {
  std::unordered_set<set64> family(min_dependent.members().begin(), min_dependent.members().end());
  for (int k = rank_bound; k >= 0; --k) {
    std::vector<set64> level;
    bits::for_each_ksubset(universe, k, [&](set64 s) {
      if (!dominated(family, s)) level.push_back(s);
    });
    if (!level.empty()) return level;
  }
  return {0};
}

}  // namespace detail

inline Matroid closure_matroid(const DependentClosure& d, int rank_bound) {
  std::vector<set64> bases = detail::independent_maxima(d.universe, d.minimal, rank_bound);
  // the closure of the generation step is a matroid; re-validate exchange
  // where the quadratic check is affordable
  if (bases.size() <= 5000) return Matroid::from_bases(d.universe, std::move(bases));
  return Matroid::from_bases_trusted(d.universe, std::move(bases));
}

/// The derived matroid as a matroid on the circuit set.
inline Matroid delta_matroid(const CircuitUniverse& cu) { return closure_matroid(derived_dependents(cu), cu.corank); }

/// The iterated variant: after each full closure, families of the next
/// size threshold that became dependent are injected back as seeds, with
/// as many rounds as the corank.
inline Matroid delta_prime_matroid(const CircuitUniverse& cu) {
  SetFamily seed = minimal_non_s_sets(cu);
  DependentClosure cur;
  cur.universe = cu.count();
  cur.minimal = seed;
  for (int k = 0; k < cu.corank; ++k) {
    std::vector<set64> next_seed = seed.members();
    for (set64 m : cur.minimal.members())
      if (bits::count(m) <= k) next_seed.push_back(m);
    SetFamily start = SetFamily(cu.count(), std::move(next_seed)).minimal_members();
    require(!start.contains(0), errc::empty_set_dependent, "the empty family must stay independent");
    std::unordered_set<set64> family(start.members().begin(), start.members().end());
    std::vector<set64> members = start.members();
    while (detail::eps_step_hashed(cu.count(), family, members, cu.corank + 1)) {
    }
    cur.minimal = SetFamily(cu.count(), std::move(members));
  }
  return closure_matroid(cur, cu.corank);
}

// ---------------------------------------------------------------------------
// Proper sequences over the mandatory circuit families and the val bound.
// ---------------------------------------------------------------------------

/// The mandatory circuit families: every induced fundamental set of every
/// basis, deduplicated.  These are circuits of every adjoint.
struct XFamily {
  int universe = 0;
  std::vector<set64> sets;  // canonical ascending
};

inline XFamily x_family(const CircuitUniverse& cu) {
  std::vector<set64> out;
  for (set64 b : cu.matroid.bases()) {
    set64 cb = fundamental_family(cu, b);
    for (int c = 0; c < cu.count(); ++c)
      if (!bits::contains(cb, c)) out.push_back(lopp_fundamental_circuit(cu, b, c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return XFamily{cu.count(), std::move(out)};
}

/// Sequence admissibility.  The default reading requires each set to reach
/// outside the union of its predecessors (so every step covers new ground);
/// the overlapping variant additionally requires it to touch that union.
enum class Properness { reaches_outside, overlapping };

inline bool is_proper_sequence(const XFamily& xf, const std::vector<int>& seq, Properness mode) {
  set64 covered = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int idx = seq[i];
    if (idx < 0 || idx >= static_cast<int>(xf.sets.size())) return false;
    set64 x = xf.sets[static_cast<std::size_t>(idx)];
    if (bits::subset(x, covered)) return false;
    if (mode == Properness::overlapping && i > 0 && (x & covered) == 0) return false;
    covered |= x;
  }
  return true;
}

/// val(F, sequence) = |F ∪ union of the sequence| − length.
inline int val(const XFamily& xf, set64 f, const std::vector<int>& seq, Properness mode = Properness::reaches_outside) {
  require(is_proper_sequence(xf, seq, mode), errc::not_proper, "sequence is not proper");
  set64 covered = 0;
  for (int idx : seq) covered |= xf.sets[static_cast<std::size_t>(idx)];
  return bits::count(f | covered) - static_cast<int>(seq.size());
}

/// All reachable (union, best length) states of proper sequences; F-free,
/// so one table serves every val minimization over the same family.
struct ValXTable {
  int universe = 0;
  std::vector<std::pair<set64, int>> states;  // (covered union, max sequence length)

  int evaluate(set64 f) const {
    int best = bits::count(f);  // the empty sequence
    for (auto [u, k] : states) best = std::min(best, bits::count(f | u) - k);
    return best;
  }
};

inline ValXTable val_x_table(const XFamily& xf, Properness mode = Properness::reaches_outside) {
  std::map<set64, int> best;  // union -> max length
  std::vector<set64> work;
  auto push = [&](set64 u, int k) {
    auto it = best.find(u);
    if (it != best.end() && it->second >= k) return;
    best[u] = k;
    work.push_back(u);
  };
  for (set64 x : xf.sets) push(x, 1);
  while (!work.empty()) {
    set64 u = work.back();
    work.pop_back();
    int k = best[u];
    for (set64 x : xf.sets) {
      if (bits::subset(x, u)) continue;
      if (mode == Properness::overlapping && (x & u) == 0) continue;
      push(u | x, k + 1);
    }
  }
  ValXTable t;
  t.universe = xf.universe;
  for (auto [u, k] : best) t.states.emplace_back(u, k);
  return t;
}

inline int val_x(const CircuitUniverse& cu, set64 f, Properness mode = Properness::reaches_outside) {
  return val_x_table(x_family(cu), mode).evaluate(f);
}

// ---------------------------------------------------------------------------
// Exhaustive verification of the val bound against the derived matroid.
// ---------------------------------------------------------------------------

namespace detail {

// rank table of the matroid whose minimal dependent sets are given, over
// all subsets of the universe
inline std::vector<int> rank_table(int universe, const SetFamily& min_dependent) {
  std::size_t total = std::size_t{1} << universe;
  std::vector<int> rank(total, 0);
  std::vector<char> dep(total, 0);
  for (set64 m : min_dependent.members())
    if (!dep[static_cast<std::size_t>(m)]) {
      // mark the up-set of m
      set64 rest = bits::full(universe) & ~m;
      bits::for_each_subset(rest, [&](set64 extra) { dep[static_cast<std::size_t>(m | extra)] = 1; });
    }
  for (std::size_t s = 1; s < total; ++s) {
    if (!dep[s]) {
      rank[s] = bits::count(s);
      continue;
    }
    int bestv = 0;
    set64 t = s;
    while (t) {
      int e = bits::lowest(t);
      t &= t - 1;
      bestv = std::max(bestv, rank[s & ~bits::single(e)]);
    }
    rank[s] = bestv;
  }
  return rank;
}

}  // namespace detail

/// val_x must agree with the derived matroid's rank function everywhere and
/// be submodular; exhaustive up to the given universe size.
inline bool check_valx_is_rank(const CircuitUniverse& cu, int exhaustive_limit = 12,
                               Properness mode = Properness::reaches_outside) {
  require(cu.count() <= exhaustive_limit, errc::invalid_argument,
          "exhaustive val check limited to " + std::to_string(exhaustive_limit) + " circuits");
  DependentClosure d = derived_dependents(cu);
  std::vector<int> rank = detail::rank_table(cu.count(), d.minimal);
  ValXTable table = val_x_table(x_family(cu), mode);
  std::size_t total = std::size_t{1} << cu.count();
  std::vector<int> vx(total);
  for (std::size_t s = 0; s < total; ++s) {
    vx[s] = table.evaluate(static_cast<set64>(s));
    if (vx[s] != rank[s]) return false;
  }
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = a; b < total; ++b)
      if (vx[a] + vx[b] < vx[a | b] + vx[a & b]) return false;
  return true;
}

}  // namespace adjointforge

#endif
