#ifndef ADJOINTFORGE_SMALL_SET_HPP
#define ADJOINTFORGE_SMALL_SET_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "errors.hpp"

// Subsets of a universe of at most 64 elements are plain 64-bit words
// (bit i set <=> element i in the set).  Everything downstream -- matroid
// bases, circuits, atom sets, circuit families -- lives in this range.

namespace adjointforge {

using set64 = std::uint64_t;

namespace bits {

inline int count(set64 s) { return std::popcount(s); }
inline bool contains(set64 s, int e) { return (s >> e) & 1u; }
inline set64 with(set64 s, int e) { return s | (set64{1} << e); }
inline set64 without(set64 s, int e) { return s & ~(set64{1} << e); }
inline set64 single(int e) { return set64{1} << e; }
inline set64 full(int n) { return n >= 64 ? ~set64{0} : (set64{1} << n) - 1; }
inline bool subset(set64 a, set64 b) { return (a & ~b) == 0; }
inline int lowest(set64 s) { return std::countr_zero(s); }

inline std::vector<int> elements(set64 s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count(s)));
  while (s) {
    out.push_back(lowest(s));
    s &= s - 1;
  }
  return out;
}

inline set64 from_elements(const std::vector<int>& es) {
  set64 s = 0;
  for (int e : es) s = with(s, e);
  return s;
}

// Visit every subset of mask, including mask itself and the empty set.
template <typename F>
void for_each_subset(set64 mask, F&& f) {
  set64 sub = mask;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

// Visit every k-subset of {0,...,n-1} in increasing numeric order.
template <typename F>
void for_each_ksubset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(set64{0});
    return;
  }
  set64 s = full(k);
  set64 limit = full(n);
  while (s <= limit) {
    f(s);
    // Gosper's hack: next bit pattern with the same popcount.
    set64 c = s & (~s + 1);
    set64 r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
    if (r == 0) break;  // overflow past the 64-bit range
  }
}

}  // namespace bits

// A canonical collection of subsets of a fixed universe: members are kept
// sorted by their numeric encoding, without duplicates.
class SetFamily {
 public:
  SetFamily() : universe_(0) {}
  explicit SetFamily(int universe) : universe_(universe) {}
  SetFamily(int universe, std::vector<set64> members) : universe_(universe), members_(std::move(members)) {
    canonicalize();
  }

  int universe() const { return universe_; }
  const std::vector<set64>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(set64 s) const { return std::binary_search(members_.begin(), members_.end(), s); }

  void insert(set64 s) {
    auto it = std::lower_bound(members_.begin(), members_.end(), s);
    if (it == members_.end() || *it != s) members_.insert(it, s);
  }

  bool operator==(const SetFamily& o) const { return universe_ == o.universe_ && members_ == o.members_; }
  bool operator!=(const SetFamily& o) const { return !(*this == o); }

  SetFamily minimal_members() const {
    std::vector<set64> out;
    for (set64 s : members_) {
      bool minimal = true;
      for (set64 t : members_) {
        if (t != s && bits::subset(t, s)) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(s);
    }
    return SetFamily(universe_, std::move(out));
  }

  SetFamily maximal_members() const {
    std::vector<set64> out;
    for (set64 s : members_) {
      bool maximal = true;
      for (set64 t : members_) {
        if (t != s && bits::subset(s, t)) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(s);
    }
    return SetFamily(universe_, std::move(out));
  }

  bool is_antichain() const {
    for (set64 s : members_)
      for (set64 t : members_)
        if (s != t && bits::subset(s, t)) return false;
    return true;
  }

  bool is_downward_closed() const {
    for (set64 s : members_) {
      set64 m = s;
      while (m) {
        int e = bits::lowest(m);
        m &= m - 1;
        if (!contains(bits::without(s, e))) return false;
      }
    }
    return true;
  }

  // Downward closure of the current members.
  SetFamily downward_closure() const {
    std::vector<set64> out;
    for (set64 s : members_) bits::for_each_subset(s, [&](set64 sub) { out.push_back(sub); });
    return SetFamily(universe_, std::move(out));
  }

 private:
  void canonicalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  int universe_;
  std::vector<set64> members_;
};

}  // namespace adjointforge

#endif
