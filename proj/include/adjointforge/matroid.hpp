#ifndef ADJOINTFORGE_MATROID_HPP
#define ADJOINTFORGE_MATROID_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"
#include "small_set.hpp"

namespace adjointforge {

/// A matroid on ground set {0,...,n-1}, stored as its family of bases.
/// Circuits, hyperplanes and the dual are derived lazily and cached; the
/// object is immutable once constructed, so sharing across threads is safe
/// (the caches are filled under a single-writer guard).
class Matroid {
 public:
  Matroid() : n_(0), rank_(0), cache_(std::make_shared<Cache>()) {}

  /// Validates the basis-exchange axiom; throws ExchangeAxiomViolated,
  /// EmptyFamily or UnequalSizes.
  static Matroid from_bases(int n, std::vector<set64> bases) {
    require(n >= 0 && n <= 64, errc::invalid_argument, "ground set size must be in [0,64]");
    require(!bases.empty(), errc::empty_family, "a matroid needs at least one basis");
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    int d = bits::count(bases[0]);
    for (set64 b : bases) {
      require(bits::subset(b, bits::full(n)), errc::invalid_argument, "basis outside the ground set");
      require(bits::count(b) == d, errc::unequal_sizes, "bases must be equicardinal");
    }
    Matroid m;
    m.n_ = n;
    m.rank_ = d;
    m.bases_ = std::move(bases);
    require(m.check_exchange(), errc::exchange_axiom_violated, "basis exchange fails");
    return m;
  }

  /// Constructs without validating exchange.  For callers holding an
  /// external proof that the family is a matroid's basis family (linear
  /// algebra, a closure theorem) where the quadratic check is prohibitive.
  static Matroid from_bases_trusted(int n, std::vector<set64> bases) {
    require(n >= 0 && n <= 64, errc::invalid_argument, "ground set size must be in [0,64]");
    require(!bases.empty(), errc::empty_family, "a matroid needs at least one basis");
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    Matroid m;
    m.n_ = n;
    m.rank_ = bits::count(bases[0]);
    m.bases_ = std::move(bases);
    return m;
  }

  /// Column matroid of a GF(p) matrix; column j becomes element j.
  static Matroid from_matrix(const GFMatrix& a) {
    int n = a.cols();
    int d = a.rank();
    std::vector<set64> bases;
    bits::for_each_ksubset(n, d, [&](set64 s) {
      if (a.column_rank(s) == d) bases.push_back(s);
    });
    Matroid m;
    m.n_ = n;
    m.rank_ = d;
    m.bases_ = std::move(bases);
    m.cache_ = std::make_shared<Cache>();
    return m;  // exchange holds for linear matroids; no re-validation needed
  }

  int size() const { return n_; }
  int rank() const { return rank_; }
  int corank() const { return n_ - rank_; }
  const std::vector<set64>& bases() const { return bases_; }
  long basis_count() const { return static_cast<long>(bases_.size()); }

  bool is_basis(set64 s) const { return std::binary_search(bases_.begin(), bases_.end(), s); }

  int rank_of(set64 s) const {
    int best = 0;
    for (set64 b : bases_) best = std::max(best, bits::count(s & b));
    return best;
  }

  bool independent(set64 s) const { return rank_of(s) == bits::count(s); }
  bool dependent(set64 s) const { return !independent(s); }

  set64 closure(set64 s) const {
    int r = rank_of(s);
    set64 out = s;
    for (int e = 0; e < n_; ++e)
      if (!bits::contains(s, e) && rank_of(bits::with(s, e)) == r) out = bits::with(out, e);
    return out;
  }

  bool is_loop(int e) const { return rank_of(bits::single(e)) == 0; }
  bool is_coloop(int e) const {
    for (set64 b : bases_)
      if (!bits::contains(b, e)) return false;
    return true;
  }

  set64 loops() const {
    set64 out = 0;
    for (int e = 0; e < n_; ++e)
      if (is_loop(e)) out = bits::with(out, e);
    return out;
  }

  bool is_circuit(set64 s) const {
    if (s == 0 || independent(s)) return false;
    for (int e : bits::elements(s))
      if (dependent(bits::without(s, e))) return false;
    return true;
  }

  /// Minimal dependent sets in canonical order.  Enumerated directly by
  /// size (circuits have at most rank+1 elements), with containment
  /// pruning; independent of the dual construction so the circuit /
  /// cocircuit-complement identity stays a testable fact.
  const SetFamily& circuits() const {
    std::call_once(cache_->circuits_once, [&] {
      std::vector<set64> found;
      for (int k = 1; k <= rank_ + 1 && k <= n_; ++k) {
        bits::for_each_ksubset(n_, k, [&](set64 s) {
          for (set64 c : found)
            if (bits::subset(c, s)) return;
          if (dependent(s)) found.push_back(s);
        });
      }
      cache_->circuits = SetFamily(n_, std::move(found));
    });
    return *cache_->circuits;
  }

  /// Fundamental circuit of e with respect to basis b: the unique circuit
  /// inside b+e.  An element x of b+e lies on it iff removing x restores
  /// independence.
  set64 fundamental_circuit(set64 b, int e) const {
    require(is_basis(b), errc::not_a_basis, "fundamental_circuit needs a basis");
    require(!bits::contains(b, e), errc::element_in_basis, "element already in the basis");
    set64 be = bits::with(b, e);
    set64 c = 0;
    for (int x : bits::elements(be))
      if (independent(bits::without(be, x))) c = bits::with(c, x);
    return c;
  }

  const SetFamily& hyperplanes() const {
    std::call_once(cache_->hyperplanes_once, [&] {
      std::vector<set64> out;
      if (rank_ == 0) {
        cache_->hyperplanes = SetFamily(n_, std::move(out));
        return;
      }
      bits::for_each_ksubset(n_, rank_ - 1, [&](set64 s) {
        if (rank_of(s) == rank_ - 1) {
          set64 h = closure(s);
          out.push_back(h);
        }
      });
      cache_->hyperplanes = SetFamily(n_, std::move(out));
    });
    return *cache_->hyperplanes;
  }

  Matroid dual() const {
    std::call_once(cache_->dual_once, [&] {
      std::vector<set64> dbases;
      dbases.reserve(bases_.size());
      set64 all = bits::full(n_);
      for (set64 b : bases_) dbases.push_back(all & ~b);
      Matroid d;
      d.n_ = n_;
      d.rank_ = n_ - rank_;
      std::sort(dbases.begin(), dbases.end());
      d.bases_ = std::move(dbases);
      d.cache_ = std::make_shared<Cache>();
      cache_->dual = std::make_shared<Matroid>(std::move(d));
    });
    return *cache_->dual;
  }

  SetFamily independents() const {
    std::vector<set64> out;
    bits::for_each_subset(bits::full(n_), [&](set64 s) {
      if (independent(s)) out.push_back(s);
    });
    return SetFamily(n_, std::move(out));
  }

  /// Deletes loops and keeps the smallest element of each parallel class.
  /// Returns the simple matroid plus the chosen representatives.
  std::pair<Matroid, std::vector<int>> simplify() const {
    std::vector<int> reps;
    set64 seen = 0;
    for (int e = 0; e < n_; ++e) {
      if (is_loop(e) || bits::contains(seen, e)) continue;
      reps.push_back(e);
      seen |= closure(bits::single(e));
    }
    int k = static_cast<int>(reps.size());
    std::vector<set64> sbases;
    bits::for_each_ksubset(k, rank_, [&](set64 s) {
      set64 orig = 0;
      for (int i : bits::elements(s)) orig = bits::with(orig, reps[i]);
      if (independent(orig)) sbases.push_back(s);
    });
    Matroid m;
    m.n_ = k;
    m.rank_ = rank_;
    m.bases_ = std::move(sbases);
    m.cache_ = std::make_shared<Cache>();
    return {std::move(m), std::move(reps)};
  }

  bool operator==(const Matroid& o) const { return n_ == o.n_ && bases_ == o.bases_; }
  bool operator!=(const Matroid& o) const { return !(*this == o); }

 private:
  struct Cache {
    std::once_flag circuits_once, hyperplanes_once, dual_once;
    std::optional<SetFamily> circuits, hyperplanes;
    std::shared_ptr<Matroid> dual;
  };

  bool check_exchange() const {
    for (set64 a : bases_) {
      for (set64 b : bases_) {
        if (a == b) continue;
        for (int x : bits::elements(a & ~b)) {
          bool ok = false;
          for (int y : bits::elements(b & ~a)) {
            if (is_basis(bits::with(bits::without(a, x), y))) {
              ok = true;
              break;
            }
          }
          if (!ok) return false;
        }
      }
    }
    return true;
  }

  int n_;
  int rank_;
  std::vector<set64> bases_;
  mutable std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Weak order: M1 <= M2 iff every basis of M1 is a basis of M2.
inline bool weak_order_leq(const Matroid& m1, const Matroid& m2) {
  require(m1.size() == m2.size(), errc::ground_set_mismatch, "weak order needs a common ground set");
  for (set64 b : m1.bases())
    if (!m2.is_basis(b)) return false;
  return true;
}

/// Coefficient vector of a circuit of the column matroid of a: the unique
/// (up to scalar) dependency among the circuit's columns, normalized so its
/// first nonzero entry is 1.  Indexed over the full ground set.
struct CircuitVector {
  set64 circuit;
  std::vector<int> coefficients;  // length n, support == circuit
};

inline CircuitVector circuit_vector(const GFMatrix& a, set64 circuit) {
  Matroid m = Matroid::from_matrix(a);
  require(m.is_circuit(circuit), errc::not_a_circuit, "set is not a circuit of the column matroid");
  std::vector<int> local = a.kernel_vector(circuit);
  require(!local.empty(), errc::internal_inconsistency, "circuit columns have no dependency");
  std::vector<int> sel = bits::elements(circuit);
  std::vector<int> coeff(static_cast<std::size_t>(a.cols()), 0);
  for (std::size_t j = 0; j < sel.size(); ++j) coeff[static_cast<std::size_t>(sel[j])] = local[j];
  int first = -1;
  for (int e : sel)
    if (coeff[static_cast<std::size_t>(e)] != 0) {
      first = e;
      break;
    }
  require(first >= 0, errc::internal_inconsistency, "zero kernel vector");
  int scale = a.inv(coeff[static_cast<std::size_t>(first)]);
  for (int& c : coeff) c = a.mod(static_cast<long long>(c) * scale);
  for (int e : sel)
    require(coeff[static_cast<std::size_t>(e)] != 0, errc::internal_inconsistency, "kernel support misses a circuit element");
  return CircuitVector{circuit, std::move(coeff)};
}

/// The representable derived matroid of (M, a): ground set = circuits of the
/// column matroid in canonical order, represented by their circuit vectors.
inline Matroid linear_derived_matroid(const GFMatrix& a) {
  Matroid m = Matroid::from_matrix(a);
  const SetFamily& cs = m.circuits();
  require(!cs.empty(), errc::no_circuits, "matroid has no circuits");
  GFMatrix rep(a.p(), a.cols(), static_cast<int>(cs.size()));
  for (std::size_t j = 0; j < cs.members().size(); ++j) {
    CircuitVector v = circuit_vector(a, cs.members()[j]);
    for (int i = 0; i < a.cols(); ++i) rep.at(i, static_cast<int>(j)) = v.coefficients[static_cast<std::size_t>(i)];
  }
  return Matroid::from_matrix(rep);
}

namespace detail {

// Per-element fingerprint: how many bases and how many circuits of each
// size contain the element.  Isomorphisms must preserve it.
inline std::vector<long> element_profile(const Matroid& m, int e) {
  std::vector<long> prof;
  long deg = 0;
  for (set64 b : m.bases())
    if (bits::contains(b, e)) ++deg;
  prof.push_back(deg);
  std::vector<long> by_size(static_cast<std::size_t>(m.rank()) + 2, 0);
  for (set64 c : m.circuits().members())
    if (bits::contains(c, e)) ++by_size[static_cast<std::size_t>(bits::count(c))];
  prof.insert(prof.end(), by_size.begin(), by_size.end());
  return prof;
}

inline bool iso_backtrack(const Matroid& m1, const Matroid& m2, std::vector<int>& image, set64& used,
                          const std::vector<std::vector<int>>& candidates, std::size_t pos,
                          const std::vector<int>& order) {
  int n = m1.size();
  if (pos == static_cast<std::size_t>(n)) return true;
  int e = order[pos];
  for (int f : candidates[static_cast<std::size_t>(e)]) {
    if (bits::contains(used, f)) continue;
    image[static_cast<std::size_t>(e)] = f;
    used = bits::with(used, f);
    // Every basis-sized subset of the assigned elements must map basis<->basis.
    bool ok = true;
    set64 assigned = 0;
    for (std::size_t i = 0; i <= pos; ++i) assigned = bits::with(assigned, order[i]);
    if (bits::count(assigned) >= m1.rank()) {
      bits::for_each_ksubset(n, m1.rank(), [&](set64 s) {
        if (!ok || !bits::subset(s, assigned) || !bits::contains(s, e)) return;
        set64 t = 0;
        for (int x : bits::elements(s)) t = bits::with(t, image[static_cast<std::size_t>(x)]);
        if (m1.is_basis(s) != m2.is_basis(t)) ok = false;
      });
    }
    if (ok && iso_backtrack(m1, m2, image, used, candidates, pos + 1, order)) return true;
    used = bits::without(used, f);
    image[static_cast<std::size_t>(e)] = -1;
  }
  return false;
}

}  // namespace detail

/// A ground-set permutation mapping bases of m1 onto bases of m2, if any.
inline std::optional<std::vector<int>> is_isomorphic(const Matroid& m1, const Matroid& m2) {
  if (m1.size() != m2.size() || m1.rank() != m2.rank() || m1.basis_count() != m2.basis_count()) return std::nullopt;
  int n = m1.size();
  // Circuit size multisets must agree.
  std::vector<int> cs1, cs2;
  for (set64 c : m1.circuits().members()) cs1.push_back(bits::count(c));
  for (set64 c : m2.circuits().members()) cs2.push_back(bits::count(c));
  std::sort(cs1.begin(), cs1.end());
  std::sort(cs2.begin(), cs2.end());
  if (cs1 != cs2) return std::nullopt;

  std::vector<std::vector<long>> prof1(static_cast<std::size_t>(n)), prof2(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) {
    prof1[static_cast<std::size_t>(e)] = detail::element_profile(m1, e);
    prof2[static_cast<std::size_t>(e)] = detail::element_profile(m2, e);
  }
  {
    auto s1 = prof1, s2 = prof2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }
  std::vector<std::vector<int>> candidates(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      if (prof1[static_cast<std::size_t>(e)] == prof2[static_cast<std::size_t>(f)])
        candidates[static_cast<std::size_t>(e)].push_back(f);
  // Most-constrained element first.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return candidates[static_cast<std::size_t>(a)].size() < candidates[static_cast<std::size_t>(b)].size();
  });
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  set64 used = 0;
  if (detail::iso_backtrack(m1, m2, image, used, candidates, 0, order)) return image;
  return std::nullopt;
}

}  // namespace adjointforge

#endif
