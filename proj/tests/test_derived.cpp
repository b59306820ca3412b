#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "adjointforge/derived.hpp"
#include "test_support.hpp"

using namespace adjointforge;

namespace {

// Oracle: the generation closure computed literally on the full powerset
// collection, without the minimal-antichain shortcut.  Exponential.
std::set<set64> closure_by_powerset(const CircuitUniverse& cu) {
  int nc = cu.count();
  REQUIRE(nc <= 8);
  std::set<set64> family;
  bits::for_each_subset(bits::full(nc), [&](set64 s) {
    if (!in_s_family(cu, s)) family.insert(s);
  });
  while (true) {
    std::set<set64> next = family;
    // generation step on all pairs
    for (set64 a1 : family)
      for (set64 a2 : family) {
        if (family.count(a1 & a2)) continue;
        for (int c : bits::elements(a1 & a2)) next.insert(bits::without(a1 | a2, c));
      }
    // upward closure
    std::set<set64> closed;
    for (set64 s : next)
      bits::for_each_subset(bits::full(nc) & ~s, [&](set64 extra) { closed.insert(s | extra); });
    if (closed == family) return family;
    family = std::move(closed);
  }
}

std::set<set64> up_closure_of_minimal(int nc, const SetFamily& minimal) {
  std::set<set64> out;
  for (set64 m : minimal.members())
    bits::for_each_subset(bits::full(nc) & ~m, [&](set64 extra) { out.insert(m | extra); });
  return out;
}

}  // namespace

TEST_CASE("generation step basics") {
  // pairwise disjoint minimal sets: no common circuit, immediate fixpoint
  DependentClosure d;
  d.universe = 6;
  d.minimal = SetFamily(6, {bits::from_elements({0, 1}), bits::from_elements({2, 3}), bits::from_elements({4, 5})});
  DependentClosure next = eps_step(d);
  CHECK(next.minimal == d.minimal);

  DependentClosure bad;
  bad.universe = 3;
  bad.minimal = SetFamily(3, {0});
  CHECK_THROWS_AS(eps_step(bad), error);
}

TEST_CASE("corank-3 closure adds nothing beyond the ceiling complement") {
  for (const char* name : {"K4", "Q6", "R6"}) {
    CircuitUniverse cu = circuit_universe(catalog::by_name(name));
    DependentClosure d = derived_dependents(cu);
    CHECK(d.iterations == 0);
    CHECK(d.minimal == minimal_non_s_sets(cu));
  }
}

TEST_CASE("minimal-antichain closure matches the literal powerset closure") {
  for (const char* name : {"U(2,4)", "U(1,4)", "K4", "MatrixADual", "U(3,5)"}) {
    CircuitUniverse cu = circuit_universe(catalog::by_name(name));
    REQUIRE(cu.count() <= 8);
    DependentClosure d = derived_dependents(cu);
    CHECK(up_closure_of_minimal(cu.count(), d.minimal) == closure_by_powerset(cu));
  }
}

TEST_CASE("derived matroid is an adjoint on corank-3 and uniform instances") {
  for (const char* name : {"K4", "Q6", "R6", "U(2,4)", "U(2,5)", "U(3,5)", "U(2,6)", "U(4,6)"}) {
    Matroid m = catalog::by_name(name);
    CircuitUniverse cu = circuit_universe(m);
    Matroid delta = delta_matroid(cu);
    CHECK(delta.rank() <= cu.corank);
    CHECK(is_adjoint(cu, delta).adjoint);
    // uniform instances close at the ceiling complement
    if (name[0] == 'U') {
      DependentClosure d = derived_dependents(cu);
      CHECK(d.minimal == minimal_non_s_sets(cu));
    }
  }
}

TEST_CASE("derived matroid of K4 is the weak-order maximal adjoint") {
  CircuitUniverse cu = circuit_universe(catalog::k4());
  Matroid delta = delta_matroid(cu);
  AdjointReport rep = enumerate_adjoints(cu);
  bool found = false;
  for (const auto& c : rep.candidates) {
    CHECK(weak_order_leq(c.matroid, delta));
    if (c.matroid == delta) found = true;
  }
  CHECK(found);
  CHECK(delta.basis_count() == 29);
}

TEST_CASE("derived matroid of the reference matrix dominates its linear sibling") {
  GFMatrix a = catalog::matrix_a();
  Matroid m = Matroid::from_matrix(a);
  CircuitUniverse cu = circuit_universe(m);
  Matroid delta = delta_matroid(cu);
  Matroid linear = linear_derived_matroid(a);
  CHECK(linear.basis_count() == 304);
  CHECK(delta.basis_count() == 318);
  CHECK(weak_order_leq(linear, delta));
  CHECK(is_adjoint(cu, delta).adjoint);
}

TEST_CASE("iterated variant") {
  // whenever the closure already equals the ceiling complement, nothing new
  // can appear in later rounds
  for (const char* name : {"K4", "Q6", "U(2,5)"}) {
    CircuitUniverse cu = circuit_universe(catalog::by_name(name));
    Matroid delta = delta_matroid(cu);
    Matroid prime = delta_prime_matroid(cu);
    CHECK(delta == prime);
  }
  // corank-3: the iterated variant is the maximal adjoint
  CircuitUniverse k4 = circuit_universe(catalog::k4());
  Matroid prime = delta_prime_matroid(k4);
  SandwichBounds sb = sandwich_bounds(k4);
  CHECK(prime.bases() == sb.admissible);
  CHECK(is_isomorphic(prime, catalog::non_fano()).has_value());
  // never strictly below an adjoint
  AdjointReport rep = enumerate_adjoints(k4);
  for (const auto& c : rep.candidates)
    CHECK(!(weak_order_leq(prime, c.matroid) && prime.basis_count() < c.basis_count));
}

TEST_CASE("val of proper sequences") {
  CircuitUniverse cu = circuit_universe(catalog::k4());
  XFamily xf = x_family(cu);
  set64 all = bits::full(cu.count());
  CHECK(val(xf, all, {}) == cu.count());
  CHECK(val(xf, 0, {}) == 0);

  // a duplicate entry is never proper
  CHECK_THROWS_AS(val(xf, all, std::vector<int>{0, 0}), error);

  // an element covered by F but reaching outside the prior sets drops val
  // by exactly one
  set64 f = xf.sets[0];
  int before = val(xf, f, {});
  CHECK(val(xf, f, {0}) == before - 1);
}

TEST_CASE("sequence admissibility modes") {
  XFamily xf;
  xf.universe = 6;
  xf.sets = {bits::from_elements({0, 1}), bits::from_elements({2, 3}), bits::from_elements({1, 2})};
  // disjoint steps are fine when each reaches outside, but the overlapping
  // mode insists on touching the prior union
  CHECK(is_proper_sequence(xf, {0, 1}, Properness::reaches_outside));
  CHECK(!is_proper_sequence(xf, {0, 1}, Properness::overlapping));
  CHECK(is_proper_sequence(xf, {0, 2, 1}, Properness::overlapping));
  // a step inside the prior union fails both modes
  CHECK(!is_proper_sequence(xf, {0, 1, 2, 0}, Properness::reaches_outside));
}

TEST_CASE("minimized val bounds every adjoint rank") {
  CircuitUniverse cu = circuit_universe(catalog::k4());
  XFamily xf = x_family(cu);
  ValXTable table = val_x_table(xf);
  CHECK(table.evaluate(0) == 0);
  CHECK(table.evaluate(bits::full(cu.count())) == cu.corank);
  // val_x never exceeds the corank
  bits::for_each_subset(bits::full(cu.count()), [&](set64 s) { CHECK(table.evaluate(s) <= cu.corank); });
  // rank of any adjoint is bounded by val of any proper sequence
  AdjointReport rep = enumerate_adjoints(cu);
  std::mt19937 rng(7);
  for (const auto& c : rep.candidates) {
    for (int trial = 0; trial < 50; ++trial) {
      std::uniform_int_distribution<set64> fd(0, bits::full(cu.count()));
      set64 f = fd(rng);
      // greedy random proper sequence
      std::vector<int> seq;
      set64 covered = 0;
      for (int step = 0; step < 4; ++step) {
        std::vector<int> options;
        for (std::size_t i = 0; i < xf.sets.size(); ++i)
          if (!bits::subset(xf.sets[i], covered)) options.push_back(static_cast<int>(i));
        if (options.empty()) break;
        int pick = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        seq.push_back(pick);
        covered |= xf.sets[static_cast<std::size_t>(pick)];
      }
      CHECK(c.matroid.rank_of(f) <= val(xf, f, seq));
    }
  }
}

TEST_CASE("val off the ceiling and against the derived rank") {
  for (const char* name : {"K4", "U(2,4)", "U(2,5)", "Q6", "R6"}) {
    CircuitUniverse cu = circuit_universe(catalog::by_name(name));
    REQUIRE(cu.count() <= 12);
    ValXTable table = val_x_table(x_family(cu));
    bits::for_each_subset(bits::full(cu.count()), [&](set64 s) {
      if (!in_s_family(cu, s)) CHECK(table.evaluate(s) < bits::count(s));
    });
    CHECK(check_valx_is_rank(cu));
  }
}
