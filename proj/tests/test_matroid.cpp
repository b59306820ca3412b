#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace adjointforge;
using testsupport::rank_by_enumeration;

TEST_CASE("from_bases validates the exchange axiom") {
  CHECK(catalog::uniform(2, 3).basis_count() == 3);
  CHECK_THROWS_AS(Matroid::from_bases(4, {bits::from_elements({0, 1}), bits::from_elements({2, 3})}), error);
  CHECK_THROWS_AS(Matroid::from_bases(3, {}), error);
  CHECK_THROWS_AS(Matroid::from_bases(3, {bits::from_elements({0}), bits::from_elements({0, 1})}), error);
  CHECK(catalog::fano().basis_count() == 28);
}

TEST_CASE("basic oracles on U(2,3)") {
  Matroid u23 = catalog::uniform(2, 3);
  CHECK(u23.circuits().members() == std::vector<set64>{bits::from_elements({0, 1, 2})});
  CHECK(u23.rank_of(bits::from_elements({0, 1, 2})) == 2);
  CHECK(u23.closure(bits::from_elements({0, 1})) == bits::from_elements({0, 1, 2}));
  CHECK(u23.fundamental_circuit(bits::from_elements({0, 1}), 2) == bits::from_elements({0, 1, 2}));
}

TEST_CASE("duality and hyperplane complements") {
  for (const char* name : {"K4", "Fano", "Q6", "R6", "P6", "MatrixA"}) {
    Matroid m = catalog::by_name(name);
    Matroid d = m.dual();
    CHECK(d.dual() == m);
    CHECK(m.rank() + d.rank() == m.size());
    // complements of hyperplanes are exactly the dual circuits
    std::vector<set64> hc;
    for (set64 h : m.hyperplanes().members()) hc.push_back(bits::full(m.size()) & ~h);
    std::sort(hc.begin(), hc.end());
    CHECK(hc == d.circuits().members());
  }
}

TEST_CASE("rank oracle matches enumeration on random matroids") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    Matroid m = testsupport::random_linear_matroid(rng, 6, 3);
    for (set64 s = 0; s < bits::full(m.size()); s += 3)
      CHECK(m.rank_of(s) == rank_by_enumeration(m, s));
  }
}

TEST_CASE("fano catalog facts") {
  Matroid fano = catalog::fano();
  CHECK(fano.size() == 7);
  CHECK(fano.rank() == 3);
  CHECK(fano.hyperplanes().size() == 7);
  for (set64 h : fano.hyperplanes().members()) CHECK(bits::count(h) == 3);
  CHECK(fano.circuits().size() == 14);

  Matroid nonfano = catalog::non_fano();
  CHECK(nonfano.basis_count() == 29);
  CHECK(weak_order_leq(fano, nonfano));
  CHECK(!weak_order_leq(nonfano, fano));
  CHECK(!is_isomorphic(fano, nonfano).has_value());
}

TEST_CASE("catalog sizes") {
  CHECK(catalog::k4().basis_count() == 16);
  CHECK(catalog::k4().circuits().size() == 7);
  CHECK(catalog::q6().circuits().size() == 11);
  CHECK(catalog::r6().circuits().size() == 11);
  CHECK(catalog::p6().circuits().size() == 13);
  Matroid ag = catalog::ag32();
  CHECK(ag.size() == 8);
  CHECK(ag.rank() == 4);
  CHECK(ag.circuits().size() == 14);
  for (set64 c : ag.circuits().members()) CHECK(bits::count(c) == 4);
  Matroid ma = catalog::by_name("MatrixA");
  CHECK(ma.rank() == 3);
  CHECK(ma.circuits().size() == 12);
  CHECK(ma.dual().circuits().size() == 7);
  CHECK(catalog::ternary_dowling3().size() == 9);
  CHECK(catalog::ternary_dowling3().rank() == 3);
  CHECK(catalog::by_name("U(2,4)").basis_count() == 6);
  CHECK_THROWS_AS(catalog::by_name("NoSuchThing"), error);
}

TEST_CASE("matrix matroids") {
  GFMatrix id3(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  Matroid m = Matroid::from_matrix(id3);
  CHECK(m.basis_count() == 1);
  CHECK(m.rank() == 3);

  GFMatrix zero_col(2, {{1, 0, 0}, {0, 1, 0}});
  Matroid z = Matroid::from_matrix(zero_col);
  CHECK(z.is_loop(2));

  // deleting a column deletes the element: minors agree on the rest
  GFMatrix a = catalog::matrix_a();
  Matroid full = Matroid::from_matrix(a);
  GFMatrix smaller(2, 3, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 6; ++j) smaller.at(i, j) = a.at(i, j);
  Matroid deleted = Matroid::from_matrix(smaller);
  for (set64 s = 0; s < bits::full(6); ++s) CHECK(deleted.rank_of(s) == full.rank_of(s));
}

TEST_CASE("circuit vectors") {
  // over GF(2) the vector is the characteristic vector
  GFMatrix f = catalog::fano_matrix(2);
  Matroid fano = catalog::fano();
  set64 line = fano.circuits().members()[0];
  CircuitVector v = circuit_vector(f, line);
  for (int e = 0; e < 7; ++e) CHECK((v.coefficients[static_cast<std::size_t>(e)] != 0) == bits::contains(line, e));

  GFMatrix g3(3, {{1, 0, 1}, {0, 1, 1}});
  CircuitVector w = circuit_vector(g3, bits::from_elements({0, 1, 2}));
  CHECK(w.coefficients == std::vector<int>{1, 1, 2});
  CHECK_THROWS_AS(circuit_vector(g3, bits::from_elements({0, 1})), error);
}

TEST_CASE("single-circuit derived matroid is a free point") {
  GFMatrix g(2, {{1, 0}, {0, 1}, {0, 0}});
  GFMatrix two_parallel(2, {{1, 1}});
  Matroid derived = linear_derived_matroid(two_parallel);
  CHECK(derived.size() == 1);
  CHECK(derived.rank() == 1);
}

TEST_CASE("isomorphism finds a permutation when one exists") {
  Matroid fano = catalog::fano();
  auto id = is_isomorphic(fano, fano);
  REQUIRE(id.has_value());
  // relabel and recover
  std::vector<int> perm = {3, 0, 6, 1, 5, 2, 4};
  std::vector<set64> relabeled;
  for (set64 b : fano.bases()) {
    set64 t = 0;
    for (int e : bits::elements(b)) t = bits::with(t, perm[static_cast<std::size_t>(e)]);
    relabeled.push_back(t);
  }
  Matroid shuffled = Matroid::from_bases(7, relabeled);
  auto found = is_isomorphic(fano, shuffled);
  REQUIRE(found.has_value());
  for (set64 b : fano.bases()) {
    set64 t = 0;
    for (int e : bits::elements(b)) t = bits::with(t, (*found)[static_cast<std::size_t>(e)]);
    CHECK(shuffled.is_basis(t));
  }
}

TEST_CASE("simplification keeps one point per parallel class") {
  Matroid ma = catalog::by_name("MatrixA");  // columns 5 and 6 coincide
  auto [simple, reps] = ma.simplify();
  CHECK(simple.size() == 6);
  CHECK(simple.rank() == 3);
  CHECK(reps.size() == 6);
}
