#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace adjointforge;
using testsupport::boolean_lattice;
using testsupport::pruned_u46_lattice;

TEST_CASE("boolean lattice on 3 atoms") {
  FiniteLattice b3 = boolean_lattice(3);
  CHECK(b3.size() == 8);
  CHECK(b3.rank() == 3);
  CHECK(b3.atom_count() == 3);
  CHECK(b3.is_atomic());
  CHECK(b3.is_coatomic());
  CHECK(b3.is_geometric());
  CHECK(b3.is_modular());
}

TEST_CASE("pentagon is not graded") {
  // 0 < a < c < top, 0 < b < top
  std::vector<std::pair<int, int>> pairs = {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
  CHECK_THROWS_AS(FiniteLattice::build(5, pairs), error);
  try {
    FiniteLattice::build(5, pairs);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_graded);
  }
}

TEST_CASE("three-element antichain with bounds is a lattice, unbounded is not") {
  // diamond with 3 midpoints: fine
  std::vector<std::pair<int, int>> diamond = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
  FiniteLattice l = FiniteLattice::build(5, diamond);
  CHECK(l.rank() == 2);
  CHECK(l.atom_count() == 3);

  // two maximal elements: no bounds
  std::vector<std::pair<int, int>> vee = {{0, 1}, {0, 2}};
  CHECK_THROWS_AS(FiniteLattice::build(3, vee), error);

  // bounded but a pair with two incomparable minimal upper bounds
  //   0 < a,b ; a,b < c,d ; c,d < 1
  std::vector<std::pair<int, int>> no_join = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
  CHECK_THROWS_AS(FiniteLattice::build(6, no_join), error);
}

TEST_CASE("join and meet agree with the order") {
  FiniteLattice b3 = boolean_lattice(3);
  for (int x = 0; x < b3.size(); ++x)
    for (int y = 0; y < b3.size(); ++y) {
      CHECK(b3.leq(x, b3.join(x, y)));
      CHECK(b3.leq(b3.meet(x, y), x));
      CHECK(b3.join(x, y) == b3.join(y, x));
      CHECK(b3.meet(x, y) == b3.meet(y, x));
      CHECK(b3.join(x, x) == x);
      for (int z = 0; z < b3.size(); ++z) CHECK(b3.join(b3.join(x, y), z) == b3.join(x, b3.join(y, z)));
    }
}

TEST_CASE("pruned rank-4 lattice is a valid atomic graded lattice") {
  FlatLattice fl = pruned_u46_lattice();
  CHECK(fl.lattice.size() == 38);  // 43 flats minus 5
  CHECK(fl.lattice.rank() == 4);
  CHECK(fl.lattice.atom_count() == 6);
  CHECK(fl.lattice.is_atomic());
}

TEST_CASE("restriction, contraction, truncation, dual") {
  FiniteLattice b3 = boolean_lattice(3);
  int atom = b3.atoms()[0];

  LatticeMinor r = restrict_to(b3, atom);
  CHECK(r.lattice.size() == 2);
  CHECK(r.lattice.rank() == 1);

  LatticeMinor c = contract_at(b3, atom);
  CHECK(c.lattice.size() == 4);
  CHECK(c.lattice.rank() == 2);
  CHECK(c.lattice.atom_count() == 2);

  LatticeMinor c0 = contract_at(b3, b3.bottom());
  CHECK(c0.lattice == b3);

  LatticeMinor t = truncate_to(b3, 2);
  CHECK(t.lattice.rank() == 2);
  CHECK(t.lattice.atom_count() == 3);
  FlatLattice u23 = lattice_of_flats(catalog::uniform(2, 3));
  CHECK(t.lattice == u23.lattice);

  CHECK(truncate_to(b3, b3.rank()).lattice == b3);
  CHECK(restrict_to(b3, b3.top()).lattice == b3);

  LatticeMinor d = dual_lattice(b3);
  CHECK(d.lattice == b3);  // self-dual
  LatticeMinor dd = dual_lattice(d.lattice);
  CHECK(dd.lattice == b3);

  CHECK_THROWS_AS(restrict_to(b3, b3.bottom()), error);
  CHECK_THROWS_AS(contract_at(b3, b3.top()), error);
  CHECK_THROWS_AS(truncate_to(b3, 5), error);
}

TEST_CASE("dual atoms are the coatoms") {
  FlatLattice fl = lattice_of_flats(catalog::q6());
  LatticeMinor d = dual_lattice(fl.lattice);
  std::vector<int> coatoms = fl.lattice.coatoms();
  std::vector<int> datoms;
  for (int a : d.lattice.atoms()) datoms.push_back(d.parent_element[static_cast<std::size_t>(a)]);
  std::sort(datoms.begin(), datoms.end());
  std::sort(coatoms.begin(), coatoms.end());
  CHECK(datoms == coatoms);
  for (int x = 0; x < d.lattice.size(); ++x)
    CHECK(d.lattice.rank_of(x) == fl.lattice.rank() - fl.lattice.rank_of(d.parent_element[static_cast<std::size_t>(x)]));
}

TEST_CASE("restriction of the pruned lattice at a rank-2 flat is a diamond") {
  FlatLattice fl = pruned_u46_lattice();
  int x = -1;
  for (int e = 0; e < fl.lattice.size(); ++e)
    if (fl.flats[static_cast<std::size_t>(e)] == bits::from_elements({0, 1})) x = e;
  REQUIRE(x >= 0);
  LatticeMinor r = restrict_to(fl.lattice, x);
  CHECK(r.lattice.size() == 4);
  CHECK(r.lattice.rank() == 2);
  CHECK(r.lattice.atom_count() == 2);
}

TEST_CASE("lattice of flats") {
  FlatLattice two_chain = lattice_of_flats(catalog::uniform(1, 1));
  CHECK(two_chain.lattice.size() == 2);

  FlatLattice u23 = lattice_of_flats(catalog::uniform(2, 3));
  CHECK(u23.lattice.size() == 5);
  CHECK(u23.lattice.atom_count() == 3);

  FlatLattice fano = lattice_of_flats(catalog::fano());
  CHECK(fano.lattice.size() == 16);
  CHECK(fano.lattice.atom_count() == 7);
  CHECK(fano.lattice.coatoms().size() == 7);
  CHECK(fano.lattice.is_geometric());
  CHECK(fano.lattice.is_modular());

  // semimodular inequality holds on every flats lattice we build
  for (const char* name : {"K4", "Q6", "R6", "MatrixA"}) {
    FlatLattice fl = lattice_of_flats(catalog::by_name(name));
    CHECK(fl.lattice.is_geometric());
  }
}

TEST_CASE("truncating flats of U(4,6) to level 3 gives flats of U(3,6)") {
  // oracle: compare the flat label sets directly
  FlatLattice u46 = lattice_of_flats(catalog::uniform(4, 6));
  LatticeMinor t = truncate_to(u46.lattice, 3);
  FlatLattice u36 = lattice_of_flats(catalog::uniform(3, 6));
  REQUIRE(t.lattice.size() == u36.lattice.size());
  // match by flat labels: every kept element's label must appear in u36
  std::vector<set64> kept, expected;
  for (int x = 0; x < t.lattice.size(); ++x) {
    if (x == t.lattice.top()) continue;
    kept.push_back(u46.flats[static_cast<std::size_t>(t.parent_element[static_cast<std::size_t>(x)])]);
  }
  for (int x = 0; x < u36.lattice.size(); ++x) {
    if (x == u36.lattice.top()) continue;
    expected.push_back(u36.flats[static_cast<std::size_t>(x)]);
  }
  std::sort(kept.begin(), kept.end());
  std::sort(expected.begin(), expected.end());
  CHECK(kept == expected);
  CHECK(t.lattice == u36.lattice);
}

TEST_CASE("canonical element order is stable under input shuffling") {
  // build B_2 twice with different input index orders; canonical forms match
  std::vector<std::pair<int, int>> p1 = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  std::vector<std::pair<int, int>> p2 = {{3, 2}, {3, 1}, {2, 0}, {1, 0}};
  FiniteLattice a = FiniteLattice::build(4, p1);
  FiniteLattice b = FiniteLattice::build(4, p2);
  CHECK(a.rank() == b.rank());
  CHECK(a.cover_pairs() == b.cover_pairs());
}
