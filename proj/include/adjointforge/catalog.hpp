#ifndef ADJOINTFORGE_CATALOG_HPP
#define ADJOINTFORGE_CATALOG_HPP

#include <cctype>
#include <string>
#include <vector>

#include "matroid.hpp"

// Named matroids with fixed labelings.
//
//   U(k,n)          uniform, rank k on {0,...,n-1}
//   K4              graphic matroid of the complete graph on 4 vertices;
//                   edges ordered 01,02,03,12,13,23
//   Fano            columns 1..7 in binary over GF(2)
//   NonFano         the same columns over GF(3)
//   FanoDual, NonFanoDual
//   Q6              rank 3 on 6: two 3-point lines sharing a point
//                   ({0,1,2} and {2,3,4}), element 5 free
//   R6              rank 3 on 6: two disjoint 3-point lines
//                   ({0,1,2} and {3,4,5})
//   P6              rank 3 on 6: single 3-point line {0,1,2}
//   AG32            affine geometry AG(3,2): columns (1,x,y,z) over GF(2)
//   MatrixA         the 3x7 GF(2) column matroid used by the rank-4
//                   verification instances (has one parallel pair)
//   MatrixADual
//   TernaryDowling3 rank-3 Dowling geometry over the 2-element group,
//                   as the GF(3) columns e_i and e_i ± e_j (i<j)

namespace adjointforge {
namespace catalog {

inline Matroid uniform(int k, int n) {
  require(0 <= k && k <= n && n <= 64, errc::invalid_argument, "bad uniform parameters");
  std::vector<set64> bases;
  bits::for_each_ksubset(n, k, [&](set64 s) { bases.push_back(s); });
  return Matroid::from_bases(n, std::move(bases));
}

inline Matroid k4() {
  // Edge e = {u,v}; a 3-set of edges is a basis iff it spans all 4 vertices
  // without a cycle.
  const int us[6] = {0, 0, 0, 1, 1, 2};
  const int vs[6] = {1, 2, 3, 2, 3, 3};
  std::vector<set64> bases;
  bits::for_each_ksubset(6, 3, [&](set64 s) {
    int parent[4] = {0, 1, 2, 3};
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    bool acyclic = true;
    for (int e : bits::elements(s)) {
      int a = find(us[e]), b = find(vs[e]);
      if (a == b) {
        acyclic = false;
        break;
      }
      parent[a] = b;
    }
    if (acyclic) bases.push_back(s);
  });
  return Matroid::from_bases(6, std::move(bases));
}

inline GFMatrix fano_matrix(int p) {
  GFMatrix a(p, 3, 7);
  for (int j = 0; j < 7; ++j) {
    int v = j + 1;
    a.at(0, j) = (v >> 2) & 1;
    a.at(1, j) = (v >> 1) & 1;
    a.at(2, j) = v & 1;
  }
  return a;
}

inline Matroid fano() { return Matroid::from_matrix(fano_matrix(2)); }
inline Matroid non_fano() { return Matroid::from_matrix(fano_matrix(3)); }

inline Matroid rank3_with_lines(std::vector<set64> lines) {
  std::vector<set64> bases;
  bits::for_each_ksubset(6, 3, [&](set64 s) {
    for (set64 l : lines)
      if (s == l) return;
    bases.push_back(s);
  });
  return Matroid::from_bases(6, std::move(bases));
}

inline Matroid q6() { return rank3_with_lines({bits::from_elements({0, 1, 2}), bits::from_elements({2, 3, 4})}); }
inline Matroid r6() { return rank3_with_lines({bits::from_elements({0, 1, 2}), bits::from_elements({3, 4, 5})}); }
inline Matroid p6() { return rank3_with_lines({bits::from_elements({0, 1, 2})}); }

inline Matroid ag32() {
  GFMatrix a(2, 4, 8);
  for (int j = 0; j < 8; ++j) {
    a.at(0, j) = 1;
    a.at(1, j) = (j >> 2) & 1;
    a.at(2, j) = (j >> 1) & 1;
    a.at(3, j) = j & 1;
  }
  return Matroid::from_matrix(a);
}

inline GFMatrix matrix_a() {
  return GFMatrix(2, {{1, 0, 0, 1, 1, 1, 1},
                      {0, 1, 1, 1, 0, 1, 1},
                      {0, 0, 1, 0, 1, 1, 1}});
}

inline Matroid ternary_dowling3() {
  GFMatrix a(3, {{1, 0, 0, 1, 1, 1, 1, 0, 0},
                 {0, 1, 0, 1, 2, 0, 0, 1, 1},
                 {0, 0, 1, 0, 0, 1, 2, 1, 2}});
  return Matroid::from_matrix(a);
}

/// Resolves a catalog name ("K4", "U(2,4)", ...); throws UnknownName.
inline Matroid by_name(const std::string& name) {
  if (name == "K4") return k4();
  if (name == "Fano") return fano();
  if (name == "FanoDual") return fano().dual();
  if (name == "NonFano") return non_fano();
  if (name == "NonFanoDual") return non_fano().dual();
  if (name == "Q6") return q6();
  if (name == "R6") return r6();
  if (name == "P6") return p6();
  if (name == "AG32") return ag32();
  if (name == "MatrixA") return Matroid::from_matrix(matrix_a());
  if (name == "MatrixADual") return Matroid::from_matrix(matrix_a()).dual();
  if (name == "TernaryDowling3") return ternary_dowling3();
  if (name.size() > 2 && name[0] == 'U' && name[1] == '(') {
    std::size_t comma = name.find(',');
    std::size_t close = name.find(')');
    if (comma != std::string::npos && close == name.size() - 1 && comma > 2) {
      try {
        int k = std::stoi(name.substr(2, comma - 2));
        int n = std::stoi(name.substr(comma + 1, close - comma - 1));
        return uniform(k, n);
      } catch (const std::exception&) {
        // fall through to UnknownName
      }
    }
  }
  fail(errc::unknown_name, "no catalog matroid named '" + name + "'");
}

inline std::vector<std::string> names() {
  return {"K4",  "Fano", "FanoDual", "NonFano", "NonFanoDual",     "Q6",    "R6",
          "P6",  "AG32", "MatrixA",  "MatrixADual", "TernaryDowling3", "U(k,n)"};
}

}  // namespace catalog
}  // namespace adjointforge

#endif
