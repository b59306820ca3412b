#ifndef ADJOINTFORGE_GF_HPP
#define ADJOINTFORGE_GF_HPP

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "small_set.hpp"

// Dense linear algebra over a prime field GF(p), sized for column counts
// up to 64.  Used for linear matroids and their derived representations.

namespace adjointforge {

class GFMatrix {
 public:
  GFMatrix() : p_(2), rows_(0), cols_(0) {}
  GFMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {
    require(is_prime(p), errc::invalid_argument, "field order must be prime");
    require(cols <= 64, errc::invalid_argument, "at most 64 columns supported");
  }
  GFMatrix(int p, std::vector<std::vector<int>> rows_in) : GFMatrix(p, static_cast<int>(rows_in.size()),
                                                                    rows_in.empty() ? 0 : static_cast<int>(rows_in[0].size())) {
    for (int i = 0; i < rows_; ++i) {
      require(static_cast<int>(rows_in[i].size()) == cols_, errc::invalid_argument, "ragged matrix");
      for (int j = 0; j < cols_; ++j) at(i, j) = mod(rows_in[i][j]);
    }
  }

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  int at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  int mod(long long v) const {
    long long r = v % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }

  int inv(int v) const {
    // Fermat: v^(p-2) mod p.
    long long base = v % p_, acc = 1;
    int e = p_ - 2;
    while (e > 0) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<int>(acc);
  }

  // Rank of the submatrix consisting of the selected columns.
  int column_rank(set64 cols_mask) const {
    std::vector<int> sel = bits::elements(cols_mask);
    std::vector<std::vector<int>> m(static_cast<std::size_t>(rows_), std::vector<int>(sel.size()));
    for (int i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < sel.size(); ++j) m[i][j] = at(i, sel[j]);
    return eliminate(m);
  }

  int rank() const { return column_rank(bits::full(cols_)); }

  // A nonzero kernel vector of the selected columns, or empty if the columns
  // are independent.  Entries are indexed by position within the selection.
  std::vector<int> kernel_vector(set64 cols_mask) const {
    std::vector<int> sel = bits::elements(cols_mask);
    int k = static_cast<int>(sel.size());
    std::vector<std::vector<int>> m(static_cast<std::size_t>(rows_), std::vector<int>(k));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < k; ++j) m[i][j] = at(i, sel[j]);
    // Reduced echelon form, tracking pivot columns.
    std::vector<int> pivot_of_col(k, -1);
    int r = 0;
    for (int c = 0; c < k && r < rows_; ++c) {
      int pr = -1;
      for (int i = r; i < rows_; ++i)
        if (m[i][c] != 0) {
          pr = i;
          break;
        }
      if (pr < 0) continue;
      std::swap(m[r], m[pr]);
      int iv = inv(m[r][c]);
      for (int j = c; j < k; ++j) m[r][j] = mod(static_cast<long long>(m[r][j]) * iv);
      for (int i = 0; i < rows_; ++i) {
        if (i == r || m[i][c] == 0) continue;
        int f = m[i][c];
        for (int j = c; j < k; ++j) m[i][j] = mod(m[i][j] - static_cast<long long>(f) * m[r][j]);
      }
      pivot_of_col[c] = r;
      ++r;
    }
    int free_col = -1;
    for (int c = 0; c < k; ++c)
      if (pivot_of_col[c] < 0) {
        free_col = c;
        break;
      }
    if (free_col < 0) return {};
    std::vector<int> v(k, 0);
    v[free_col] = 1;
    for (int c = 0; c < k; ++c)
      if (pivot_of_col[c] >= 0) v[c] = mod(-m[pivot_of_col[c]][free_col]);
    return v;
  }

 private:
  static bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  int eliminate(std::vector<std::vector<int>>& m) const {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
      int pr = -1;
      for (int i = r; i < rows; ++i)
        if (m[i][c] != 0) {
          pr = i;
          break;
        }
      if (pr < 0) continue;
      std::swap(m[r], m[pr]);
      int iv = inv(m[r][c]);
      for (int j = c; j < cols; ++j) m[r][j] = mod(static_cast<long long>(m[r][j]) * iv);
      for (int i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        int f = m[i][c];
        for (int j = c; j < cols; ++j) m[i][j] = mod(m[i][j] - static_cast<long long>(f) * m[r][j]);
      }
      ++r;
    }
    return r;
  }

  int p_;
  int rows_, cols_;
  std::vector<int> a_;
};

}  // namespace adjointforge

#endif
