#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latinpat/perm.hpp"

namespace latinpat {

/// Independent pattern sets for rows, columns and symbol permutations.
/// Avoiding pi in the usual sense is rows = cols = {pi}, symbols empty.
struct AvoidanceSpec {
  std::vector<Permutation> rows;
  std::vector<Permutation> cols;
  std::vector<Permutation> symbols;

  static AvoidanceSpec lines(const Permutation& p) { return {{p}, {p}, {}}; }
  static AvoidanceSpec columns_only(const Permutation& p) { return {{}, {p}, {}}; }
  static AvoidanceSpec rows_only(const Permutation& p) { return {{p}, {}, {}}; }

  bool empty() const { return rows.empty() && cols.empty() && symbols.empty(); }

  /// Sorted, de-duplicated copy; two specs with the same canonical form
  /// select the same squares.
  AvoidanceSpec canonical() const;
  /// "rows=123;cols=123;symbols=" on the canonical form.
  std::string digest() const;

  friend bool operator==(const AvoidanceSpec&, const AvoidanceSpec&) = default;
};

/// An order-n Latin square over symbols 1..n, stored row-major. The
/// constructor validates the Latin property eagerly.
class LatinSquare {
 public:
  LatinSquare(int order, std::vector<int> cells);
  explicit LatinSquare(const std::vector<std::vector<int>>& rows);

  int order() const { return order_; }
  /// 1-based row and column.
  int at(int row, int col) const {
    return cells_[static_cast<std::size_t>((row - 1) * order_ + (col - 1))];
  }
  std::span<const int> cells() const { return cells_; }
  std::span<const int> row(int r) const {
    return std::span<const int>(cells_).subspan(static_cast<std::size_t>((r - 1) * order_),
                                                static_cast<std::size_t>(order_));
  }
  std::vector<int> column(int c) const;
  /// Columns of the rows where symbol k sits, read top to bottom.
  std::vector<int> symbol_positions(int k) const;
  std::vector<std::vector<int>> rows() const;

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;
  friend auto operator<=>(const LatinSquare&, const LatinSquare&) = default;

 private:
  int order_;
  std::vector<int> cells_;
};

/// p x q array with entries in 1..alphabet_bound and no repeats within any
/// row or column.
class LatinRectangle {
 public:
  LatinRectangle(int rows, int cols, int alphabet_bound, std::vector<int> cells);
  /// alphabet_bound defaults to the largest entry.
  explicit LatinRectangle(const std::vector<std::vector<int>>& grid, int alphabet_bound = 0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int alphabet_bound() const { return alphabet_bound_; }
  int at(int row, int col) const {
    return cells_[static_cast<std::size_t>((row - 1) * cols_ + (col - 1))];
  }
  std::span<const int> cells() const { return cells_; }
  std::vector<std::vector<int>> grid() const;

  friend bool operator==(const LatinRectangle&, const LatinRectangle&) = default;

 private:
  int rows_;
  int cols_;
  int alphabet_bound_;
  std::vector<int> cells_;
};

std::vector<Permutation> row_permutations(const LatinSquare& s);
std::vector<Permutation> column_permutations(const LatinSquare& s);
/// Symbol k gives the permutation i -> j where cell (i, j) holds k.
std::vector<Permutation> symbol_permutations(const LatinSquare& s);

/// Replaces every entry e by rho(e).
LatinSquare relabel(const LatinSquare& s, const Permutation& rho);
LatinSquare rotate180(const LatinSquare& s);
LatinSquare reflect_vertical(const LatinSquare& s);
LatinSquare reflect_horizontal(const LatinSquare& s);
LatinSquare transpose(const LatinSquare& s);

bool avoids_spec(const LatinSquare& s, const AvoidanceSpec& spec);
/// Maximum longest_monotone over all rows and columns.
int max_monotone(const LatinSquare& s);

/// Whitespace-separated integers, one row per line. Throws
/// std::invalid_argument naming the offending row or column.
LatinSquare parse_square(std::string_view text);
std::string serialize_square(const LatinSquare& s);

LatinRectangle parse_rectangle(std::string_view text, int alphabet_bound = 0);
std::string serialize_rectangle(const LatinRectangle& r);

}  // namespace latinpat
