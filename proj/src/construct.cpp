#include "latinpat/construct.hpp"

#include <algorithm>
#include <stdexcept>

namespace latinpat {

namespace {

void require_s3(const Permutation& p) {
  if (p.size() != 3) {
    throw std::invalid_argument("expected a pattern of length 3, got " + p.compact());
  }
}

// Partial square used by the column-by-column completion.
class ColumnFiller {
 public:
  ColumnFiller(const Permutation& top, const Permutation& pattern)
      : n_(top.size()), matcher_(pattern), cells_(static_cast<std::size_t>(n_ * n_), 0) {
    for (int c = 0; c < n_; ++c) cells_[static_cast<std::size_t>(c)] = top.entries()[static_cast<std::size_t>(c)];
  }

  // Fills column c with the only arrangement of the missing symbols that
  // avoids the pattern and repeats nothing in any row.
  void force_column(int c) {
    std::vector<int> column{cell(0, c)};
    std::vector<int> found;
    int solutions = 0;
    search(c, column, found, solutions);
    if (solutions != 1) {
      throw std::logic_error("column completion is not forced: " + std::to_string(solutions) +
                             " candidates for the column headed by " + std::to_string(cell(0, c)));
    }
    for (int r = 1; r < n_; ++r) cell(r, c) = found[static_cast<std::size_t>(r)];
  }

  // Every row is missing exactly one symbol once all other columns are full.
  void fill_by_elimination(int c) {
    for (int r = 1; r < n_; ++r) {
      std::vector<bool> used(static_cast<std::size_t>(n_) + 1, false);
      for (int j = 0; j < n_; ++j) {
        if (j != c) used[static_cast<std::size_t>(cell(r, j))] = true;
      }
      for (int v = 1; v <= n_; ++v) {
        if (!used[static_cast<std::size_t>(v)]) cell(r, c) = v;
      }
    }
    std::vector<int> column;
    for (int r = 0; r < n_; ++r) column.push_back(cell(r, c));
    if (matcher_.occurs_in(column)) {
      throw std::logic_error("column completed by elimination contains the pattern");
    }
  }

  LatinSquare square() const { return LatinSquare(n_, cells_); }

 private:
  int& cell(int r, int c) { return cells_[static_cast<std::size_t>(r * n_ + c)]; }
  int cell(int r, int c) const { return cells_[static_cast<std::size_t>(r * n_ + c)]; }

  void search(int c, std::vector<int>& column, std::vector<int>& found, int& solutions) {
    const int r = static_cast<int>(column.size());
    if (r == n_) {
      if (solutions++ == 0) found = column;
      return;
    }
    for (int v = 1; v <= n_ && solutions < 2; ++v) {
      if (std::find(column.begin(), column.end(), v) != column.end()) continue;
      bool row_clash = false;
      for (int j = 0; j < n_ && !row_clash; ++j) row_clash = (j != c && cell(r, j) == v);
      if (row_clash) continue;
      column.push_back(v);
      if (!matcher_.occurs_ending_at_last(column)) search(c, column, found, solutions);
      column.pop_back();
    }
  }

  int n_;
  PatternMatcher matcher_;
  std::vector<int> cells_;
};

}  // namespace

bool is_even_s3_pattern(const Permutation& p) {
  require_s3(p);
  const auto s = p.compact();
  return s == "123" || s == "231" || s == "312";
}

bool anchors_bottom_row(const Permutation& p) {
  require_s3(p);
  const auto s = p.compact();
  return s == "231" || s == "213";
}

LatinSquare complete_columns_avoiding(const Permutation& anchor, const Permutation& p) {
  require_s3(p);
  const int n = anchor.size();
  if (anchors_bottom_row(p)) {
    // Read bottom-up, the columns must avoid reverse(p), which is top-anchored.
    return reflect_horizontal(complete_columns_avoiding(anchor, reverse(p)));
  }
  if (n == 1) return LatinSquare(1, {1});

  // 123 and 132 start from the column headed by 1; 312 and 321 from n.
  const bool ascending = p(1) == 1;
  std::vector<int> column_of(static_cast<std::size_t>(n) + 1);
  for (int c = 0; c < n; ++c) column_of[static_cast<std::size_t>(anchor(c + 1))] = c;

  ColumnFiller filler(anchor, p);
  for (int step = 0; step < n - 1; ++step) {
    const int symbol = ascending ? 1 + step : n - step;
    filler.force_column(column_of[static_cast<std::size_t>(symbol)]);
  }
  filler.fill_by_elimination(column_of[static_cast<std::size_t>(ascending ? n : 1)]);
  return filler.square();
}

LatinSquare construct_s3_avoider(int n, const Permutation& p, int start) {
  require_s3(p);
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (start < 1 || start > n) {
    throw std::invalid_argument("start symbol " + std::to_string(start) + " outside 1.." + std::to_string(n));
  }
  const int step = is_even_s3_pattern(p) ? -1 : 1;
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(n * n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int offset = ((step * (r + c)) % n + n) % n;
      cells.push_back((start - 1 + offset) % n + 1);
    }
  }
  return LatinSquare(n, std::move(cells));
}

std::vector<LatinSquare> all_s3_avoiders(int n, const Permutation& p) {
  std::vector<LatinSquare> out;
  for (int i = 1; i <= n; ++i) out.push_back(construct_s3_avoider(n, p, i));
  return out;
}

LatinSquare circulant_square(const Permutation& base) {
  const int m = base.size();
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(m * m));
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) cells.push_back(base((r + c) % m + 1));
  }
  return LatinSquare(m, std::move(cells));
}

LatinSquare connolly_square(int root) {
  if (root < 1 || root > kMaxConnollyRoot) {
    throw std::invalid_argument("root must lie in 1.." + std::to_string(kMaxConnollyRoot));
  }
  const long long order = static_cast<long long>(root) * root;
  std::vector<int> base;
  base.reserve(static_cast<std::size_t>(order));
  for (long long k = 1; k <= order; ++k) base.push_back(static_cast<int>((k * root) % (order + 1)));
  return circulant_square(Permutation(std::move(base)));
}

LatinSquare complement_map(const LatinSquare& s) { return relabel(s, Permutation::decreasing(s.order())); }

LatinSquare rotation_map(const LatinSquare& s) { return rotate180(s); }

LatinSquare full_length_relabel_map(const LatinSquare& s, const Permutation& from_pattern,
                                    const Permutation& to_pattern) {
  if (from_pattern.size() != s.order() || to_pattern.size() != s.order()) {
    throw std::invalid_argument("relabel map needs patterns of length equal to the order");
  }
  return relabel(s, compose(to_pattern, inverse(from_pattern)));
}

}  // namespace latinpat
