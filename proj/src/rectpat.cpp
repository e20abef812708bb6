#include "latinpat/rectpat.hpp"

#include <algorithm>

namespace latinpat {

namespace {

int sign(int x) { return (x > 0) - (x < 0); }

// Column-extension search for one fixed row set.
class ColumnMatcher {
 public:
  ColumnMatcher(const LatinSquare& s, const LatinRectangle& pattern, const std::vector<int>& rows)
      : s_(s), pattern_(pattern), rows_(rows) {}

  std::optional<std::vector<int>> run() {
    std::vector<int> cols;
    if (extend(cols, 1)) return cols;
    return std::nullopt;
  }

 private:
  int host(int a, int t, const std::vector<int>& cols) const { return s_.at(rows_[static_cast<std::size_t>(a)], cols[static_cast<std::size_t>(t)]); }

  // Checks the newest column against itself and every earlier column.
  bool consistent(const std::vector<int>& cols) const {
    const int t = static_cast<int>(cols.size()) - 1;
    const int p = pattern_.rows();
    for (int a = 0; a < p; ++a) {
      const int hv = host(a, t, cols);
      const int pv = pattern_.at(a + 1, t + 1);
      for (int t2 = 0; t2 <= t; ++t2) {
        for (int b = 0; b < p; ++b) {
          if (t2 == t && b >= a) break;
          if (sign(hv - host(b, t2, cols)) != sign(pv - pattern_.at(b + 1, t2 + 1))) return false;
        }
      }
    }
    return true;
  }

  bool extend(std::vector<int>& cols, int from) {
    const int q = pattern_.cols();
    const int t = static_cast<int>(cols.size());
    if (t == q) return true;
    for (int c = from; c <= s_.order() - (q - t - 1); ++c) {
      cols.push_back(c);
      if (consistent(cols) && extend(cols, c + 1)) return true;
      cols.pop_back();
    }
    return false;
  }

  const LatinSquare& s_;
  const LatinRectangle& pattern_;
  const std::vector<int>& rows_;
};

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
  if (i < 0) return false;
  ++idx[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

std::vector<int> rank_pattern(std::span<const int> cells) {
  std::vector<int> distinct(cells.begin(), cells.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> out;
  out.reserve(cells.size());
  for (int v : cells) {
    out.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()) + 1);
  }
  return out;
}

bool rect_order_isomorphic(const LatinRectangle& a, const LatinRectangle& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && rank_pattern(a.cells()) == rank_pattern(b.cells());
}

LatinRectangle sub_rectangle(const LatinSquare& s, const RectWitness& at) {
  std::vector<int> cells;
  for (int r : at.rows) {
    for (int c : at.cols) cells.push_back(s.at(r, c));
  }
  return LatinRectangle(static_cast<int>(at.rows.size()), static_cast<int>(at.cols.size()), s.order(),
                        std::move(cells));
}

std::optional<RectWitness> contains_rectangle(const LatinSquare& s, const LatinRectangle& pattern) {
  const int n = s.order();
  const int p = pattern.rows();
  const int q = pattern.cols();
  if (p > n || q > n) {
    throw std::invalid_argument("pattern of size " + std::to_string(p) + "x" + std::to_string(q) +
                                " does not fit in an order-" + std::to_string(n) + " square");
  }
  std::vector<int> rows(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) rows[static_cast<std::size_t>(i)] = i + 1;
  do {
    ColumnMatcher matcher(s, pattern, rows);
    if (auto cols = matcher.run()) return RectWitness{rows, std::move(*cols)};
  } while (next_combination(rows, n));
  return std::nullopt;
}

LatinRectangle rotate_rect_90(const LatinRectangle& r) {
  const int p = r.rows();
  const int q = r.cols();
  std::vector<int> cells(static_cast<std::size_t>(p * q));
  // new (j, p+1-i) <- old (i, j); the result is q x p
  for (int i = 1; i <= p; ++i) {
    for (int j = 1; j <= q; ++j) {
      cells[static_cast<std::size_t>((j - 1) * p + (p - i))] = r.at(i, j);
    }
  }
  return LatinRectangle(q, p, r.alphabet_bound(), std::move(cells));
}

BigInt count_rectangle_avoiders(int n, const std::vector<LatinRectangle>& patterns, const EnumerationOptions& options) {
  const auto tally = fold_squares(
      n, AvoidanceSpec{}, options, std::uint64_t{0},
      [&](std::uint64_t& acc, const LatinSquare& s) {
        for (const auto& r : patterns) {
          if (r.rows() <= n && r.cols() <= n && contains_rectangle(s, r)) return;
        }
        ++acc;
      },
      [](std::uint64_t& total, std::uint64_t part) { total += part; });
  return BigInt(tally);
}

}  // namespace latinpat
