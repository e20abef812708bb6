#include "latinpat/square.hpp"

#include <algorithm>
#include <sstream>

namespace latinpat {

namespace {

std::vector<int> flatten(const std::vector<std::vector<int>>& grid, std::size_t width) {
  std::vector<int> cells;
  cells.reserve(grid.size() * width);
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (grid[r].size() != width) {
      throw std::invalid_argument("row " + std::to_string(r + 1) + " has " + std::to_string(grid[r].size()) +
                                  " entries, expected " + std::to_string(width));
    }
    cells.insert(cells.end(), grid[r].begin(), grid[r].end());
  }
  return cells;
}

// Checks range and no-repeat constraints on a rows x cols grid.
void check_latin(int rows, int cols, int bound, const std::vector<int>& cells) {
  if (cells.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    throw std::invalid_argument("grid has " + std::to_string(cells.size()) + " cells, expected " +
                                std::to_string(rows * cols));
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = cells[static_cast<std::size_t>(r * cols + c)];
      if (v < 1 || v > bound) {
        throw std::invalid_argument("entry " + std::to_string(v) + " at row " + std::to_string(r + 1) +
                                    ", column " + std::to_string(c + 1) + " is outside 1.." +
                                    std::to_string(bound));
      }
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(bound) + 1);
  for (int r = 0; r < rows; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int c = 0; c < cols; ++c) {
      const int v = cells[static_cast<std::size_t>(r * cols + c)];
      if (seen[static_cast<std::size_t>(v)]++) {
        throw std::invalid_argument("row " + std::to_string(r + 1) + " repeats symbol " + std::to_string(v));
      }
    }
  }
  for (int c = 0; c < cols; ++c) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int r = 0; r < rows; ++r) {
      const int v = cells[static_cast<std::size_t>(r * cols + c)];
      if (seen[static_cast<std::size_t>(v)]++) {
        throw std::invalid_argument("column " + std::to_string(c + 1) + " repeats symbol " +
                                    std::to_string(v));
      }
    }
  }
}

std::vector<std::vector<int>> parse_grid(std::string_view text) {
  std::vector<std::vector<int>> grid;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw std::invalid_argument("malformed entry '" + tok + "' on line " + std::to_string(line_no));
      }
      row.push_back(v);
    }
    if (!row.empty()) grid.push_back(std::move(row));
  }
  if (grid.empty()) throw std::invalid_argument("empty grid");
  return grid;
}

std::string serialize_cells(int rows, int cols, std::span<const int> cells) {
  std::string out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c) out += ' ';
      out += std::to_string(cells[static_cast<std::size_t>(r * cols + c)]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Permutation> canonical_set(std::vector<Permutation> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string join_compact(const std::vector<Permutation>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i].size() > 9 ? "[" + v[i].to_string() + "]" : v[i].compact();
  }
  return out;
}

}  // namespace

AvoidanceSpec AvoidanceSpec::canonical() const {
  return {canonical_set(rows), canonical_set(cols), canonical_set(symbols)};
}

std::string AvoidanceSpec::digest() const {
  const auto c = canonical();
  return "rows=" + join_compact(c.rows) + ";cols=" + join_compact(c.cols) + ";symbols=" + join_compact(c.symbols);
}

LatinSquare::LatinSquare(int order, std::vector<int> cells) : order_(order), cells_(std::move(cells)) {
  if (order_ < 1) throw std::invalid_argument("square order must be >= 1");
  check_latin(order_, order_, order_, cells_);
}

LatinSquare::LatinSquare(const std::vector<std::vector<int>>& rows)
    : LatinSquare(static_cast<int>(rows.size()), flatten(rows, rows.size())) {}

std::vector<int> LatinSquare::column(int c) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (int r = 1; r <= order_; ++r) out.push_back(at(r, c));
  return out;
}

std::vector<int> LatinSquare::symbol_positions(int k) const {
  std::vector<int> out(static_cast<std::size_t>(order_));
  for (int r = 1; r <= order_; ++r) {
    for (int c = 1; c <= order_; ++c) {
      if (at(r, c) == k) out[static_cast<std::size_t>(r - 1)] = c;
    }
  }
  return out;
}

std::vector<std::vector<int>> LatinSquare::rows() const {
  std::vector<std::vector<int>> out;
  for (int r = 1; r <= order_; ++r) out.emplace_back(row(r).begin(), row(r).end());
  return out;
}

LatinRectangle::LatinRectangle(int rows, int cols, int alphabet_bound, std::vector<int> cells)
    : rows_(rows), cols_(cols), alphabet_bound_(alphabet_bound), cells_(std::move(cells)) {
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("rectangle dimensions must be >= 1");
  if (alphabet_bound_ < 1) throw std::invalid_argument("alphabet bound must be >= 1");
  check_latin(rows_, cols_, alphabet_bound_, cells_);
}

namespace {
int max_entry(const std::vector<std::vector<int>>& grid) {
  int m = 0;
  for (const auto& row : grid) {
    for (int v : row) m = std::max(m, v);
  }
  return m;
}
}  // namespace

LatinRectangle::LatinRectangle(const std::vector<std::vector<int>>& grid, int alphabet_bound)
    : LatinRectangle(static_cast<int>(grid.size()), grid.empty() ? 0 : static_cast<int>(grid.front().size()),
                     alphabet_bound > 0 ? alphabet_bound : std::max(1, max_entry(grid)),
                     flatten(grid, grid.empty() ? 0 : grid.front().size())) {}

std::vector<std::vector<int>> LatinRectangle::grid() const {
  std::vector<std::vector<int>> out;
  for (int r = 0; r < rows_; ++r) {
    out.emplace_back(cells_.begin() + r * cols_, cells_.begin() + (r + 1) * cols_);
  }
  return out;
}

std::vector<Permutation> row_permutations(const LatinSquare& s) {
  std::vector<Permutation> out;
  for (int r = 1; r <= s.order(); ++r) out.emplace_back(std::vector<int>(s.row(r).begin(), s.row(r).end()));
  return out;
}

std::vector<Permutation> column_permutations(const LatinSquare& s) {
  std::vector<Permutation> out;
  for (int c = 1; c <= s.order(); ++c) out.emplace_back(s.column(c));
  return out;
}

std::vector<Permutation> symbol_permutations(const LatinSquare& s) {
  std::vector<Permutation> out;
  for (int k = 1; k <= s.order(); ++k) out.emplace_back(s.symbol_positions(k));
  return out;
}

LatinSquare relabel(const LatinSquare& s, const Permutation& rho) {
  if (rho.size() != s.order()) {
    throw std::invalid_argument("relabel: permutation length " + std::to_string(rho.size()) +
                                " does not match order " + std::to_string(s.order()));
  }
  std::vector<int> cells;
  cells.reserve(s.cells().size());
  for (int v : s.cells()) cells.push_back(rho(v));
  return LatinSquare(s.order(), std::move(cells));
}

LatinSquare rotate180(const LatinSquare& s) {
  std::vector<int> cells(s.cells().rbegin(), s.cells().rend());
  return LatinSquare(s.order(), std::move(cells));
}

LatinSquare reflect_vertical(const LatinSquare& s) {
  const int n = s.order();
  std::vector<int> cells;
  cells.reserve(s.cells().size());
  for (int r = 1; r <= n; ++r) {
    for (int c = n; c >= 1; --c) cells.push_back(s.at(r, c));
  }
  return LatinSquare(n, std::move(cells));
}

LatinSquare reflect_horizontal(const LatinSquare& s) {
  const int n = s.order();
  std::vector<int> cells;
  cells.reserve(s.cells().size());
  for (int r = n; r >= 1; --r) {
    for (int c = 1; c <= n; ++c) cells.push_back(s.at(r, c));
  }
  return LatinSquare(n, std::move(cells));
}

LatinSquare transpose(const LatinSquare& s) {
  const int n = s.order();
  std::vector<int> cells;
  cells.reserve(s.cells().size());
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) cells.push_back(s.at(c, r));
  }
  return LatinSquare(n, std::move(cells));
}

bool avoids_spec(const LatinSquare& s, const AvoidanceSpec& spec) {
  const int n = s.order();
  for (const auto& p : spec.rows) {
    const PatternMatcher m(p);
    for (int r = 1; r <= n; ++r) {
      if (m.occurs_in(s.row(r))) return false;
    }
  }
  for (const auto& p : spec.cols) {
    const PatternMatcher m(p);
    for (int c = 1; c <= n; ++c) {
      if (m.occurs_in(s.column(c))) return false;
    }
  }
  for (const auto& p : spec.symbols) {
    const PatternMatcher m(p);
    for (int k = 1; k <= n; ++k) {
      if (m.occurs_in(s.symbol_positions(k))) return false;
    }
  }
  return true;
}

int max_monotone(const LatinSquare& s) {
  int best = 0;
  for (int i = 1; i <= s.order(); ++i) {
    best = std::max(best, longest_monotone(s.row(i)));
    best = std::max(best, longest_monotone(s.column(i)));
  }
  return best;
}

LatinSquare parse_square(std::string_view text) {
  const auto grid = parse_grid(text);
  for (std::size_t r = 0; r < grid.size(); ++r) {
    if (grid[r].size() != grid.size()) {
      throw std::invalid_argument("row " + std::to_string(r + 1) + " has " + std::to_string(grid[r].size()) +
                                  " entries, expected " + std::to_string(grid.size()));
    }
  }
  return LatinSquare(grid);
}

std::string serialize_square(const LatinSquare& s) { return serialize_cells(s.order(), s.order(), s.cells()); }

LatinRectangle parse_rectangle(std::string_view text, int alphabet_bound) {
  return LatinRectangle(parse_grid(text), alphabet_bound);
}

std::string serialize_rectangle(const LatinRectangle& r) { return serialize_cells(r.rows(), r.cols(), r.cells()); }

}  // namespace latinpat
