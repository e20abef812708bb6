#pragma once

#include <optional>
#include <vector>

#include "latinpat/enumerate.hpp"

namespace latinpat {

/// Row and column indices (1-based, strictly increasing) of a sub-rectangle.
struct RectWitness {
  std::vector<int> rows;
  std::vector<int> cols;
  friend bool operator==(const RectWitness&, const RectWitness&) = default;
};

/// Entries replaced by their rank among the distinct values (1-based).
std::vector<int> rank_pattern(std::span<const int> cells);

/// Same shape and same rank pattern: one grid maps onto the other under an
/// increasing function on values.
bool rect_order_isomorphic(const LatinRectangle& a, const LatinRectangle& b);

/// The sub-rectangle of s on the given 1-based rows and columns.
LatinRectangle sub_rectangle(const LatinSquare& s, const RectWitness& at);

/// First sub-rectangle order-isomorphic to pattern, ordered by row set then
/// column set (both lexicographic). Throws std::invalid_argument when the
/// pattern is larger than the square.
std::optional<RectWitness> contains_rectangle(const LatinSquare& s, const LatinRectangle& pattern);

/// Clockwise: entry (i, j) of a p x q rectangle moves to (j, p + 1 - i).
LatinRectangle rotate_rect_90(const LatinRectangle& r);

/// Counts order-n squares containing none of the patterns by filtering the
/// full enumeration.
BigInt count_rectangle_avoiders(int n, const std::vector<LatinRectangle>& patterns,
                                const EnumerationOptions& options = {});

}  // namespace latinpat
