#pragma once

#include <vector>

#include "latinpat/square.hpp"

namespace latinpat {

/// True for 123, 231 and 312, whose avoiders have cyclically decreasing
/// lines; false for 132, 213 and 321. Throws unless p has length 3.
bool is_even_s3_pattern(const Permutation& p);

/// True for 231 and 213, whose column completion starts from the bottom row.
bool anchors_bottom_row(const Permutation& p);

/// The unique square whose columns all avoid p (length 3) and whose anchor
/// row is `anchor`. The anchor row is the top row, except for 231 and 213
/// where it is the bottom row. Columns are filled one at a time in order of
/// their anchor symbol (ascending from 1 for 123/132, descending from n for
/// 312/321), each by searching for the only completion consistent with the
/// columns already placed; the final column is completed by elimination.
LatinSquare complete_columns_avoiding(const Permutation& anchor, const Permutation& p);

/// The unique square avoiding p (length 3) in rows and columns with
/// top-left entry `start`: every line runs start, start-1, ... cyclically for
/// even patterns and start, start+1, ... for odd ones.
LatinSquare construct_s3_avoider(int n, const Permutation& p, int start);

/// construct_s3_avoider(n, p, i) for i = 1..n.
std::vector<LatinSquare> all_s3_avoiders(int n, const Permutation& p);

/// Row i is base rotated left by i-1, so entry (i, j) is base((i+j-2) mod m + 1).
LatinSquare circulant_square(const Permutation& base);

constexpr int kMaxConnollyRoot = 32;

/// Order root^2 square with entry (i, j) = k*root mod (root^2 + 1), where
/// k = (i+j-2) mod root^2 + 1. Both residues are taken in 1..root^2.
LatinSquare connolly_square(int root);

/// Replaces each entry e by n+1-e; maps p-avoiders onto complement(p)-avoiders.
LatinSquare complement_map(const LatinSquare& s);
/// 180 degree rotation; maps p-avoiders onto reverse(p)-avoiders.
LatinSquare rotation_map(const LatinSquare& s);
/// relabel(s, from_pattern^-1 then to_pattern); for patterns of length
/// order(s) this carries from-avoiders onto to-avoiders.
LatinSquare full_length_relabel_map(const LatinSquare& s, const Permutation& from_pattern,
                                    const Permutation& to_pattern);

}  // namespace latinpat
