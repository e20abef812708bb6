#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "latinpat/construct.hpp"
#include "latinpat/rectpat.hpp"

using namespace latinpat;
using testing::P;

namespace {

LatinRectangle rect(const std::vector<std::vector<int>>& g) { return LatinRectangle(g); }

const LatinSquare& figure4() {
  static const LatinSquare s = parse_square(testing::golden("figure4.txt"));
  return s;
}

// Random rectangle: each row a sample of distinct values, columns kept
// distinct by rejection.
LatinRectangle random_rect(std::mt19937& rng, int p, int q, int n) {
  while (true) {
    std::vector<std::vector<int>> g;
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < p; ++i) {
      std::shuffle(pool.begin(), pool.end(), rng);
      g.emplace_back(pool.begin(), pool.begin() + q);
    }
    try {
      return LatinRectangle(g, n);
    } catch (const std::invalid_argument&) {
    }
  }
}

// Applies an increasing map to every entry.
LatinRectangle stretch(const LatinRectangle& r, int factor, int offset) {
  auto g = r.grid();
  for (auto& row : g) {
    for (auto& v : row) v = v * factor + offset;
  }
  return LatinRectangle(g);
}

}  // namespace

TEST_CASE("order isomorphism") {
  CHECK(rect_order_isomorphic(rect({{6, 8, 3}, {1, 6, 8}}), rect({{3, 4, 2}, {1, 3, 4}})));
  CHECK(rect_order_isomorphic(rect({{1, 2}}), rect({{1, 2}})));
  CHECK_FALSE(rect_order_isomorphic(rect({{1, 2}}), rect({{2, 1}})));
  CHECK_FALSE(rect_order_isomorphic(rect({{1, 2}}), rect({{1}, {2}})));
  // Equal values must stay equal.
  CHECK_FALSE(rect_order_isomorphic(rect({{1, 2}, {2, 3}}), rect({{1, 2}, {3, 4}})));
  CHECK(rank_pattern(std::vector<int>{6, 8, 3, 1, 6, 8}) == std::vector<int>{3, 4, 2, 1, 3, 4});
}

TEST_CASE("order isomorphism is an equivalence on samples") {
  std::mt19937 rng(20131);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_rect(rng, 2, 3, 5);
    const auto b = stretch(a, 3, 2);
    const auto c = stretch(b, 2, 7);
    const auto d = random_rect(rng, 2, 3, 5);
    REQUIRE(rect_order_isomorphic(a, a));
    REQUIRE(rect_order_isomorphic(a, b));
    REQUIRE(rect_order_isomorphic(b, a));
    REQUIRE(rect_order_isomorphic(b, c));
    REQUIRE(rect_order_isomorphic(a, c));
    REQUIRE(rect_order_isomorphic(a, d) == rect_order_isomorphic(d, a));
    if (rect_order_isomorphic(a, d) && rect_order_isomorphic(d, c)) REQUIRE(rect_order_isomorphic(a, c));
  }
}

TEST_CASE("the worked sub-rectangle example") {
  const auto w = contains_rectangle(figure4(), rect({{3, 4, 2}, {1, 3, 4}}));
  REQUIRE(w);
  CHECK(w->rows == std::vector<int>{2, 7});
  CHECK(w->cols == std::vector<int>{1, 5, 9});
  CHECK(sub_rectangle(figure4(), *w).grid() == std::vector<std::vector<int>>{{6, 8, 3}, {1, 6, 8}});
  CHECK(sub_rectangle(figure4(), *w).alphabet_bound() == 9);
  const auto o = oracle::find_rectangle(testing::grid(figure4()), {{3, 4, 2}, {1, 3, 4}});
  REQUIRE(o);
  CHECK(o->rows == w->rows);
  CHECK(o->cols == w->cols);
}

TEST_CASE("containment basics") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(contains_rectangle(construct_s3_avoider(n, P("123"), 1), rect({{1}})).has_value());
  }
  CHECK_THROWS_AS(contains_rectangle(LatinSquare({{1, 2}, {2, 1}}), rect({{1, 2, 3}})), std::invalid_argument);
}

TEST_CASE("containment agrees with the oracle") {
  std::mt19937 rng(7);
  std::vector<LatinSquare> squares;
  enumerate_squares(4, {}, [&](const LatinSquare& s) { squares.push_back(s); });
  for (int trial = 0; trial < 200; ++trial) {
    const auto& s = squares[static_cast<std::size_t>(trial * 37) % squares.size()];
    const int p = 1 + static_cast<int>(rng() % 3);
    const int q = 1 + static_cast<int>(rng() % 3);
    const auto r = random_rect(rng, p, q, 4);
    const auto got = contains_rectangle(s, r);
    const auto want = oracle::find_rectangle(testing::grid(s), r.grid());
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      REQUIRE(got->rows == want->rows);
      REQUIRE(got->cols == want->cols);
      REQUIRE(rect_order_isomorphic(sub_rectangle(s, *got), r));
    }
  }
}

TEST_CASE("rotation") {
  const auto r = rect({{1, 2, 3}});
  const auto once = rotate_rect_90(r);
  CHECK(once.rows() == 3);
  CHECK(once.cols() == 1);
  CHECK(once == rect({{1}, {2}, {3}}));
  const auto big = rect({{3, 4, 2}, {1, 3, 4}});
  CHECK(rotate_rect_90(big) == rect({{1, 3}, {3, 4}, {4, 2}}));
  CHECK(rotate_rect_90(rotate_rect_90(rotate_rect_90(rotate_rect_90(big)))) == big);
}

TEST_CASE("line rectangles reduce to line patterns") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<LatinSquare> squares;
    enumerate_squares(n, {}, [&](const LatinSquare& s) { squares.push_back(s); });
    for (int k = 1; k <= 4; ++k) {
      for (const auto& p : all_permutations(k)) {
        const std::vector<int> e(p.entries().begin(), p.entries().end());
        const LatinRectangle row_rect(std::vector<std::vector<int>>{e});
        const auto col_rect = rotate_rect_90(row_rect);
        for (const auto& s : squares) {
          if (k > n) {
            REQUIRE_THROWS_AS(contains_rectangle(s, row_rect), std::invalid_argument);
            continue;
          }
          REQUIRE(contains_rectangle(s, row_rect).has_value() == !avoids_spec(s, AvoidanceSpec::rows_only(p)));
          REQUIRE(contains_rectangle(s, col_rect).has_value() == !avoids_spec(s, AvoidanceSpec::columns_only(p)));
        }
      }
    }
  }
}

TEST_CASE("avoiding 123 and its rotation counts L_n(123)") {
  const auto r = rect({{1, 2, 3}});
  for (int n = 3; n <= 5; ++n) {
    CHECK(count_rectangle_avoiders(n, {r, rotate_rect_90(r)}) == n);
  }
}
