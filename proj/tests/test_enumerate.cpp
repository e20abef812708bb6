#include <map>
#include <mutex>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "latinpat/construct.hpp"
#include "latinpat/enumerate.hpp"

using namespace latinpat;
using testing::P;

namespace {

std::vector<LatinSquare> collect(int n, const AvoidanceSpec& spec) {
  std::vector<LatinSquare> out;
  enumerate_squares(n, spec, [&](const LatinSquare& s) { out.push_back(s); });
  return out;
}

BigInt count(int n, const AvoidanceSpec& spec, int jobs = 1, int split = -1) {
  EnumerationOptions o;
  o.jobs = jobs;
  o.split_depth = split;
  return count_squares(n, spec, o).count;
}

}  // namespace

TEST_CASE("unrestricted counts") {
  const auto one = collect(1, {});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == LatinSquare(std::vector<std::vector<int>>{{1}}));
  CHECK(count(1, {}) == 1);
  CHECK(count(2, {}) == 2);
  CHECK(count(3, {}) == 12);
  CHECK(count(4, {}) == 576);
  CHECK(count(5, {}, 2) == 161280);
}

TEST_CASE("reduced-square cross-check") {
  CHECK(oracle::reduced_squares(4) == 4);
  CHECK(oracle::reduced_squares(5) == 56);
  CHECK(count(4, {}) == BigInt(24 * 6 * 4));
  CHECK(count(5, {}, 2) == BigInt(120 * 24 * 56));
}

TEST_CASE("output order is lexicographic and matches the oracle") {
  for (int n = 1; n <= 4; ++n) {
    const auto got = collect(n, {});
    const auto want = oracle::latin_squares(n);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(testing::grid(got[i]) == want[i]);
  }
}

TEST_CASE("length-3 avoiders") {
  const auto four = collect(4, AvoidanceSpec::lines(P("123")));
  REQUIRE(four.size() == 4);
  const auto cyclic = all_s3_avoiders(4, P("123"));
  CHECK(std::set<LatinSquare>(four.begin(), four.end()) == std::set<LatinSquare>(cyclic.begin(), cyclic.end()));
  for (const auto& p : all_permutations(3)) {
    for (int n = 2; n <= 6; ++n) CHECK(count(n, AvoidanceSpec::lines(p)) == n);
    CHECK(count(4, AvoidanceSpec::columns_only(p)) == 24);
  }
  CHECK(count(4, {{}, {P("132")}, {}}) == 24);
}

TEST_CASE("column avoiders of full-length patterns") {
  CHECK(count_column_avoiders(4, P("123")).count == 24);
  for (const auto& p : all_permutations(4)) CHECK(count_column_avoiders(4, p).count == 480);
  CHECK(count_column_avoiders(1, P("1")).count == 0);
}

TEST_CASE("short patterns give empty avoider sets") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(count(n, AvoidanceSpec::lines(P("1"))) == 0);
    CHECK(count(n, AvoidanceSpec::lines(P("12"))) == 0);
    CHECK(count(n, AvoidanceSpec::lines(P("21"))) == 0);
  }
  CHECK(count(1, AvoidanceSpec::lines(P("12"))) == 1);
}

TEST_CASE("pruned counts equal filtered counts") {
  for (int n = 1; n <= 4; ++n) {
    const auto all = collect(n, {});
    for (int k = 3; k <= 4; ++k) {
      for (const auto& p : all_permutations(k)) {
        const std::vector<AvoidanceSpec> specs = {AvoidanceSpec::lines(p), AvoidanceSpec::columns_only(p),
                                                  AvoidanceSpec::rows_only(p), AvoidanceSpec{{}, {}, {p}},
                                                  AvoidanceSpec{{p}, {p}, {p}}};
        for (const auto& spec : specs) {
          std::vector<LatinSquare> filtered;
          for (const auto& s : all) {
            if (avoids_spec(s, spec)) filtered.push_back(s);
          }
          REQUIRE(collect(n, spec) == filtered);
        }
      }
    }
  }
}

TEST_CASE("relabel invariance for full-length patterns") {
  for (int n = 4; n <= 5; ++n) {
    const auto perms = all_permutations(n);
    // All of S_4, and an evenly spaced sample of S_5.
    const std::size_t step = n == 4 ? 1 : 17;
    std::set<BigInt> values;
    for (std::size_t i = 0; i < perms.size(); i += step) values.insert(count(n, AvoidanceSpec::lines(perms[i]), 2));
    CHECK(values.size() == 1);
  }
}

TEST_CASE("r-equivalence classes at order 4") {
  // Group squares by the multiset of rows; each class holds 4! row orders.
  const auto all = collect(4, {});
  std::map<std::vector<std::vector<int>>, std::vector<LatinSquare>> classes;
  for (const auto& s : all) {
    auto rows = s.rows();
    std::sort(rows.begin(), rows.end());
    classes[rows].push_back(s);
  }
  CHECK(classes.size() == 24);
  for (const auto& [key, members] : classes) {
    REQUIRE(members.size() == 24);
    for (const auto& p : {P("1234"), P("2413"), P("4321")}) {
      std::size_t avoiders = 0;
      for (const auto& s : members) avoiders += avoids_spec(s, AvoidanceSpec::columns_only(p)) ? 1 : 0;
      REQUIRE(avoiders == 20);
    }
  }
}

TEST_CASE("partitioning") {
  const auto whole = partition_tasks(4, {}, 0);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].prefix.empty());
  const auto first_row = partition_tasks(4, {}, 4);
  REQUIRE(first_row.size() == 24);
  BigInt total = 0;
  for (const auto& t : first_row) {
    const auto outcome = explore_task(t);
    CHECK(outcome.count == 24);
    total += outcome.count;
  }
  CHECK(total == 576);
  for (const auto& spec : {AvoidanceSpec{}, AvoidanceSpec::lines(P("1234")), AvoidanceSpec::columns_only(P("132"))}) {
    for (int depth : {0, 1, 3, 4, 6, 9, 16}) {
      std::uint64_t prefix_nodes = 0;
      const auto tasks = partition_tasks(4, spec, depth, &prefix_nodes);
      std::uint64_t sum = 0;
      std::uint64_t nodes = prefix_nodes;
      for (const auto& t : tasks) {
        REQUIRE(t.prefix.size() <= static_cast<std::size_t>(depth));
        const auto o = explore_task(t);
        sum += o.count;
        nodes += o.nodes;
      }
      REQUIRE(BigInt(sum) == count(4, spec));
      REQUIRE(nodes == count_squares(4, spec).nodes_explored);
    }
  }
}

TEST_CASE("determinism across workers and split depths") {
  const auto spec = AvoidanceSpec::lines(P("1324"));
  const auto base = count_squares(5, spec);
  for (int jobs : {1, 2, 8}) {
    for (int split : {-1, 0, 3, 5, 7}) {
      EnumerationOptions o;
      o.jobs = jobs;
      o.split_depth = split;
      const auto r = count_squares(5, spec, o);
      REQUIRE(r.count == base.count);
      REQUIRE(r.nodes_explored == base.nodes_explored);
    }
  }
  std::vector<LatinSquare> serial;
  enumerate_squares(4, {}, [&](const LatinSquare& s) { serial.push_back(s); });
  EnumerationOptions o;
  o.jobs = 8;
  const auto tasks = partition_tasks(4, {}, resolve_split_depth(4, o));
  std::vector<std::vector<LatinSquare>> buffers(tasks.size());
  const TaskVisitor visit = [&](std::size_t t, const LatinSquare& s) { buffers[t].push_back(s); };
  run_tasks(tasks, o, &visit);
  std::vector<LatinSquare> merged;
  for (const auto& b : buffers) merged.insert(merged.end(), b.begin(), b.end());
  CHECK(merged == serial);
}

TEST_CASE("first-row enumeration") {
  const auto one = enumerate_with_first_row(4, P("2134"), AvoidanceSpec::columns_only(P("123")));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == LatinSquare({{2, 1, 3, 4}, {1, 4, 2, 3}, {4, 3, 1, 2}, {3, 2, 4, 1}}));
  CHECK(enumerate_with_first_row(4, P("1234"), AvoidanceSpec::rows_only(P("123"))).empty());
  for (const auto& sigma : all_permutations(4)) {
    CHECK(enumerate_with_first_row(4, sigma, AvoidanceSpec::columns_only(P("123"))).size() == 1);
  }
  CHECK_THROWS_AS(enumerate_with_first_row(4, P("123"), {}), std::invalid_argument);
}

TEST_CASE("feasibility bounds") {
  CHECK_THROWS_AS(count_squares(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(count_squares(7, {}), feasibility_error);
  CHECK_THROWS_AS(count_squares(8, AvoidanceSpec::lines(P("123"))), feasibility_error);
  CHECK_NOTHROW(check_feasible(7, AvoidanceSpec::lines(P("123")), {}));
  CHECK_NOTHROW(check_feasible(9, AvoidanceSpec::lines(P("123")), {6, 9}));
  CHECK_THROWS_AS(check_feasible(7, AvoidanceSpec::lines(Permutation::identity(8)), {}), feasibility_error);
  CHECK_THROWS_AS(count_squares(kMaxSearchOrder + 1, AvoidanceSpec::lines(P("123")),
                                EnumerationOptions{1, -1, {40, 40}, {}}),
                  feasibility_error);
}

TEST_CASE("progress callback reaches the total") {
  EnumerationOptions o;
  o.jobs = 2;
  std::size_t last_done = 0;
  std::size_t last_total = 0;
  std::mutex m;
  o.progress = [&](std::size_t done, std::size_t total) {
    std::lock_guard lock(m);
    last_done = std::max(last_done, done);
    last_total = total;
  };
  count_squares(4, {}, o);
  CHECK(last_total > 0);
  CHECK(last_done == last_total);
}
