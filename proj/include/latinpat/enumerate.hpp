#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latinpat/square.hpp"

namespace latinpat {

using BigInt = boost::multiprecision::cpp_int;

/// Largest order the bitmask search supports at all.
constexpr int kMaxSearchOrder = 31;

struct EnumerationLimits {
  /// Bound when no pattern can cut the tree (L_6 is ~8.1e8 leaves).
  int max_unrestricted_order = 6;
  /// Bound when some row, column or symbol pattern fits inside a line.
  /// Length-3 line avoidance takes ~0.1s at n=6 and ~10s at n=7 on one
  /// core; the tree grows about 60x per order beyond that.
  int max_restricted_order = 7;
};

struct EnumerationOptions {
  int jobs = 1;
  /// Number of leading cells fixed per task; negative picks a default
  /// (0 for one worker, the first row otherwise).
  int split_depth = -1;
  EnumerationLimits limits;
  /// Called after each task finishes, possibly from a worker thread (calls
  /// are serialized).
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct CountResult {
  int order = 0;
  AvoidanceSpec spec;
  BigInt count = 0;
  /// Consistent partial fillings visited, root included. Independent of
  /// jobs and split depth.
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// A subtree of the search: all completions of `prefix`, the first
/// prefix.size() cells in row-major order.
struct EnumerationTask {
  int order = 0;
  AvoidanceSpec spec;
  std::vector<int> prefix;
};

struct TaskOutcome {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
};

using SquareVisitor = std::function<void(const LatinSquare&)>;
using TaskVisitor = std::function<void(std::size_t task, const LatinSquare&)>;

/// True when some pattern in spec is short enough to occur in a line of an
/// order-n square.
bool spec_restricts(int n, const AvoidanceSpec& spec);

/// Throws std::invalid_argument for n < 1 and feasibility_error beyond the
/// configured bounds.
void check_feasible(int n, const AvoidanceSpec& spec, const EnumerationLimits& limits);

/// Visits every order-n square satisfying spec exactly once, in
/// lexicographic order of the row-major grid.
void enumerate_squares(int n, const AvoidanceSpec& spec, const SquareVisitor& visit,
                       const EnumerationLimits& limits = {});

CountResult count_squares(int n, const AvoidanceSpec& spec, const EnumerationOptions& options = {});

/// Squares whose columns avoid p; rows unrestricted.
CountResult count_column_avoiders(int n, const Permutation& p, const EnumerationOptions& options = {});

/// Consistent prefixes of length split_depth in lexicographic order. Their
/// subtrees are disjoint and cover the search space. When prefix_nodes is
/// given it receives the node count of the prefix search (root included).
std::vector<EnumerationTask> partition_tasks(int n, const AvoidanceSpec& spec, int split_depth,
                                             std::uint64_t* prefix_nodes = nullptr);

/// Explores one subtree. A prefix that breaks a Latin or avoidance
/// constraint yields an empty outcome. Nodes strictly below the prefix are
/// counted.
TaskOutcome explore_task(const EnumerationTask& task, const SquareVisitor* visit = nullptr);

/// Runs tasks on options.jobs workers. visit (if set) receives the task index;
/// calls for one task are sequential and in lexicographic order.
std::vector<TaskOutcome> run_tasks(const std::vector<EnumerationTask>& tasks, const EnumerationOptions& options,
                                   const TaskVisitor* visit = nullptr);

int resolve_split_depth(int n, const EnumerationOptions& options);

std::vector<LatinSquare> enumerate_with_first_row(int n, const Permutation& first_row, const AvoidanceSpec& spec,
                                                  const EnumerationLimits& limits = {});

/// Parallel reduction over all satisfying squares. Each task folds into its
/// own accumulator; accumulators merge in task order, so the result does not
/// depend on the number of workers when merge is associative.
template <typename Acc, typename Visit, typename Merge>
Acc fold_squares(int n, const AvoidanceSpec& spec, const EnumerationOptions& options, const Acc& init, Visit visit,
                 Merge merge) {
  check_feasible(n, spec, options.limits);
  const auto tasks = partition_tasks(n, spec, resolve_split_depth(n, options));
  std::vector<Acc> partial(tasks.size(), init);
  const TaskVisitor visitor = [&](std::size_t t, const LatinSquare& s) { visit(partial[t], s); };
  run_tasks(tasks, options, &visitor);
  Acc total = init;
  for (const auto& p : partial) merge(total, p);
  return total;
}

}  // namespace latinpat
