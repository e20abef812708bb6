#include "latinpat/enumerate.hpp"

#include <array>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>

namespace latinpat {

namespace {

// Backtracking state for one subtree. Cells are filled row-major; the value
// 0 marks an empty cell and never leaves this class.
class Searcher {
 public:
  Searcher(int n, const AvoidanceSpec& spec) : n_(n), full_((n >= 32) ? ~0u : ((1u << n) - 1u)) {
    cells_.fill(0);
    row_used_.fill(0);
    col_used_.fill(0);
    for (const auto& p : spec.rows) {
      if (p.size() <= n) rows_.emplace_back(p);
    }
    for (const auto& p : spec.cols) {
      if (p.size() <= n) cols_.emplace_back(p);
    }
    for (const auto& p : spec.symbols) {
      if (p.size() <= n) symbols_.emplace_back(p);
    }
  }

  int cell_count() const { return n_ * n_; }
  std::uint64_t nodes() const { return nodes_; }

  // Places the prefix without counting nodes. False if it is inconsistent.
  bool load(const std::vector<int>& prefix) {
    if (static_cast<int>(prefix.size()) > cell_count()) return false;
    for (std::size_t idx = 0; idx < prefix.size(); ++idx) {
      const int v = prefix[idx];
      const int r = static_cast<int>(idx) / n_;
      const int c = static_cast<int>(idx) % n_;
      if (v < 1 || v > n_) return false;
      const std::uint32_t bit = 1u << (v - 1);
      if ((row_used_[r] | col_used_[c]) & bit) return false;
      if (!place(static_cast<int>(idx), v)) return false;
    }
    return true;
  }

  // Calls leaf(cells) for every consistent filling of cells [start, stop).
  template <typename Leaf>
  void dfs(int idx, int stop, Leaf& leaf) {
    if (idx == stop) {
      leaf(std::span<const int>(cells_.data(), static_cast<std::size_t>(idx)));
      return;
    }
    const int r = idx / n_;
    const int c = idx % n_;
    std::uint32_t avail = full_ & ~(row_used_[r] | col_used_[c]);
    while (avail) {
      const int v = std::countr_zero(avail) + 1;
      avail &= avail - 1;
      if (place(idx, v)) {
        ++nodes_;
        dfs(idx + 1, stop, leaf);
      }
      unplace(idx, v);
    }
  }

 private:
  // Writes v at idx and reports whether every line prefix through idx still
  // avoids its patterns. Containment in a prefix persists under extension,
  // so a failure cuts the subtree. The caller always undoes with unplace.
  bool place(int idx, int v) {
    const int r = idx / n_;
    const int c = idx % n_;
    const std::uint32_t bit = 1u << (v - 1);
    cells_[static_cast<std::size_t>(idx)] = v;
    row_used_[r] |= bit;
    col_used_[c] |= bit;
    symbol_col_[static_cast<std::size_t>(v)][static_cast<std::size_t>(r)] = c + 1;

    if (!rows_.empty()) {
      const std::span<const int> row(cells_.data() + r * n_, static_cast<std::size_t>(c + 1));
      for (const auto& m : rows_) {
        if (m.length() <= c + 1 && m.occurs_ending_at_last(row)) return false;
      }
    }
    if (!cols_.empty()) {
      std::array<int, kMaxSearchOrder> col{};
      for (int i = 0; i <= r; ++i) col[static_cast<std::size_t>(i)] = cells_[static_cast<std::size_t>(i * n_ + c)];
      const std::span<const int> prefix(col.data(), static_cast<std::size_t>(r + 1));
      for (const auto& m : cols_) {
        if (m.length() <= r + 1 && m.occurs_ending_at_last(prefix)) return false;
      }
    }
    if (!symbols_.empty()) {
      // Rows above r are complete, so symbol v's positions in rows 1..r+1
      // form a prefix of its symbol permutation.
      const std::span<const int> prefix(symbol_col_[static_cast<std::size_t>(v)].data(),
                                        static_cast<std::size_t>(r + 1));
      for (const auto& m : symbols_) {
        if (m.length() <= r + 1 && m.occurs_ending_at_last(prefix)) return false;
      }
    }
    return true;
  }

  void unplace(int idx, int v) {
    const int r = idx / n_;
    const int c = idx % n_;
    const std::uint32_t bit = 1u << (v - 1);
    cells_[static_cast<std::size_t>(idx)] = 0;
    row_used_[r] &= ~bit;
    col_used_[c] &= ~bit;
  }

  int n_;
  std::uint32_t full_;
  std::uint64_t nodes_ = 0;
  std::array<int, kMaxSearchOrder * kMaxSearchOrder> cells_;
  std::array<std::uint32_t, kMaxSearchOrder> row_used_;
  std::array<std::uint32_t, kMaxSearchOrder> col_used_;
  std::array<std::array<int, kMaxSearchOrder>, kMaxSearchOrder + 1> symbol_col_{};
  std::vector<PatternMatcher> rows_;
  std::vector<PatternMatcher> cols_;
  std::vector<PatternMatcher> symbols_;
};

}  // namespace

bool spec_restricts(int n, const AvoidanceSpec& spec) {
  auto fits = [n](const std::vector<Permutation>& v) {
    for (const auto& p : v) {
      if (p.size() <= n) return true;
    }
    return false;
  };
  return fits(spec.rows) || fits(spec.cols) || fits(spec.symbols);
}

void check_feasible(int n, const AvoidanceSpec& spec, const EnumerationLimits& limits) {
  if (n < 1) throw std::invalid_argument("order must be >= 1, got " + std::to_string(n));
  if (n > kMaxSearchOrder) {
    throw feasibility_error("order " + std::to_string(n) + " exceeds the search limit " +
                            std::to_string(kMaxSearchOrder));
  }
  const bool restricted = spec_restricts(n, spec);
  const int bound = restricted ? limits.max_restricted_order : limits.max_unrestricted_order;
  if (n > bound) {
    throw feasibility_error("order " + std::to_string(n) + " exceeds the " +
                            (restricted ? "restricted" : "unrestricted") + " enumeration bound " +
                            std::to_string(bound));
  }
}

void enumerate_squares(int n, const AvoidanceSpec& spec, const SquareVisitor& visit,
                       const EnumerationLimits& limits) {
  check_feasible(n, spec, limits);
  Searcher searcher(n, spec);
  auto leaf = [&](std::span<const int> cells) {
    visit(LatinSquare(n, std::vector<int>(cells.begin(), cells.end())));
  };
  searcher.dfs(0, searcher.cell_count(), leaf);
}

std::vector<EnumerationTask> partition_tasks(int n, const AvoidanceSpec& spec, int split_depth,
                                             std::uint64_t* prefix_nodes) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (split_depth < 0 || split_depth > n * n) {
    throw std::invalid_argument("split depth must lie in 0.." + std::to_string(n * n));
  }
  std::vector<EnumerationTask> tasks;
  Searcher searcher(n, spec);
  auto leaf = [&](std::span<const int> cells) {
    tasks.push_back({n, spec, std::vector<int>(cells.begin(), cells.end())});
  };
  searcher.dfs(0, split_depth, leaf);
  if (prefix_nodes) *prefix_nodes = searcher.nodes() + 1;
  return tasks;
}

TaskOutcome explore_task(const EnumerationTask& task, const SquareVisitor* visit) {
  Searcher searcher(task.order, task.spec);
  if (!searcher.load(task.prefix)) return {};
  std::uint64_t count = 0;
  auto leaf = [&](std::span<const int> cells) {
    ++count;
    if (visit) (*visit)(LatinSquare(task.order, std::vector<int>(cells.begin(), cells.end())));
  };
  searcher.dfs(static_cast<int>(task.prefix.size()), searcher.cell_count(), leaf);
  return {count, searcher.nodes()};
}

int resolve_split_depth(int n, const EnumerationOptions& options) {
  if (options.split_depth >= 0) return std::min(options.split_depth, n * n);
  return options.jobs > 1 ? n : 0;
}

std::vector<TaskOutcome> run_tasks(const std::vector<EnumerationTask>& tasks, const EnumerationOptions& options,
                                   const TaskVisitor* visit) {
  std::vector<TaskOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::size_t done = 0;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      try {
        if (visit) {
          const SquareVisitor v = [&](const LatinSquare& s) { (*visit)(t, s); };
          outcomes[t] = explore_task(tasks[t], &v);
        } else {
          outcomes[t] = explore_task(tasks[t]);
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
      if (options.progress) {
        std::lock_guard lock(mu);
        options.progress(++done, tasks.size());
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.jobs)), tasks.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return outcomes;
}

CountResult count_squares(int n, const AvoidanceSpec& spec, const EnumerationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_feasible(n, spec, options.limits);
  std::uint64_t prefix_nodes = 0;
  const auto tasks = partition_tasks(n, spec, resolve_split_depth(n, options), &prefix_nodes);
  const auto outcomes = run_tasks(tasks, options);
  CountResult result;
  result.order = n;
  result.spec = spec;
  result.nodes_explored = prefix_nodes;
  for (const auto& o : outcomes) {
    result.count += o.count;
    result.nodes_explored += o.nodes;
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return result;
}

CountResult count_column_avoiders(int n, const Permutation& p, const EnumerationOptions& options) {
  return count_squares(n, AvoidanceSpec::columns_only(p), options);
}

std::vector<LatinSquare> enumerate_with_first_row(int n, const Permutation& first_row, const AvoidanceSpec& spec,
                                                  const EnumerationLimits& limits) {
  if (first_row.size() != n) {
    throw std::invalid_argument("first row has length " + std::to_string(first_row.size()) + ", expected " +
                                std::to_string(n));
  }
  check_feasible(n, spec, limits);
  std::vector<LatinSquare> out;
  const SquareVisitor collect = [&](const LatinSquare& s) { out.push_back(s); };
  const EnumerationTask task{n, spec, std::vector<int>(first_row.entries().begin(), first_row.entries().end())};
  explore_task(task, &collect);
  return out;
}

}  // namespace latinpat
