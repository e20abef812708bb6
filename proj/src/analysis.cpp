#include "latinpat/analysis.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "latinpat/construct.hpp"

namespace latinpat {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// All k-subsets of 0..n-1 as increasing index lists, in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

int lower_bound_or_trivial(int n) { return n >= 2 ? lambda_lower_bound(static_cast<std::uint64_t>(n)) : 1; }

void require_enumerable_total(int n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (n > kMaxEnumeratedTotalOrder) {
    throw feasibility_error("exhaustive scan over all squares is limited to order " +
                            std::to_string(kMaxEnumeratedTotalOrder));
  }
}

// Longest monotone run over all rows of a circulant square; its columns are
// the same sequences.
int circulant_max_monotone(const std::vector<int>& base) {
  const std::size_t m = base.size();
  std::vector<int> row(m);
  int best = 0;
  for (std::size_t shift = 0; shift < m; ++shift) {
    for (std::size_t j = 0; j < m; ++j) row[j] = base[(shift + j) % m];
    best = std::max(best, longest_monotone(row));
  }
  return best;
}

}  // namespace

int lambda_lower_bound(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("lambda_lower_bound requires n >= 2");
  // floor((3 + sqrt(4n - 7)) / 2) equals floor((3 + isqrt(4n - 7)) / 2).
  return static_cast<int>((3 + isqrt(4 * n - 7)) / 2);
}

std::string to_string(LambdaMethod m) {
  switch (m) {
    case LambdaMethod::exhaustive:
      return "exhaustive";
    case LambdaMethod::bound_only:
      return "bound-only";
    case LambdaMethod::witness_capped:
      return "witness-capped";
  }
  return "unknown";
}

int lambda_witness_cap(const LatinSquare& s) { return max_monotone(s); }

LambdaReport compute_lambda_exhaustive(int n, const EnumerationOptions& options) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (n > kMaxExhaustiveLambdaOrder) {
    throw feasibility_error("exhaustive lambda is limited to order " + std::to_string(kMaxExhaustiveLambdaOrder));
  }
  struct Best {
    int value = std::numeric_limits<int>::max();
    std::optional<LatinSquare> witness;
  };
  const Best best = fold_squares(
      n, AvoidanceSpec{}, options, Best{},
      [](Best& acc, const LatinSquare& s) {
        const int v = max_monotone(s);
        if (v < acc.value) acc = {v, s};
      },
      [](Best& total, const Best& part) {
        // Strict comparison keeps the earliest task's witness on ties.
        if (part.value < total.value) total = part;
      });
  LambdaReport report;
  report.order = n;
  report.lower_bound = lower_bound_or_trivial(n);
  report.exact_value = best.value;
  report.upper_bound = best.value;
  report.witness = best.witness;
  report.method = LambdaMethod::exhaustive;
  return report;
}

LambdaReport lambda_bounds(int n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  if (n > kMaxLambdaBoundsOrder) {
    throw feasibility_error("lambda bounds are limited to order " + std::to_string(kMaxLambdaBoundsOrder));
  }
  std::optional<std::vector<int>> best_base;
  int best = std::numeric_limits<int>::max();
  auto consider = [&](std::vector<int> base) {
    const int v = circulant_max_monotone(base);
    if (v < best) {
      best = v;
      best_base = std::move(base);
    }
  };

  const auto root = static_cast<int>(isqrt(static_cast<std::uint64_t>(n)));
  if (root * root == n && root <= kMaxConnollyRoot) {
    const auto c = connolly_square(root);
    consider(std::vector<int>(c.row(1).begin(), c.row(1).end()));
  }
  // Multiplicative bases k*a mod (n+1) for units a.
  for (int a = 1; a <= std::min(n, 32); ++a) {
    if (std::gcd(a, n + 1) != 1) continue;
    std::vector<int> base;
    base.reserve(static_cast<std::size_t>(n));
    for (long long k = 1; k <= n; ++k) base.push_back(static_cast<int>((k * a) % (n + 1)));
    consider(std::move(base));
  }

  LambdaReport report;
  report.order = n;
  report.lower_bound = lower_bound_or_trivial(n);
  report.witness = circulant_square(Permutation(*best_base));
  report.upper_bound = lambda_witness_cap(*report.witness);
  if (*report.upper_bound == report.lower_bound) report.exact_value = report.lower_bound;
  report.method = LambdaMethod::witness_capped;
  return report;
}

bool extremal_lines_meet_bound(const LatinSquare& s) {
  const int n = s.order();
  if (n < 2) return true;
  const int m = lambda_lower_bound(static_cast<std::uint64_t>(n));
  for (int i = 1; i <= n; ++i) {
    const int row_head = s.at(i, 1);
    if ((row_head == 1 || row_head == n) && longest_monotone(s.row(i)) < m) return false;
    const int col_head = s.at(1, i);
    if ((col_head == 1 || col_head == n) && longest_monotone(s.column(i)) < m) return false;
  }
  return true;
}

BigInt full_length_count(int n, const std::optional<BigInt>& total_squares, const EnumerationOptions& options) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  BigInt total;
  if (total_squares) {
    total = *total_squares;
  } else {
    if (n > kMaxEnumeratedTotalOrder) {
      throw feasibility_error("L_" + std::to_string(n) + " is not available; supply it from the cache");
    }
    total = count_squares(n, AvoidanceSpec{}, options).count;
  }
  const BigInt f = factorial(n);
  const BigInt numerator = (f - n) * (f - n) * total;
  const BigInt denominator = f * f;
  if (numerator % denominator != 0) {
    if (total_squares) {
      throw std::invalid_argument("supplied L_" + std::to_string(n) + " gives a non-integral avoider count");
    }
    throw std::logic_error("full-length avoider formula is not integral at order " + std::to_string(n));
  }
  return numerator / denominator;
}

FullLengthReport verify_full_length_formula(int n, const EnumerationOptions& options) {
  require_enumerable_total(n);
  FullLengthReport report;
  report.order = n;
  report.total = count_squares(n, AvoidanceSpec{}, options).count;
  const BigInt f = factorial(n);

  std::vector<Permutation> sample;
  if (n <= 4) {
    sample = all_permutations(n);
  } else {
    const auto all = all_permutations(n);
    const std::size_t size = all.size();
    sample = {all.front(), all[size / 3], all[2 * size / 3], all.back()};
  }

  report.ok = true;
  for (const auto& p : sample) {
    FullLengthCheck check{p, 0, 0, 0, 0, false};
    check.column_avoiders = count_column_avoiders(n, p, options).count;
    check.line_avoiders = count_squares(n, AvoidanceSpec::lines(p), options).count;
    const BigInt col_num = (f - n) * report.total;
    const BigInt line_num = (f - n) * check.column_avoiders;
    check.predicted_column_avoiders = col_num / f;
    check.predicted_line_avoiders = line_num / f;
    check.ok = col_num % f == 0 && line_num % f == 0 && check.column_avoiders == check.predicted_column_avoiders &&
               check.line_avoiders == check.predicted_line_avoiders;
    report.ok = report.ok && check.ok;
    report.checks.push_back(std::move(check));
  }

  if (n <= 4) {
    const auto from = Permutation::identity(n);
    std::set<LatinSquare> source;
    enumerate_squares(n, AvoidanceSpec::lines(from), [&](const LatinSquare& s) { source.insert(s); });
    bool ok = true;
    for (const auto& to : all_permutations(n)) {
      std::set<LatinSquare> target;
      enumerate_squares(n, AvoidanceSpec::lines(to), [&](const LatinSquare& s) { target.insert(s); });
      std::set<LatinSquare> mapped;
      for (const auto& s : source) mapped.insert(full_length_relabel_map(s, from, to));
      ok = ok && mapped == target;
    }
    report.relabel_bijection_ok = ok;
    report.ok = report.ok && ok;
  }
  return report;
}

WilfReport wilf_classes(int k, int n, const EnumerationOptions& options, const WilfOptions& wilf) {
  if (k < 1 || n < 1) throw std::invalid_argument("pattern length and order must be >= 1");
  if (k > wilf.max_length || n > wilf.max_order) {
    throw feasibility_error("Wilf classes are limited to length " + std::to_string(wilf.max_length) +
                            " and order " + std::to_string(wilf.max_order));
  }
  WilfReport report;
  report.pattern_length = k;
  report.order = n;
  report.patterns = all_permutations(k);
  const std::size_t pattern_count = report.patterns.size();

  if (wilf.mode == WilfMode::per_pattern) {
    for (const auto& p : report.patterns) report.counts.push_back(count_squares(n, AvoidanceSpec::lines(p), options).count);
  } else {
    const auto combos = combinations(n, k);
    const std::vector<std::uint64_t> zero(pattern_count, 0);
    const auto tallies = fold_squares(
        n, AvoidanceSpec{}, options, zero,
        [&](std::vector<std::uint64_t>& acc, const LatinSquare& s) {
          std::vector<char> contained(pattern_count, 0);
          std::vector<int> sub(static_cast<std::size_t>(k));
          auto scan = [&](std::span<const int> line) {
            for (const auto& combo : combos) {
              for (std::size_t a = 0; a < combo.size(); ++a) sub[a] = line[static_cast<std::size_t>(combo[a])];
              contained[lex_rank(sub)] = 1;
            }
          };
          for (int i = 1; i <= n; ++i) {
            scan(s.row(i));
            scan(s.column(i));
          }
          for (std::size_t p = 0; p < pattern_count; ++p) {
            if (!contained[p]) ++acc[p];
          }
        },
        [](std::vector<std::uint64_t>& total, const std::vector<std::uint64_t>& part) {
          for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
        });
    for (auto t : tallies) report.counts.emplace_back(t);
  }

  std::map<BigInt, int> ids;
  for (std::size_t p = 0; p < pattern_count; ++p) {
    auto [it, inserted] = ids.emplace(report.counts[p], static_cast<int>(report.classes.size()));
    if (inserted) report.classes.emplace_back();
    report.class_id.push_back(it->second);
    report.classes[static_cast<std::size_t>(it->second)].push_back(report.patterns[p]);
  }
  return report;
}

std::vector<std::vector<Permutation>> symmetry_orbits(int k) {
  std::vector<std::vector<Permutation>> orbits;
  std::set<Permutation> seen;
  for (const auto& p : all_permutations(k)) {
    if (seen.count(p)) continue;
    std::set<Permutation> orbit{p, reverse(p), complement(p), reverse(complement(p))};
    seen.insert(orbit.begin(), orbit.end());
    orbits.emplace_back(orbit.begin(), orbit.end());
  }
  return orbits;
}

bool classes_match_orbits(const WilfReport& report) {
  auto normalize = [](std::vector<std::vector<Permutation>> parts) {
    for (auto& part : parts) std::sort(part.begin(), part.end());
    std::sort(parts.begin(), parts.end());
    return parts;
  };
  return normalize(report.classes) == normalize(symmetry_orbits(report.pattern_length));
}

ExhaustiveCheck verify_triple_containment(int n, const EnumerationOptions& options) {
  require_enumerable_total(n);
  const std::vector<PatternMatcher> matchers = {
      PatternMatcher(Permutation{1, 2, 3}), PatternMatcher(Permutation{2, 3, 1}),
      PatternMatcher(Permutation{3, 1, 2}), PatternMatcher(Permutation{1, 3, 2}),
      PatternMatcher(Permutation{2, 1, 3}), PatternMatcher(Permutation{3, 2, 1})};
  struct Tally {
    std::uint64_t cases = 0;
    std::uint64_t violations = 0;
  };
  const Tally tally = fold_squares(
      n, AvoidanceSpec{}, options, Tally{},
      [&](Tally& acc, const LatinSquare& s) {
        std::array<bool, 6> hit{};
        for (std::size_t p = 0; p < matchers.size(); ++p) {
          for (int i = 1; i <= n && !hit[p]; ++i) {
            hit[p] = matchers[p].occurs_in(s.row(i)) || matchers[p].occurs_in(s.column(i));
          }
        }
        ++acc.cases;
        if (hit[0] != hit[1] || hit[0] != hit[2] || hit[3] != hit[4] || hit[3] != hit[5]) ++acc.violations;
      },
      [](Tally& total, const Tally& part) {
        total.cases += part.cases;
        total.violations += part.violations;
      });
  return {"triple-containment", n, tally.cases, tally.violations};
}

ExhaustiveCheck verify_cyclic_columns(int n, const EnumerationOptions& options) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  ExhaustiveCheck check{"cyclic-columns", n, 0, 0};
  const std::uint64_t expected_column_avoiders = factorial_u64(n);
  for (const auto& p : all_permutations(3)) {
    const int step = is_even_s3_pattern(p) ? -1 : 1;
    std::uint64_t seen = 0;
    enumerate_squares(
        n, AvoidanceSpec::columns_only(p),
        [&](const LatinSquare& s) {
          ++seen;
          ++check.cases;
          bool cyclic = true;
          for (int c = 1; c <= n && cyclic; ++c) {
            for (int r = 2; r <= n && cyclic; ++r) {
              cyclic = s.at(r, c) == ((s.at(r - 1, c) - 1 + step) % n + n) % n + 1;
            }
          }
          if (!cyclic) ++check.violations;
        },
        options.limits);
    if (seen != expected_column_avoiders) ++check.violations;

    std::set<LatinSquare> enumerated;
    enumerate_squares(n, AvoidanceSpec::lines(p), [&](const LatinSquare& s) { enumerated.insert(s); },
                      options.limits);
    const auto built = all_s3_avoiders(n, p);
    ++check.cases;
    if (enumerated != std::set<LatinSquare>(built.begin(), built.end())) ++check.violations;
  }
  return check;
}

ExhaustiveCheck verify_erdos_szekeres(int m, int p, int q) {
  if (m < 1 || p < 1 || q < 1) throw std::invalid_argument("length, p and q must be positive");
  if (m > kMaxCountPermutationLength) {
    throw feasibility_error("exhaustive scan of S_m is limited to m <= " + std::to_string(kMaxCountPermutationLength));
  }
  ExhaustiveCheck check{"erdos-szekeres", m, 0, 0};
  std::vector<int> e(static_cast<std::size_t>(m));
  std::iota(e.begin(), e.end(), 1);
  do {
    ++check.cases;
    if (!check_erdos_szekeres(Permutation(e), p, q)) ++check.violations;
  } while (std::next_permutation(e.begin(), e.end()));
  return check;
}

}  // namespace latinpat
