#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latinpat/enumerate.hpp"

namespace latinpat {

// ---------------------------------------------------------------------------
// Monotone subsequences in squares

/// Largest m with (m-1)(m-2)+2 <= n, i.e. floor(3/2 + sqrt(n - 7/4)),
/// computed in integers. Every order-n square has a row or column with a
/// monotone subsequence of this length. Requires n >= 2.
int lambda_lower_bound(std::uint64_t n);

enum class LambdaMethod { exhaustive, bound_only, witness_capped };
std::string to_string(LambdaMethod m);

struct LambdaReport {
  int order = 0;
  int lower_bound = 0;
  /// Smallest max_monotone found among the candidate squares.
  std::optional<int> upper_bound;
  std::optional<int> exact_value;
  std::optional<LatinSquare> witness;
  LambdaMethod method = LambdaMethod::bound_only;
};

constexpr int kMaxExhaustiveLambdaOrder = 5;
constexpr int kMaxLambdaBoundsOrder = 1024;

/// min over all order-n squares of max_monotone, with the lexicographically
/// first square attaining it. n <= kMaxExhaustiveLambdaOrder.
LambdaReport compute_lambda_exhaustive(int n, const EnumerationOptions& options = {});

/// Lower bound plus the best cap among circulant squares (including the
/// Connolly square when n is a perfect square). When the cap meets the
/// bound the value is exact.
LambdaReport lambda_bounds(int n);

/// max_monotone(s): every square certifies an upper bound on its order's value.
int lambda_witness_cap(const LatinSquare& s);

/// The rows and columns that start with 1 or with n. Each carries a monotone
/// subsequence of length lambda_lower_bound(n).
bool extremal_lines_meet_bound(const LatinSquare& s);

// ---------------------------------------------------------------------------
// Patterns of full length

constexpr int kMaxEnumeratedTotalOrder = 5;

/// ((n! - n) / n!)^2 * L_n, which is integral. L_n is enumerated when not
/// supplied and n <= kMaxEnumeratedTotalOrder; otherwise feasibility_error.
BigInt full_length_count(int n, const std::optional<BigInt>& total_squares = std::nullopt,
                         const EnumerationOptions& options = {});

struct FullLengthCheck {
  Permutation pattern;
  BigInt column_avoiders;
  BigInt predicted_column_avoiders;
  BigInt line_avoiders;
  BigInt predicted_line_avoiders;
  bool ok = false;
};

struct FullLengthReport {
  int order = 0;
  BigInt total;
  std::vector<FullLengthCheck> checks;
  /// Set when the relabeling bijection was compared against enumerated sets.
  std::optional<bool> relabel_bijection_ok;
  bool ok = false;
};

/// For a sample of patterns of length n, compares column-only and full
/// avoider counts with the (n! - n)/n! factor. At n <= 4 all of S_n is
/// sampled and the relabel bijection is checked as a set map.
FullLengthReport verify_full_length_formula(int n, const EnumerationOptions& options = {});

// ---------------------------------------------------------------------------
// Wilf classes

enum class WilfMode { single_pass, per_pattern };

struct WilfOptions {
  WilfMode mode = WilfMode::single_pass;
  int max_length = 5;
  int max_order = 5;
};

struct WilfReport {
  int pattern_length = 0;
  int order = 0;
  std::vector<Permutation> patterns;  // lexicographic
  std::vector<BigInt> counts;         // L_n(pattern), parallel to patterns
  std::vector<int> class_id;          // parallel to patterns, numbered by first appearance
  std::vector<std::vector<Permutation>> classes;
};

WilfReport wilf_classes(int k, int n, const EnumerationOptions& options = {}, const WilfOptions& wilf = {});

/// Orbits of S_k under {id, reverse, complement, reverse o complement},
/// numbered by first appearance in lexicographic order.
std::vector<std::vector<Permutation>> symmetry_orbits(int k);

/// True iff the report's classes are exactly the symmetry orbits.
bool classes_match_orbits(const WilfReport& report);

// ---------------------------------------------------------------------------
// Exhaustive structural checks

struct ExhaustiveCheck {
  std::string name;
  int order = 0;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  bool ok() const { return violations == 0; }
};

/// Each square contains all of {123, 231, 312} or none, and likewise for
/// {132, 213, 321}.
ExhaustiveCheck verify_triple_containment(int n, const EnumerationOptions& options = {});

/// Column avoiders of each length-3 pattern have cyclic columns
/// (decreasing by one mod n for 123/231/312, increasing for the rest), and the
/// row-and-column avoiders are exactly all_s3_avoiders.
ExhaustiveCheck verify_cyclic_columns(int n, const EnumerationOptions& options = {});

/// check_erdos_szekeres over all of S_m.
ExhaustiveCheck verify_erdos_szekeres(int m, int p, int q);

}  // namespace latinpat
