#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latinpat {

/// Raised when a request exceeds a documented enumeration bound.
class feasibility_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A one-line arrangement of 1..m. Values are 1-indexed everywhere in the
/// public API; `p(i)` evaluates the permutation at position i (1-based).
class Permutation {
 public:
  explicit Permutation(std::vector<int> entries);
  Permutation(std::initializer_list<int> entries)
      : Permutation(std::vector<int>(entries)) {}

  static Permutation identity(int m);
  static Permutation decreasing(int m);

  /// Accepts whitespace- or comma-separated integers ("2 1 3 4"), or the
  /// compact digit form ("2134") for m <= 9.
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(entries_.size()); }
  int operator()(int i) const { return entries_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const int> entries() const { return entries_; }

  /// "2 1 3 4"
  std::string to_string() const;
  /// "2134"; falls back to to_string() when m > 9.
  std::string compact() const;

  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> entries_;
};

Permutation complement(const Permutation& p);
Permutation reverse(const Permutation& p);
Permutation inverse(const Permutation& p);
/// (a o b)(i) = a(b(i)). Throws std::invalid_argument on length mismatch.
Permutation compose(const Permutation& a, const Permutation& b);
Permutation direct_sum(const Permutation& low, const Permutation& high);

/// Replaces a sequence of distinct integers by the permutation of 1..k with
/// the same relative order.
Permutation standardize(std::span<const int> values);

/// All permutations of 1..k in lexicographic order.
std::vector<Permutation> all_permutations(int k);

/// Lexicographic rank of p among all permutations of its length (0-based).
std::size_t lex_rank(std::span<const int> p);

// Compiled pattern for repeated containment queries. Each pattern position
// records the earlier positions holding its nearest smaller and nearest
// larger value, so extending a partial embedding costs two comparisons.
class PatternMatcher {
 public:
  explicit PatternMatcher(const Permutation& pattern);

  const Permutation& pattern() const { return pattern_; }
  int length() const { return pattern_.size(); }

  /// Host may be any sequence of distinct integers.
  bool occurs_in(std::span<const int> host) const;

  /// True iff an occurrence uses host.back() as the image of the last
  /// pattern entry. For a prefix that already avoided the pattern this is
  /// exactly the test for whether appending host.back() created one.
  bool occurs_ending_at_last(std::span<const int> host) const;

  /// First occurrence in lexicographic order of positions, 1-based.
  std::optional<std::vector<int>> find(std::span<const int> host) const;

 private:
  bool extend(std::span<const int> host, int depth, std::size_t start, int* values,
              std::size_t* positions, bool anchor_last) const;

  Permutation pattern_;
  std::vector<int> lower_;  // index of nearest smaller earlier value, or -1
  std::vector<int> upper_;  // index of nearest larger earlier value, or -1
};

bool contains(const Permutation& host, const Permutation& pattern);
bool avoids(const Permutation& host, const Permutation& pattern);
bool contains(std::span<const int> host, const Permutation& pattern);

int longest_increasing(std::span<const int> seq);
int longest_decreasing(std::span<const int> seq);
/// max(longest strictly increasing, longest strictly decreasing subsequence).
int longest_monotone(std::span<const int> seq);
int longest_monotone(const Permutation& p);

/// True iff p has an increasing subsequence of length p+1 or a decreasing one
/// of length q+1. Requires len(p) >= pq + 1.
bool check_erdos_szekeres(const Permutation& perm, int p, int q);

std::uint64_t isqrt(std::uint64_t n);
/// floor(sqrt(n - 1)) + 1, the forced monotone length in S_n.
int erdos_szekeres_lambda(std::uint64_t n);

constexpr int kMaxCountPermutationLength = 10;

/// Number of permutations of length m avoiding pattern, by exhaustive scan.
/// Throws feasibility_error for m > kMaxCountPermutationLength.
std::uint64_t count_avoiding_permutations(int m, const Permutation& pattern);

}  // namespace latinpat
