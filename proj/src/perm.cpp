#include "latinpat/perm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <sstream>

namespace latinpat {

namespace {

constexpr int kMaxPatternLength = 64;

void validate(const std::vector<int>& entries) {
  if (entries.empty()) {
    throw std::invalid_argument("permutation must be nonempty");
  }
  const auto m = entries.size();
  std::vector<bool> seen(m + 1, false);
  for (std::size_t i = 0; i < m; ++i) {
    const int v = entries[i];
    if (v < 1 || static_cast<std::size_t>(v) > m) {
      throw std::invalid_argument("permutation entry " + std::to_string(v) +
                                  " out of range 1.." + std::to_string(m));
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("permutation repeats value " + std::to_string(v));
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
  validate(entries_);
}

Permutation Permutation::identity(int m) {
  if (m < 1) throw std::invalid_argument("permutation length must be >= 1");
  std::vector<int> e(static_cast<std::size_t>(m));
  std::iota(e.begin(), e.end(), 1);
  return Permutation(std::move(e));
}

Permutation Permutation::decreasing(int m) {
  if (m < 1) throw std::invalid_argument("permutation length must be >= 1");
  std::vector<int> e(static_cast<std::size_t>(m));
  std::iota(e.rbegin(), e.rend(), 1);
  return Permutation(std::move(e));
}

Permutation Permutation::parse(std::string_view text) {
  std::string s(text);
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  const bool has_space = std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  std::vector<int> entries;
  if (has_space) {
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
      if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw std::invalid_argument("malformed permutation token '" + tok + "'");
      }
      entries.push_back(std::stoi(tok));
    }
  } else {
    if (s.empty()) throw std::invalid_argument("empty permutation");
    if (s.size() > 9) {
      throw std::invalid_argument("compact permutation form is limited to length 9: '" + s + "'");
    }
    for (char c : s) {
      if (c < '1' || c > '9') {
        throw std::invalid_argument("malformed compact permutation '" + s + "'");
      }
      entries.push_back(c - '0');
    }
  }
  return Permutation(std::move(entries));
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(entries_[i]);
  }
  return out;
}

std::string Permutation::compact() const {
  if (size() > 9) return to_string();
  std::string out;
  for (int v : entries_) out += static_cast<char>('0' + v);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

Permutation complement(const Permutation& p) {
  const int m = p.size();
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(m));
  for (int v : p.entries()) e.push_back(m + 1 - v);
  return Permutation(std::move(e));
}

Permutation reverse(const Permutation& p) {
  std::vector<int> e(p.entries().rbegin(), p.entries().rend());
  return Permutation(std::move(e));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> e(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) e[static_cast<std::size_t>(p(i) - 1)] = i;
  return Permutation(std::move(e));
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("compose: length mismatch (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  std::vector<int> e;
  e.reserve(static_cast<std::size_t>(a.size()));
  for (int i = 1; i <= b.size(); ++i) e.push_back(a(b(i)));
  return Permutation(std::move(e));
}

Permutation direct_sum(const Permutation& low, const Permutation& high) {
  std::vector<int> e(low.entries().begin(), low.entries().end());
  for (int v : high.entries()) e.push_back(v + low.size());
  return Permutation(std::move(e));
}

Permutation standardize(std::span<const int> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
  });
  std::vector<int> e(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) e[static_cast<std::size_t>(order[r])] = static_cast<int>(r) + 1;
  return Permutation(std::move(e));
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  std::vector<int> e(static_cast<std::size_t>(k));
  std::iota(e.begin(), e.end(), 1);
  do {
    out.emplace_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

std::size_t lex_rank(std::span<const int> p) {
  // Lehmer code in factorial base.
  std::size_t rank = 0;
  const std::size_t k = p.size();
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t smaller_after = 0;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (p[j] < p[i]) ++smaller_after;
    }
    rank = rank * (k - i) + smaller_after;
  }
  return rank;
}

PatternMatcher::PatternMatcher(const Permutation& pattern) : pattern_(pattern) {
  const int k = pattern_.size();
  if (k > kMaxPatternLength) {
    throw std::invalid_argument("pattern length exceeds " + std::to_string(kMaxPatternLength));
  }
  lower_.assign(static_cast<std::size_t>(k), -1);
  upper_.assign(static_cast<std::size_t>(k), -1);
  const auto e = pattern_.entries();
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < a; ++b) {
      if (e[b] < e[a] && (lower_[a] < 0 || e[b] > e[lower_[a]])) lower_[a] = b;
      if (e[b] > e[a] && (upper_[a] < 0 || e[b] < e[upper_[a]])) upper_[a] = b;
    }
  }
}

bool PatternMatcher::extend(std::span<const int> host, int depth, std::size_t start, int* values,
                            std::size_t* positions, bool anchor_last) const {
  const int k = length();
  if (depth == k) return true;
  const std::size_t remaining = static_cast<std::size_t>(k - depth);
  const std::size_t n = host.size();
  const int lo = lower_[static_cast<std::size_t>(depth)];
  const int hi = upper_[static_cast<std::size_t>(depth)];
  // Positions before the last pattern entry leave room for the rest; in
  // anchored mode the last entry is pinned to the final host position.
  std::size_t first = start;
  std::size_t last = n - remaining;
  if (anchor_last && depth == k - 1) first = last = n - 1;
  for (std::size_t i = first; i <= last; ++i) {
    const int v = host[i];
    if (lo >= 0 && v <= values[lo]) continue;
    if (hi >= 0 && v >= values[hi]) continue;
    values[depth] = v;
    positions[depth] = i;
    if (extend(host, depth + 1, i + 1, values, positions, anchor_last)) return true;
  }
  return false;
}

bool PatternMatcher::occurs_in(std::span<const int> host) const {
  if (host.size() < static_cast<std::size_t>(length())) return false;
  std::array<int, kMaxPatternLength> values{};
  std::array<std::size_t, kMaxPatternLength> positions{};
  return extend(host, 0, 0, values.data(), positions.data(), false);
}

bool PatternMatcher::occurs_ending_at_last(std::span<const int> host) const {
  if (host.size() < static_cast<std::size_t>(length())) return false;
  std::array<int, kMaxPatternLength> values{};
  std::array<std::size_t, kMaxPatternLength> positions{};
  return extend(host, 0, 0, values.data(), positions.data(), true);
}

std::optional<std::vector<int>> PatternMatcher::find(std::span<const int> host) const {
  if (host.size() < static_cast<std::size_t>(length())) return std::nullopt;
  std::array<int, kMaxPatternLength> values{};
  std::array<std::size_t, kMaxPatternLength> positions{};
  if (!extend(host, 0, 0, values.data(), positions.data(), false)) return std::nullopt;
  std::vector<int> out;
  for (int a = 0; a < length(); ++a) out.push_back(static_cast<int>(positions[static_cast<std::size_t>(a)]) + 1);
  return out;
}

bool contains(std::span<const int> host, const Permutation& pattern) {
  return PatternMatcher(pattern).occurs_in(host);
}

bool contains(const Permutation& host, const Permutation& pattern) {
  return contains(host.entries(), pattern);
}

bool avoids(const Permutation& host, const Permutation& pattern) { return !contains(host, pattern); }

int longest_increasing(std::span<const int> seq) {
  std::vector<int> tails;
  for (int v : seq) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return static_cast<int>(tails.size());
}

int longest_decreasing(std::span<const int> seq) {
  std::vector<int> reversed(seq.rbegin(), seq.rend());
  return longest_increasing(reversed);
}

int longest_monotone(std::span<const int> seq) {
  return std::max(longest_increasing(seq), longest_decreasing(seq));
}

int longest_monotone(const Permutation& p) { return longest_monotone(p.entries()); }

bool check_erdos_szekeres(const Permutation& perm, int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("p and q must be positive");
  const long long need = static_cast<long long>(p) * q + 1;
  if (perm.size() < need) {
    throw std::invalid_argument("permutation length " + std::to_string(perm.size()) +
                                " is below pq+1 = " + std::to_string(need));
  }
  return longest_increasing(perm.entries()) >= p + 1 || longest_decreasing(perm.entries()) >= q + 1;
}

std::uint64_t isqrt(std::uint64_t n) {
  // Largest r with r*r <= n, by binary search on r in [0, 2^32).
  std::uint64_t lo = 0;
  std::uint64_t hi = std::min<std::uint64_t>(n, 0xFFFFFFFFull) + 1;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (mid * mid <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

int erdos_szekeres_lambda(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("erdos_szekeres_lambda requires n >= 1");
  return static_cast<int>(isqrt(n - 1)) + 1;
}

std::uint64_t count_avoiding_permutations(int m, const Permutation& pattern) {
  if (m < 1) throw std::invalid_argument("length must be >= 1");
  if (m > kMaxCountPermutationLength) {
    throw feasibility_error("count_avoiding_permutations is bounded at length " +
                            std::to_string(kMaxCountPermutationLength));
  }
  const PatternMatcher matcher(pattern);
  std::vector<int> e(static_cast<std::size_t>(m));
  std::iota(e.begin(), e.end(), 1);
  std::uint64_t count = 0;
  do {
    if (!matcher.occurs_in(e)) ++count;
  } while (std::next_permutation(e.begin(), e.end()));
  return count;
}

}  // namespace latinpat
