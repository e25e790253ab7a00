#pragma once

// Reference algorithms. The oracle enumerates every way to cut the text and
// keeps the cuts that verify, so it is correct by construction and useful
// only on small instances. The classic baseline enumerates per-symbol piece
// lengths instead (one non-deterministic choice per alphabet symbol), then
// scans the pattern once per length vector: first sight of a symbol fixes
// its piece, every re-sight compares against that piece and bails on the
// first mismatch.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "gfm/core.hpp"
#include "gfm/reduction.hpp"

namespace gfm {

/// Enumeration budget for the correct-by-construction paths. Instances that
/// would require more candidates than this refuse to run rather than spin.
inline constexpr unsigned long long kOracleCap = 10'000'000ULL;

namespace detail {

inline constexpr unsigned long long kCountSaturated = ~0ULL;

/// C(n, k), saturating instead of overflowing.
inline unsigned long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    unsigned long long num = static_cast<unsigned long long>(n - k + i);
    if (r > kCountSaturated / num) return kCountSaturated;
    r = r * num / i;  // product of i consecutive integers is divisible by i!
  }
  return r;
}

/// Number of ways to write `total` as an ordered sum of `parts` positive
/// integers: C(total-1, parts-1).
inline unsigned long long composition_count(int total, int parts) {
  return binomial(total - 1, parts - 1);
}

/// Calls f(parts) for every ordered decomposition of `total` into `count`
/// positive integers, in lexicographic order. f returns false to stop early;
/// the return value reports whether enumeration ran to completion.
template <class F>
bool for_each_composition(int total, int count, F&& f) {
  if (count <= 0 || total < count) return true;
  std::vector<int> parts(count, 1);
  parts.back() = total - count + 1;
  std::function<bool(int, int)> rec = [&](int idx, int remaining) -> bool {
    if (idx == count - 1) {
      parts[idx] = remaining;
      return f(parts);
    }
    const int reserve = count - idx - 1;  // later parts need 1 each
    for (int v = 1; v + reserve <= remaining; ++v) {
      parts[idx] = v;
      if (!rec(idx + 1, remaining - v)) return false;
    }
    return true;
  };
  return rec(0, total);
}

}  // namespace detail

/// All partitions that verify, by exhaustive enumeration of cut positions.
/// Throws TooLargeError when the candidate count exceeds `cap`.
inline std::vector<MatchPartition> oracle_match(const SymbolString& p,
                                                const SymbolString& t,
                                                MatchMode mode,
                                                unsigned long long cap = kOracleCap) {
  if (p.empty() || t.empty()) throw EmptyInputError("oracle_match");
  if (mode == MatchMode::substring) {
    // Rewritten as a whole-text instance over flanked strings; every reduced
    // partition maps back to a substring partition of the original.
    const WholeTextReduction red = reduce_to_whole_text(p, t);
    std::vector<MatchPartition> reduced =
        oracle_match(red.pattern, red.text, MatchMode::whole_text, cap);
    std::vector<MatchPartition> out;
    out.reserve(reduced.size());
    for (const MatchPartition& mp : reduced) out.push_back(red.to_substring(mp));
    std::sort(out.begin(), out.end());
    return out;
  }

  const int m = static_cast<int>(p.size());
  const int n = static_cast<int>(t.size());
  std::vector<MatchPartition> out;
  if (m > n) return out;
  const unsigned long long candidates = detail::composition_count(n, m);
  if (candidates > cap) throw TooLargeError("oracle_match: candidate space too large");
  detail::for_each_composition(n, m, [&](const std::vector<int>& lens) {
    MatchPartition mp;
    mp.bounds.reserve(m + 1);
    int cursor = 0;
    mp.bounds.push_back(0);
    for (int len : lens) mp.bounds.push_back(cursor += len);
    if (verify(p, t, mp)) out.push_back(std::move(mp));
    return true;
  });
  return out;  // composition order is already sorted partition order
}

/// Substring oracle that tries every (start, end) window and runs the
/// whole-text oracle inside it. Same output as the reduction path; kept as an
/// independent implementation so the two can cross-check each other.
inline std::vector<MatchPartition> oracle_match_windows(const SymbolString& p,
                                                        const SymbolString& t,
                                                        unsigned long long cap = kOracleCap) {
  if (p.empty() || t.empty()) throw EmptyInputError("oracle_match_windows");
  const int m = static_cast<int>(p.size());
  const int n = static_cast<int>(t.size());
  unsigned long long candidates = 0;
  for (int len = m; len <= n; ++len) {
    const unsigned long long per = detail::composition_count(len, m);
    const unsigned long long windows = static_cast<unsigned long long>(n - len + 1);
    if (per != 0 && windows > detail::kCountSaturated / per) {
      candidates = detail::kCountSaturated;
      break;
    }
    const unsigned long long add = per * windows;
    candidates = (candidates > detail::kCountSaturated - add)
                     ? detail::kCountSaturated
                     : candidates + add;
  }
  if (candidates > cap)
    throw TooLargeError("oracle_match_windows: candidate space too large");

  std::set<MatchPartition> out;
  for (int start = 0; start + m <= n; ++start) {
    for (int end = start + m; end <= n; ++end) {
      detail::for_each_composition(end - start, m, [&](const std::vector<int>& lens) {
        MatchPartition mp;
        mp.bounds.reserve(m + 1);
        int cursor = start;
        mp.bounds.push_back(start);
        for (int len : lens) mp.bounds.push_back(cursor += len);
        if (verify(p, t, mp)) out.insert(std::move(mp));
        return true;
      });
    }
  }
  return {out.begin(), out.end()};
}

/// What the classic baseline produced and how hard it worked.
struct BaselineResult {
  std::vector<MatchPartition> partitions;
  bool timed_out = false;
  unsigned long long vectors_examined = 0;  ///< length vectors scanned
};

/// Per-symbol length enumeration with a first-sight/re-sight scan. Whole-text
/// mode enumerates exactly the length vectors whose weighted sum equals |t|;
/// substring mode enumerates, per start position, the vectors that fit in the
/// remaining text. Output is sorted and duplicate-free.
inline BaselineResult amir_nor_match(
    const SymbolString& p, const SymbolString& t, MatchMode mode,
    std::optional<std::chrono::milliseconds> budget = std::nullopt) {
  if (p.empty() || t.empty()) throw EmptyInputError("amir_nor_match");
  BaselineResult res;
  const int m = static_cast<int>(p.size());
  const int n = static_cast<int>(t.size());
  if (m > n) return res;

  const int sigma = static_cast<int>(p.sigma());
  std::vector<int> count(sigma, 0);
  for (int j = 0; j < m; ++j) ++count[p[j]];
  std::vector<int> used;  // ids that actually occur; only they get a length
  for (int c = 0; c < sigma; ++c)
    if (count[c] > 0) used.push_back(c);
  const int dims = static_cast<int>(used.size());
  std::vector<int> reserve(dims, 0);  // min text needed by later dimensions
  for (int u = dims - 2; u >= 0; --u) reserve[u] = reserve[u + 1] + count[used[u + 1]];

  Deadline deadline(budget);
  std::vector<int> len(sigma, 1);
  std::vector<int> piece_start(sigma, -1);

  // Scans the pattern with the current length vector from text position
  // `start`; appends the partition on success.
  auto scan = [&](int start) {
    ++res.vectors_examined;
    std::fill(piece_start.begin(), piece_start.end(), -1);
    int cursor = start;
    for (int j = 0; j < m; ++j) {
      const std::int32_t c = p[j];
      if (piece_start[c] < 0)
        piece_start[c] = cursor;  // first sight fixes the piece
      else if (!t.slice_equal(piece_start[c], cursor, len[c]))
        return;  // re-sight disagrees: next vector
      cursor += len[c];
    }
    MatchPartition mp;
    mp.bounds.reserve(m + 1);
    mp.bounds.push_back(start);
    int acc = start;
    for (int j = 0; j < m; ++j) mp.bounds.push_back(acc += len[p[j]]);
    res.partitions.push_back(std::move(mp));
  };

  // Assigns lengths for used[u..] within `remaining` text symbols. Whole-text
  // mode must land on the exact sum, which pins the last coordinate up to
  // divisibility.
  std::function<void(int, int, int)> assign = [&](int u, int remaining, int start) {
    if (res.timed_out) return;
    if (deadline.poll()) {
      res.timed_out = true;
      return;
    }
    const int c = used[u];
    if (u == dims - 1) {
      if (mode == MatchMode::whole_text) {
        if (remaining % count[c] == 0 && remaining >= count[c]) {
          len[c] = remaining / count[c];
          scan(start);
        }
      } else {
        for (len[c] = 1; count[c] * len[c] <= remaining; ++len[c]) scan(start);
      }
      return;
    }
    for (len[c] = 1; count[c] * len[c] + reserve[u] <= remaining; ++len[c]) {
      assign(u + 1, remaining - count[c] * len[c], start);
      if (res.timed_out) return;
    }
  };

  if (mode == MatchMode::whole_text) {
    assign(0, n, 0);
  } else {
    for (int start = 0; start + m <= n && !res.timed_out; ++start)
      assign(0, n - start, start);
  }

  std::sort(res.partitions.begin(), res.partitions.end());
  res.partitions.erase(std::unique(res.partitions.begin(), res.partitions.end()),
                       res.partitions.end());
  return res;
}

}  // namespace gfm
