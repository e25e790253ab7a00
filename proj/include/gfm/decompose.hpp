#pragma once

// Pattern decomposition. When disjoint parts of the pattern share no symbol,
// their matches are independent and can be found separately, turning one
// big search into a product of small ones. Two shapes are recognized: a
// left-to-right sequence of symbol-disjoint pieces, and an inward split
// prefix-middle-suffix where the middle shares nothing with the flanks. Matches are
// combined through fresh wildcard symbols: a piece is matched with a
// wildcard appended to stand for the unmatched remainder, and an inward
// middle is matched inside the span a wildcard captured.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gfm/core.hpp"
#include "gfm/matcher.hpp"
#include "gfm/reduction.hpp"

namespace gfm {

struct DecompositionPlan {
  enum class Kind { sequence, inward };
  Kind kind = Kind::sequence;
  /// Sequence: consecutive [begin,end) pattern ranges, two or more.
  std::vector<std::pair<int, int>> pieces;
  /// Inward: the middle part is [inner_begin, inner_end); the flanks are
  /// everything before and after, both nonempty.
  int inner_begin = 0;
  int inner_end = 0;
};

/// Looks for structure worth exploiting. Prefers the sequence shape: a cut at
/// k stands when no symbol before k occurs at or after k, and every standing
/// cut is taken. Otherwise tries the inward shape, maximizing the combined
/// flank length (the middle is matched in a recursive call, so smaller is
/// better); on ties the prefix wins. Returns nothing when neither applies.
inline std::optional<DecompositionPlan> plan_decomposition(const SymbolString& p) {
  const int m = static_cast<int>(p.size());
  if (m < 2) return std::nullopt;
  std::vector<int> first_occ(p.sigma(), m), last_occ(p.sigma(), -1);
  for (int j = 0; j < m; ++j) {
    const std::int32_t v = p[j];
    first_occ[v] = std::min(first_occ[v], j);
    last_occ[v] = std::max(last_occ[v], j);
  }

  std::vector<int> cuts;
  int prefix_reach = -1;  // rightmost occurrence of any symbol seen so far
  for (int k = 1; k < m; ++k) {
    prefix_reach = std::max(prefix_reach, last_occ[p[k - 1]]);
    if (prefix_reach < k) cuts.push_back(k);
  }
  if (!cuts.empty()) {
    DecompositionPlan plan;
    plan.kind = DecompositionPlan::Kind::sequence;
    int begin = 0;
    for (int cut : cuts) {
      plan.pieces.emplace_back(begin, cut);
      begin = cut;
    }
    plan.pieces.emplace_back(begin, m);
    return plan;
  }

  // Inward: for each middle start, grow the middle until it is closed under
  // occurrence spans; it qualifies if nothing inside also occurs before it.
  int best_score = -1, best_a = -1, best_b = -1;
  for (int a = 1; a + 1 < m; ++a) {
    int b = a + 1;
    bool escaped = false;
    for (int j = a; j < b; ++j) {
      if (first_occ[p[j]] < a) {
        escaped = true;  // occurs in the prefix too: no middle starts here
        break;
      }
      b = std::max(b, last_occ[p[j]] + 1);
    }
    if (escaped || b >= m) continue;
    const int score = a + (m - b);
    if (score > best_score || (score == best_score && a > best_a)) {
      best_score = score;
      best_a = a;
      best_b = b;
    }
  }
  if (best_score < 0) return std::nullopt;
  DecompositionPlan plan;
  plan.kind = DecompositionPlan::Kind::inward;
  plan.inner_begin = best_a;
  plan.inner_end = best_b;
  return plan;
}

namespace detail {

/// Pattern slice [begin,end) with the parent's token table, optionally with a
/// fresh wildcard symbol appended or inserted.
inline SymbolString pattern_slice(const SymbolString& p, int begin, int end) {
  std::vector<std::int32_t> syms;
  syms.reserve(end - begin);
  for (int j = begin; j < end; ++j) syms.push_back(p[j]);
  return SymbolString::from_symbols(std::move(syms), p.tokens());
}

inline SymbolString text_slice(const SymbolString& t, int begin, int end) {
  std::vector<std::int32_t> syms;
  syms.reserve(end - begin);
  for (int j = begin; j < end; ++j) syms.push_back(t[j]);
  return SymbolString::from_symbols(std::move(syms), t.tokens());
}

/// The wildcard id: one past the pattern's alphabet, with its own token.
inline SymbolString with_wildcard_tail(const SymbolString& p, int begin, int end) {
  std::vector<std::int32_t> syms;
  syms.reserve(end - begin + 1);
  for (int j = begin; j < end; ++j) syms.push_back(p[j]);
  syms.push_back(p.sigma());
  auto tokens = p.tokens();
  tokens.push_back(fresh_token(p, p, "<rest>"));
  return SymbolString::from_symbols(std::move(syms), std::move(tokens));
}

inline MatchResult match_decomposed_whole(const SymbolString& p,
                                          const SymbolString& t,
                                          const MatcherConfig& cfg);

/// Sub-matches run whole-text, unbounded: an early stop inside one factor
/// would lose combinations of the product.
inline MatcherConfig sub_config(const MatcherConfig& cfg) {
  MatcherConfig sub = cfg;
  sub.mode = MatchMode::whole_text;
  sub.max_matches = std::nullopt;
  return sub;
}

/// Left-to-right product over sequence pieces. Piece i is matched against the
/// remaining text with a wildcard standing for everything after it; each cut
/// the wildcard allows becomes a recursion offset. Results per (piece,
/// offset) are cached, since many prefixes land on the same offset.
inline void run_sequence(const DecompositionPlan& plan, const SymbolString& p,
                         const SymbolString& t, const MatcherConfig& cfg,
                         std::set<std::vector<int>>& found, bool& timed_out) {
  const int n = static_cast<int>(t.size());
  const int k = static_cast<int>(plan.pieces.size());
  const MatcherConfig sub = sub_config(cfg);
  std::map<std::pair<int, int>, std::vector<MatchPartition>> cache;

  auto piece_matches = [&](int i, int offset) -> const std::vector<MatchPartition>& {
    auto key = std::make_pair(i, offset);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto [begin, end] = plan.pieces[i];
    const SymbolString sub_p = (i == k - 1)
                                   ? pattern_slice(p, begin, end)
                                   : with_wildcard_tail(p, begin, end);
    MatchResult res = match(sub_p, text_slice(t, offset, n), sub);
    timed_out = timed_out || res.timed_out;
    return cache.emplace(key, std::move(res.partitions)).first->second;
  };

  const bool capped = cfg.max_matches.has_value();
  std::vector<int> bounds{0};
  std::function<bool(int, int)> rec = [&](int i, int offset) -> bool {
    if (timed_out || (capped && found.size() >= *cfg.max_matches)) return false;
    if (found.size() > kOracleCap)
      throw TooManySolutionsError("decomposed match: too many combinations");
    const auto [begin, end] = plan.pieces[i];
    const int len = end - begin;
    for (const MatchPartition& mp : piece_matches(i, offset)) {
      const std::size_t base = bounds.size();
      for (int j = 1; j <= len; ++j) bounds.push_back(offset + mp.bounds[j]);
      bool keep_going = true;
      if (i == k - 1) {
        found.insert(bounds);
        keep_going = !capped || found.size() < *cfg.max_matches;
      } else {
        keep_going = rec(i + 1, offset + mp.bounds[len]);
      }
      bounds.resize(base);
      if (!keep_going) return false;
    }
    return true;
  };
  rec(0, 0);
}

/// Inward product: the flanks are matched with a wildcard in the middle,
/// then the middle pattern is matched inside every span the wildcard took.
inline void run_inward(const DecompositionPlan& plan, const SymbolString& p,
                       const SymbolString& t, const MatcherConfig& cfg,
                       std::set<std::vector<int>>& found, bool& timed_out) {
  const int m = static_cast<int>(p.size());
  const int n = static_cast<int>(t.size());
  const int a = plan.inner_begin, b = plan.inner_end;
  const MatcherConfig sub = sub_config(cfg);

  // flank pattern: the middle collapses into one fresh wildcard symbol
  std::vector<std::int32_t> syms;
  for (int j = 0; j < a; ++j) syms.push_back(p[j]);
  syms.push_back(p.sigma());
  for (int j = b; j < m; ++j) syms.push_back(p[j]);
  auto tokens = p.tokens();
  tokens.push_back(fresh_token(p, p, "<mid>"));
  const auto flanks = SymbolString::from_symbols(std::move(syms), std::move(tokens));
  MatchResult flank_res = match(flanks, t, sub);
  timed_out = timed_out || flank_res.timed_out;

  const SymbolString middle = pattern_slice(p, a, b);
  std::map<std::pair<int, int>, std::vector<MatchPartition>> span_cache;
  const bool capped = cfg.max_matches.has_value();

  for (const MatchPartition& mp : flank_res.partitions) {
    if (timed_out || (capped && found.size() >= *cfg.max_matches)) return;
    const int span_begin = mp.bounds[a], span_end = mp.bounds[a + 1];
    auto key = std::make_pair(span_begin, span_end);
    auto it = span_cache.find(key);
    if (it == span_cache.end()) {
      MatchResult inner =
          match_decomposed_whole(middle, text_slice(t, span_begin, span_end), sub);
      timed_out = timed_out || inner.timed_out;
      it = span_cache.emplace(key, std::move(inner.partitions)).first;
    }
    for (const MatchPartition& in : it->second) {
      std::vector<int> bounds;
      bounds.reserve(m + 1);
      for (int j = 0; j <= a; ++j) bounds.push_back(mp.bounds[j]);
      for (int j = 1; j < b - a; ++j) bounds.push_back(span_begin + in.bounds[j]);
      for (int j = a + 1; j <= m - (b - a) + 1; ++j) bounds.push_back(mp.bounds[j]);
      found.insert(std::move(bounds));
      if (found.size() > kOracleCap)
        throw TooManySolutionsError("decomposed match: too many combinations");
      if (capped && found.size() >= *cfg.max_matches) return;
    }
  }
}

inline MatchResult match_decomposed_whole(const SymbolString& p,
                                          const SymbolString& t,
                                          const MatcherConfig& cfg) {
  const auto plan = plan_decomposition(p);
  if (!plan) return match(p, t, cfg);
  MatchResult res;
  if (p.size() > t.size()) return res;
  std::set<std::vector<int>> found;
  if (plan->kind == DecompositionPlan::Kind::sequence)
    run_sequence(*plan, p, t, cfg, found, res.timed_out);
  else
    run_inward(*plan, p, t, cfg, found, res.timed_out);
  res.partitions.reserve(found.size());
  for (const auto& bounds : found) {
    MatchPartition mp;
    mp.bounds = bounds;
    res.partitions.push_back(std::move(mp));
  }
  return res;
}

}  // namespace detail

/// match() with decomposition on top: structure permitting, the pattern is
/// matched piecewise and the piecewise results are combined. Output contract
/// is the same as match(); patterns without usable structure fall through to
/// it unchanged.
inline MatchResult match_decomposed(const SymbolString& p, const SymbolString& t,
                                    const MatcherConfig& cfg = {}) {
  if (p.empty() || t.empty()) throw EmptyInputError("match_decomposed");
  if (cfg.mode == MatchMode::substring) {
    const WholeTextReduction red = reduce_to_whole_text(p, t);
    MatcherConfig whole_cfg = cfg;
    whole_cfg.mode = MatchMode::whole_text;
    MatchResult inner =
        detail::match_decomposed_whole(red.pattern, red.text, whole_cfg);
    MatchResult res;
    res.timed_out = inner.timed_out;
    res.partitions.reserve(inner.partitions.size());
    for (const MatchPartition& mp : inner.partitions)
      res.partitions.push_back(red.to_substring(mp));
    std::sort(res.partitions.begin(), res.partitions.end());
    return res;
  }
  return detail::match_decomposed_whole(p, t, cfg);
}

}  // namespace gfm
