#pragma once

// Substring matching reduces to whole-text matching: flank the pattern with
// two fresh symbols and the text with two fresh marks. Any whole-text match
// of the flanked pattern against the marked text must send the left flank to
// a prefix ending before the match and the right flank to the remaining
// suffix, so the inner symbols line up with a substring match of the original
// instance — and vice versa. The transform is exact in both directions.

#include <string>
#include <vector>

#include "gfm/core.hpp"

namespace gfm {

namespace detail {

/// A token not present in either string's alphabet, derived from `base`.
inline std::string fresh_token(const SymbolString& a, const SymbolString& b,
                               std::string base) {
  while (a.id_of(base) != -1 || b.id_of(base) != -1) base += "'";
  return base;
}

}  // namespace detail

/// A substring instance rewritten as a whole-text one.
struct WholeTextReduction {
  SymbolString pattern;  ///< left flank + original pattern + right flank
  SymbolString text;     ///< begin mark + original text + end mark
  int original_pattern_len = 0;

  /// Maps a whole-text partition of the reduced instance back to the
  /// substring partition of the original one. The left flank's piece covers
  /// the begin mark plus some prefix of the text, so every boundary shifts
  /// left by the mark; the flank boundaries themselves fall away.
  MatchPartition to_substring(const MatchPartition& whole) const {
    if (whole.pieces() != original_pattern_len + 2)
      throw InvalidPartitionError("reduced partition has wrong arity");
    MatchPartition out;
    out.bounds.reserve(original_pattern_len + 1);
    for (int j = 1; j <= original_pattern_len + 1; ++j)
      out.bounds.push_back(whole.bounds[j] - 1);
    return out;
  }
};

/// Builds the reduced instance. Fresh symbols are spelled from rarely-used
/// tokens and uniquified against both alphabets, so the transform is safe for
/// arbitrary token vocabularies.
inline WholeTextReduction reduce_to_whole_text(const SymbolString& p,
                                               const SymbolString& t) {
  if (p.empty() || t.empty()) throw EmptyInputError("reduce_to_whole_text");
  WholeTextReduction red;
  red.original_pattern_len = static_cast<int>(p.size());

  std::vector<std::string> p_tokens = p.tokens();
  const auto left = detail::fresh_token(p, t, "<pre>");
  const auto right = detail::fresh_token(p, t, "<post>");
  const std::int32_t sigma_p = p.sigma();
  p_tokens.push_back(left);
  p_tokens.push_back(right);
  std::vector<std::int32_t> p_syms;
  p_syms.reserve(p.size() + 2);
  p_syms.push_back(sigma_p);
  for (std::size_t i = 0; i < p.size(); ++i) p_syms.push_back(p[i]);
  p_syms.push_back(sigma_p + 1);
  red.pattern = SymbolString::from_symbols(std::move(p_syms), std::move(p_tokens));

  std::vector<std::string> t_tokens = t.tokens();
  const auto begin_mark = detail::fresh_token(p, t, "<bom>");
  const auto end_mark = detail::fresh_token(p, t, "<eom>");
  const std::int32_t sigma_t = t.sigma();
  t_tokens.push_back(begin_mark);
  t_tokens.push_back(end_mark);
  std::vector<std::int32_t> t_syms;
  t_syms.reserve(t.size() + 2);
  t_syms.push_back(sigma_t);
  for (std::size_t i = 0; i < t.size(); ++i) t_syms.push_back(t[i]);
  t_syms.push_back(sigma_t + 1);
  red.text = SymbolString::from_symbols(std::move(t_syms), std::move(t_tokens));

  return red;
}

}  // namespace gfm
