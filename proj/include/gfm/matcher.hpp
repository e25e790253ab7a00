#pragma once

// Repetition-guided matcher. Repeated pattern symbols must map to repeated
// text substrings, so instead of enumerating piece lengths the matcher
// enumerates which repetition each repeated symbol uses, walks the merged
// occurrence list for position tuples realizing the repeating subsequence,
// and then trims piece lengths to fit the gaps between those positions.
// Substring mode runs through the whole-text reduction.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gfm/baseline.hpp"
#include "gfm/core.hpp"
#include "gfm/reduction.hpp"
#include "gfm/repindex.hpp"
#include "gfm/suffix_tree.hpp"

namespace gfm {

/// Which repetition list the sweep runs on. The pruned list is smaller but
/// can miss placements; splitting rounds win them back on demand. The full
/// list needs no splitting at all.
enum class Completeness { heuristic_pruned, full };

struct MatcherConfig {
  MatchMode mode = MatchMode::substring;
  Completeness completeness = Completeness::heuristic_pruned;
  /// Splitting rounds tried when the sweep needs more matches; unset means
  /// enough rounds to cut the longest repetition down to single symbols.
  std::optional<int> max_split_rounds;
  /// Stop after this many matches; unset means find all of them.
  std::optional<std::size_t> max_matches;
  std::optional<std::chrono::milliseconds> deadline;
  /// Emit every way of dividing gap regions between their symbols instead of
  /// the canonical one-symbol-each-last-takes-the-rest division.
  bool all_gap_splits = false;
  /// Candidate budget for patterns without repeated symbols, where matching
  /// degenerates to plain composition enumeration.
  unsigned long long no_repeat_cap = kOracleCap;
};

struct MatchResult {
  std::vector<MatchPartition> partitions;
  bool timed_out = false;
};

/// Chooses one repetition per repeated pattern symbol, indexed like
/// PatternProfile::rep_symbols.
struct RepMapping {
  std::vector<int> rep_for_symbol;
};

/// Admissible mappings in lexicographic order over repetition indices, last
/// symbol varying fastest. Admissible means the repetition occurs at least as
/// often as the symbol does in the pattern.
class MappingEnumerator {
public:
  MappingEnumerator(const PatternProfile& prof, const std::vector<Repetition>& reps) {
    admissible_.resize(prof.rep_symbols.size());
    for (std::size_t x = 0; x < prof.rep_symbols.size(); ++x) {
      const int need = prof.symbol_count[prof.rep_symbols[x]];
      for (std::size_t r = 0; r < reps.size(); ++r)
        if (reps[r].occ() >= need) admissible_[x].push_back(static_cast<int>(r));
      if (admissible_[x].empty()) dead_ = true;
    }
    cursor_.assign(admissible_.size(), 0);
  }

  /// Total number of admissible mappings (saturating).
  unsigned long long count() const {
    if (dead_) return 0;
    unsigned long long total = 1;
    for (const auto& opts : admissible_) {
      const auto mult = static_cast<unsigned long long>(opts.size());
      if (total > detail::kCountSaturated / mult) return detail::kCountSaturated;
      total *= mult;
    }
    return total;
  }

  /// Writes the next mapping; false once exhausted.
  bool next(RepMapping& out) {
    if (dead_) return false;
    if (!started_) {
      started_ = true;
    } else {
      int x = static_cast<int>(cursor_.size()) - 1;
      while (x >= 0 && ++cursor_[x] == admissible_[x].size()) cursor_[x--] = 0;
      if (x < 0) return false;
    }
    out.rep_for_symbol.resize(cursor_.size());
    for (std::size_t x = 0; x < cursor_.size(); ++x)
      out.rep_for_symbol[x] = admissible_[x][cursor_[x]];
    return true;
  }

private:
  std::vector<std::vector<int>> admissible_;
  std::vector<std::size_t> cursor_;
  bool started_ = false;
  bool dead_ = false;
};

/// One realization of the repeating subsequence: an index into the merged
/// occurrence list per slot, positions strictly increasing with room for the
/// gap symbols in between.
struct SubseqOccurrence {
  std::vector<int> entry_index;

  bool operator==(const SubseqOccurrence& other) const {
    return entry_index == other.entry_index;
  }
};

namespace detail {

/// Index of merged-list entries per repetition, position-ascending.
inline std::vector<std::vector<int>> entries_by_rep(
    const MergedOccurrenceList& merged, std::size_t rep_count) {
  std::vector<std::vector<int>> by_rep(rep_count);
  for (std::size_t e = 0; e < merged.entries.size(); ++e)
    by_rep[merged.entries[e].rep_index].push_back(static_cast<int>(e));
  return by_rep;
}

/// Resolves which repetition serves pattern slot `j`.
inline int rep_of_slot(const RepMapping& mapping, const PatternProfile& prof, int j) {
  return mapping.rep_for_symbol[prof.rep_symbol_index[prof.rep_subseq[j]]];
}

/// Enumerates subsequence occurrences for one mapping, pruning on minimum
/// room: a slot needs gap_counts-many symbols before it, one symbol per later
/// slot, and the trailing gap after the last slot. Slot positions come out in
/// lexicographic order. yield returns false to stop; so does the walk.
template <class F>
bool for_each_subseq_occurrence(const RepMapping& mapping,
                                const PatternProfile& prof,
                                const MergedOccurrenceList& merged,
                                const std::vector<std::vector<int>>& by_rep,
                                int text_len, Deadline& deadline,
                                bool& timed_out, F&& yield) {
  const int k = static_cast<int>(prof.rep_subseq.size());
  // min_tail[j]: text needed at and after slot j's position, with minimal
  // (length-1) pieces everywhere
  std::vector<int> min_tail(k);
  int acc = prof.gap_counts[k];
  for (int j = k - 1; j >= 0; --j) {
    acc += 1;
    min_tail[j] = acc;
    acc += prof.gap_counts[j];
  }

  std::vector<int> picked(k);
  std::function<bool(int, int)> walk = [&](int j, int min_pos) -> bool {
    if (deadline.poll()) {
      timed_out = true;
      return false;
    }
    const std::vector<int>& cand = by_rep[rep_of_slot(mapping, prof, j)];
    auto it = std::lower_bound(cand.begin(), cand.end(), min_pos,
                               [&](int e, int pos) {
                                 return merged.entries[e].position < pos;
                               });
    for (; it != cand.end(); ++it) {
      const int s = merged.entries[*it].position;
      if (j == 0 && prof.gap_counts[0] == 0 && s != 0) break;
      if (s + min_tail[j] > text_len) break;  // positions only grow
      picked[j] = *it;
      if (j == k - 1) {
        if (!yield(picked)) return false;
      } else if (!walk(j + 1, s + 1 + prof.gap_counts[j + 1])) {
        return false;
      }
    }
    return true;
  };
  if (k == 0) return true;
  return walk(0, prof.gap_counts[0]);
}

}  // namespace detail

/// All subsequence occurrences for one mapping, in enumeration order.
inline std::vector<SubseqOccurrence> find_subsequence_occurrences(
    const RepMapping& mapping, const PatternProfile& prof,
    const MergedOccurrenceList& merged, int text_len) {
  std::vector<SubseqOccurrence> out;
  auto by_rep = detail::entries_by_rep(merged, [&] {
    std::size_t reps = 0;
    for (const auto& e : merged.entries)
      reps = std::max(reps, static_cast<std::size_t>(e.rep_index) + 1);
    return reps;
  }());
  Deadline none;
  bool timed_out = false;
  detail::for_each_subseq_occurrence(mapping, prof, merged, by_rep, text_len,
                                     none, timed_out,
                                     [&](const std::vector<int>& picked) {
                                       out.push_back(SubseqOccurrence{picked});
                                       return true;
                                     });
  return out;
}

/// Why a placement was rejected, or none when it stands.
enum class PlacementReject { none, empty_piece, adjacency, gap_too_small };

struct Placement {
  PlacementReject reject = PlacementReject::none;
  MatchPartition partition;       ///< canonical bounds (whole text) when accepted
  std::vector<int> piece_len;     ///< resolved piece length per slot
  std::vector<std::pair<int, int>> gap_space;  ///< [begin,end) region per gap
};

/// Trims piece lengths down to the room between slot positions and lays out
/// the canonical partition. Pieces of the same repetition shrink together, so
/// repeated symbols keep equal images by construction. Rejects when a piece
/// would vanish, a zero-symbol gap would be left nonempty, or a gap region is
/// too small for its symbols.
inline Placement trim_and_place(const SubseqOccurrence& occ,
                                const RepMapping& mapping,
                                const PatternProfile& prof,
                                const std::vector<Repetition>& reps,
                                const MergedOccurrenceList& merged,
                                int text_len) {
  const int k = static_cast<int>(prof.rep_subseq.size());
  Placement out;
  std::vector<int> s(k), rep(k);
  for (int j = 0; j < k; ++j) {
    s[j] = merged.entries[occ.entry_index[j]].position;
    rep[j] = detail::rep_of_slot(mapping, prof, j);
  }

  // per-repetition trimmed length: min of the full length and every slot's room
  std::vector<std::pair<int, int>> len_of;  // (rep, length), few entries
  auto len_slot = [&](int r) -> int& {
    for (auto& [rr, len] : len_of)
      if (rr == r) return len;
    len_of.emplace_back(r, reps[r].length);
    return len_of.back().second;
  };
  for (int j = 0; j < k; ++j) {
    const int room = (j + 1 < k ? s[j + 1] - prof.gap_counts[j + 1]
                                : text_len - prof.gap_counts[k]) -
                     s[j];
    int& len = len_slot(rep[j]);
    len = std::min(len, room);
  }
  for (const auto& [r, len] : len_of) {
    if (len <= 0) {
      out.reject = PlacementReject::empty_piece;
      return out;
    }
  }
  out.piece_len.resize(k);
  for (int j = 0; j < k; ++j) out.piece_len[j] = len_slot(rep[j]);

  // gap feasibility with resolved lengths
  out.gap_space.resize(k + 1);
  for (int g = 0; g <= k; ++g) {
    const int begin = (g == 0) ? 0 : s[g - 1] + out.piece_len[g - 1];
    const int end = (g == k) ? text_len : s[g];
    const int space = end - begin;
    out.gap_space[g] = {begin, end};
    if (prof.gap_counts[g] == 0 && space != 0) {
      out.reject = PlacementReject::adjacency;
      return out;
    }
    if (space < prof.gap_counts[g]) {
      out.reject = PlacementReject::gap_too_small;
      return out;
    }
  }

  // canonical layout: each gap symbol takes one text symbol, the last one in
  // the gap absorbs the slack
  out.partition.bounds.reserve(static_cast<std::size_t>(prof.rep_subseq.size()) +
                               prof.gap_symbols.size());
  out.partition.bounds.push_back(0);
  int cursor = 0;
  for (int g = 0; g <= k; ++g) {
    const int cnt = prof.gap_counts[g];
    const int space = out.gap_space[g].second - out.gap_space[g].first;
    for (int i = 0; i < cnt; ++i) {
      cursor += (i == cnt - 1) ? space - (cnt - 1) : 1;
      out.partition.bounds.push_back(cursor);
    }
    if (g < k) {
      cursor += out.piece_len[g];
      out.partition.bounds.push_back(cursor);
    }
  }
  return out;
}

namespace detail {

/// Expands one accepted placement into every gap division, invoking emit for
/// each resulting partition. emit returns false to stop.
template <class F>
bool expand_gap_splits(const Placement& placed, const PatternProfile& prof,
                       F&& emit) {
  const int k = static_cast<int>(prof.rep_subseq.size());
  std::vector<std::vector<int>> split(k + 1);
  std::function<bool(int)> assemble = [&](int g) -> bool {
    if (g > k) {
      MatchPartition mp;
      mp.bounds.push_back(0);
      int cursor = 0;
      for (int gg = 0; gg <= k; ++gg) {
        for (int piece : split[gg]) mp.bounds.push_back(cursor += piece);
        if (gg < k) mp.bounds.push_back(cursor += placed.piece_len[gg]);
      }
      return emit(std::move(mp));
    }
    const int cnt = prof.gap_counts[g];
    const int space = placed.gap_space[g].second - placed.gap_space[g].first;
    if (cnt == 0) {
      split[g].clear();
      return assemble(g + 1);
    }
    return for_each_composition(space, cnt, [&](const std::vector<int>& parts) {
      split[g] = parts;
      return assemble(g + 1);
    });
  };
  return assemble(0);
}

/// Whole-text matching without repeated pattern symbols: every composition of
/// the text works, because no symbol constrains another. Guarded by a budget
/// since the count is astronomical already for modest sizes.
inline void match_no_repeats(const SymbolString& p, const SymbolString& t,
                             const MatcherConfig& cfg, Deadline& deadline,
                             MatchResult& res) {
  const int m = static_cast<int>(p.size());
  const int n = static_cast<int>(t.size());
  const unsigned long long total = composition_count(n, m);
  const unsigned long long needed =
      cfg.max_matches ? std::min<unsigned long long>(total, *cfg.max_matches)
                      : total;
  if (needed > cfg.no_repeat_cap)
    throw TooManySolutionsError(
        "pattern has no repeated symbol; every text composition matches and "
        "there are too many to list");
  for_each_composition(n, m, [&](const std::vector<int>& lens) {
    if (deadline.poll()) {
      res.timed_out = true;
      return false;
    }
    MatchPartition mp;
    mp.bounds.reserve(m + 1);
    int cursor = 0;
    mp.bounds.push_back(0);
    for (int len : lens) mp.bounds.push_back(cursor += len);
    res.partitions.push_back(std::move(mp));
    return !cfg.max_matches || res.partitions.size() < *cfg.max_matches;
  });
}

/// Splitting rounds that suffice to cut the longest repetition down to single
/// symbols, after which nothing finer exists.
inline int auto_split_rounds(const std::vector<Repetition>& base) {
  int longest = 0;
  for (const auto& rep : base) longest = std::max(longest, rep.length);
  int rounds = 0;
  for (int len = 1; len < longest; len *= 2) ++rounds;
  return rounds;
}

inline MatchResult match_whole(const SymbolString& p, const SymbolString& t,
                               const MatcherConfig& cfg, Deadline& deadline) {
  MatchResult res;
  const int m = static_cast<int>(p.size());
  const int n = static_cast<int>(t.size());
  if (m > n) return res;

  const PatternProfile prof = profile_pattern(p);
  if (!prof.has_repeats()) {
    match_no_repeats(p, t, cfg, deadline, res);
    return res;
  }

  SuffixTree st(t.symbols());
  const bool pruned = cfg.completeness == Completeness::heuristic_pruned;
  const std::vector<Repetition> base = extract_repetitions(st, pruned);
  if (base.empty()) return res;  // repeats in p, none in t: nothing can match

  std::set<std::vector<int>> found;
  auto enough = [&] { return cfg.max_matches && found.size() >= *cfg.max_matches; };

  auto sweep = [&](const std::vector<Repetition>& reps) {
    if (reps.empty() || res.timed_out || enough()) return;
    const MergedOccurrenceList merged = merge_occurrences(reps);
    const auto by_rep = entries_by_rep(merged, reps.size());
    MappingEnumerator mappings(prof, reps);
    RepMapping mapping;
    while (mappings.next(mapping)) {
      if (res.timed_out || enough()) return;
      for_each_subseq_occurrence(
          mapping, prof, merged, by_rep, n, deadline, res.timed_out,
          [&](const std::vector<int>& picked) {
            const Placement placed = trim_and_place(
                SubseqOccurrence{picked}, mapping, prof, reps, merged, n);
            if (placed.reject != PlacementReject::none) return true;
            if (cfg.all_gap_splits) {
              expand_gap_splits(placed, prof, [&](MatchPartition mp) {
                if (deadline.poll()) {
                  res.timed_out = true;
                  return false;
                }
                found.insert(std::move(mp.bounds));
                return !enough();
              });
            } else {
              found.insert(placed.partition.bounds);
            }
            return !res.timed_out && !enough();
          });
    }
  };

  sweep(base);
  if (pruned) {
    const int rounds = cfg.max_split_rounds ? *cfg.max_split_rounds
                                            : auto_split_rounds(base);
    for (int r = 1; r <= rounds; ++r) {
      const bool need_more = cfg.max_matches ? found.size() < *cfg.max_matches
                                             : found.empty();
      if (!need_more || res.timed_out) break;
      sweep(split_repetitions(st, base, r));
    }
  }

  res.partitions.reserve(found.size());
  for (const auto& bounds : found) {
    MatchPartition mp;
    mp.bounds = bounds;
    res.partitions.push_back(std::move(mp));
  }
  return res;
}

}  // namespace detail

/// Finds partitions of (a substring of) the text matching the pattern, the
/// repetition-guided way. Output is sorted and duplicate-free. A deadline
/// turns exhaustion into a partial result with timed_out set.
inline MatchResult match(const SymbolString& p, const SymbolString& t,
                         const MatcherConfig& cfg = {}) {
  if (p.empty() || t.empty()) throw EmptyInputError("match");
  Deadline deadline(cfg.deadline);
  if (cfg.mode == MatchMode::substring) {
    const WholeTextReduction red = reduce_to_whole_text(p, t);
    MatcherConfig whole_cfg = cfg;
    whole_cfg.mode = MatchMode::whole_text;
    MatchResult inner = detail::match_whole(red.pattern, red.text, whole_cfg, deadline);
    MatchResult res;
    res.timed_out = inner.timed_out;
    res.partitions.reserve(inner.partitions.size());
    for (const MatchPartition& mp : inner.partitions)
      res.partitions.push_back(red.to_substring(mp));
    std::sort(res.partitions.begin(), res.partitions.end());
    return res;
  }
  return detail::match_whole(p, t, cfg, deadline);
}

}  // namespace gfm
