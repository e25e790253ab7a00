#pragma once

// Repetition index: the list of repeated substrings of the text, optional
// pruning of suffix-redundant entries, progressive splitting that recovers
// pruned suffixes, and the merged occurrence list the matcher walks.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gfm/core.hpp"
#include "gfm/suffix_tree.hpp"

namespace gfm {

/// A repeated substring of the text: its length and every start position,
/// sorted ascending. occ() is the occurrence count.
struct Repetition {
  int length = 0;
  std::vector<int> positions;

  int occ() const { return static_cast<int>(positions.size()); }
  int first() const { return positions.front(); }

  friend bool operator==(const Repetition& a, const Repetition& b) {
    return a.length == b.length && a.positions == b.positions;
  }
};

namespace detail {

/// Canonical list order: longest first, then leftmost first occurrence.
/// (length, first position) identifies a substring, so this is a total order.
inline void sort_repetitions(std::vector<Repetition>& reps) {
  std::sort(reps.begin(), reps.end(),
            [](const Repetition& a, const Repetition& b) {
              if (a.length != b.length) return a.length > b.length;
              return a.first() < b.first();
            });
}

/// True when a's string equals the length-|a| suffix of b's string.
inline bool is_suffix_of(const Repetition& a, const Repetition& b,
                         const std::vector<int32_t>& text) {
  if (a.length >= b.length) return false;
  int a0 = a.positions.front();
  int b0 = b.positions.front() + b.length - a.length;
  return std::equal(text.begin() + a0, text.begin() + a0 + a.length,
                    text.begin() + b0);
}

}  // namespace detail

/// All distinct repeated substrings of the tree's text, one Repetition each.
/// Every substring whose extension set branches lives at an internal node;
/// the shorter strings on the same edge occur at exactly the same positions,
/// so each internal node contributes one entry per length on its incoming
/// edge. When `pruned`, entries that are a suffix of a longer entry with the
/// same occurrence count are dropped (split_repetitions can recover them).
inline std::vector<Repetition> extract_repetitions(const SuffixTree& st,
                                                   bool pruned) {
  std::vector<Repetition> reps;
  st.for_each_internal([&](int v) {
    const auto& pos = st.positions(v);
    for (int len = st.parent_depth(v) + 1; len <= st.depth(v); ++len)
      reps.push_back(Repetition{len, pos});
  });

  if (pruned) {
    const auto& text = st.padded_text();
    std::vector<Repetition> kept;
    for (const auto& r : reps) {
      bool redundant = false;
      for (const auto& longer : reps) {
        if (longer.length > r.length && longer.occ() == r.occ() &&
            detail::is_suffix_of(r, longer, text)) {
          redundant = true;
          break;
        }
      }
      if (!redundant) kept.push_back(r);
    }
    reps = std::move(kept);
  }

  detail::sort_repetitions(reps);
  return reps;
}

/// Splits every base repetition into progressively finer suffixes: round k
/// halves each segment of the entry's offset grid, and each new segment
/// start o contributes the suffix beginning at o (for odd segments the kept
/// suffix length rounds up, so {abcd} -> {abcd,cd} -> {abcd,bcd,cd,d}).
/// Rounds are counted from the base list, and ceil(log2 length) rounds
/// reach every suffix. Occurrences of a split suffix are re-resolved
/// through the suffix tree rather than copied from the parent, because a
/// suffix may occur at more positions than the entry it came from.
inline std::vector<Repetition> split_repetitions(
    const SuffixTree& st, const std::vector<Repetition>& base, int rounds) {
  auto key_of = [&](int pos, int len) {
    return std::make_pair(st.locate(pos, len), len);
  };

  std::set<std::pair<int, int>> seen;
  std::vector<Repetition> out;
  for (const auto& r : base) {
    if (seen.insert(key_of(r.first(), r.length)).second) out.push_back(r);
  }

  for (const auto& r : base) {
    // collect the offset grid midpoints introduced within `rounds` halvings
    std::vector<int> offsets;
    std::vector<std::pair<std::pair<int, int>, int>> stack;  // [a,b), depth
    stack.emplace_back(std::make_pair(0, r.length), rounds);
    while (!stack.empty()) {
      auto [seg, depth] = stack.back();
      stack.pop_back();
      auto [a, b] = seg;
      if (depth == 0 || b - a <= 1) continue;
      int mid = a + (b - a) / 2;
      offsets.push_back(mid);
      stack.emplace_back(std::make_pair(a, mid), depth - 1);
      stack.emplace_back(std::make_pair(mid, b), depth - 1);
    }

    for (int off : offsets) {
      int pos = r.first() + off;
      int len = r.length - off;
      auto key = key_of(pos, len);
      if (!seen.insert(key).second) continue;
      out.push_back(Repetition{len, st.positions(key.first)});
    }
  }

  detail::sort_repetitions(out);
  return out;
}

/// One row of the merged occurrence list: a start position together with the
/// repetition (index into the list it was merged from) occurring there.
struct MergedOccurrenceList {
  struct Entry {
    int position;
    int rep_index;
    int occ_index;
  };
  std::vector<Entry> entries;

  std::size_t size() const { return entries.size(); }
};

/// Flattens all position lists into one stream sorted by text position;
/// entries sharing a position are ordered shorter repetition first.
inline MergedOccurrenceList merge_occurrences(
    const std::vector<Repetition>& reps) {
  if (reps.empty())
    throw EmptyRepetitionListError("cannot merge an empty repetition list");
  MergedOccurrenceList merged;
  std::size_t total = 0;
  for (const auto& r : reps) total += r.positions.size();
  merged.entries.reserve(total);
  for (int i = 0; i < static_cast<int>(reps.size()); ++i)
    for (int j = 0; j < reps[i].occ(); ++j)
      merged.entries.push_back({reps[i].positions[j], i, j});
  std::sort(merged.entries.begin(), merged.entries.end(),
            [&](const MergedOccurrenceList::Entry& a,
                const MergedOccurrenceList::Entry& b) {
              if (a.position != b.position) return a.position < b.position;
              if (reps[a.rep_index].length != reps[b.rep_index].length)
                return reps[a.rep_index].length < reps[b.rep_index].length;
              return a.rep_index < b.rep_index;
            });
  return merged;
}

/// Debug rendering, one repetition per line: length<TAB>occ<TAB>pos,pos,...
inline std::string dump_repetitions(const std::vector<Repetition>& reps) {
  std::string out;
  for (const auto& r : reps) {
    out += std::to_string(r.length);
    out += '\t';
    out += std::to_string(r.occ());
    out += '\t';
    for (int i = 0; i < r.occ(); ++i) {
      if (i) out += ',';
      out += std::to_string(r.positions[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace gfm
