#pragma once

// Core vocabulary for generalized function matching: interned symbol strings,
// the pattern profile (repeating subsequence + non-repeating gaps), match
// partitions, and the partition checker everything else funnels through.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gfm {

/// Whether f(p) must cover the whole text or just some substring of it.
enum class MatchMode { whole_text, substring };

/// Cooperative time budget. poll() is cheap enough for inner loops: it only
/// consults the clock every 256th call. Once expired, stays expired.
class Deadline {
public:
  Deadline() = default;
  explicit Deadline(std::optional<std::chrono::milliseconds> budget) {
    if (budget) {
      active_ = true;
      limit_ = std::chrono::steady_clock::now() + *budget;
    }
  }

  bool active() const { return active_; }

  /// True when the budget has run out.
  bool poll() {
    if (!active_ || expired_) return expired_;
    if (++calls_ % 256 == 0 && std::chrono::steady_clock::now() >= limit_)
      expired_ = true;
    return expired_;
  }

private:
  bool active_ = false;
  bool expired_ = false;
  std::uint64_t calls_ = 0;
  std::chrono::steady_clock::time_point limit_{};
};

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Empty pattern or text where a non-empty one is required.
struct EmptyInputError : Error {
  using Error::Error;
};

/// Partition whose shape is not even well-formed for the given pattern/text.
struct InvalidPartitionError : Error {
  using Error::Error;
};

/// Occurrence merging was asked for with no repetitions at all.
struct EmptyRepetitionListError : Error {
  using Error::Error;
};

/// An enumeration fallback would exceed its configured solution cap.
struct TooManySolutionsError : Error {
  using Error::Error;
};

/// An exhaustive oracle run would exceed its candidate cap.
struct TooLargeError : Error {
  using Error::Error;
};

/// Unsatisfiable or malformed generator/benchmark parameters.
struct InvalidSpecError : Error {
  using Error::Error;
};

/// A string over a dense integer alphabet. Tokens are interned in order of
/// first appearance, so the first distinct token always gets id 0; this makes
/// two structurally identical strings compare equal symbol-by-symbol.
class SymbolString {
public:
  SymbolString() = default;

  /// Interns a token sequence; ids are assigned by first appearance.
  static SymbolString intern(const std::vector<std::string>& tokens) {
    SymbolString s;
    s.syms_.reserve(tokens.size());
    for (const auto& tok : tokens) s.syms_.push_back(s.intern_one(tok));
    return s;
  }

  /// Interns one token per character.
  static SymbolString intern_chars(std::string_view chars) {
    SymbolString s;
    s.syms_.reserve(chars.size());
    for (char c : chars) s.syms_.push_back(s.intern_one(std::string(1, c)));
    return s;
  }

  /// Builds a string from raw ids plus the token table they index into.
  /// The ids need not be dense-by-first-appearance here; this is the escape
  /// hatch used when deriving strings (flanked patterns, sub-patterns).
  static SymbolString from_symbols(std::vector<int32_t> syms,
                                   std::vector<std::string> tokens) {
    SymbolString s;
    s.syms_ = std::move(syms);
    s.tokens_ = std::move(tokens);
    for (int32_t id = 0; id < static_cast<int32_t>(s.tokens_.size()); ++id)
      s.ids_.emplace(s.tokens_[id], id);
    for (int32_t v : s.syms_)
      if (v < 0 || v >= static_cast<int32_t>(s.tokens_.size()))
        throw InvalidSpecError("symbol id out of token-table range");
    return s;
  }

  std::size_t size() const { return syms_.size(); }
  bool empty() const { return syms_.empty(); }
  int32_t operator[](std::size_t i) const { return syms_[i]; }
  const std::vector<int32_t>& symbols() const { return syms_; }

  /// Number of distinct symbols.
  int32_t sigma() const { return static_cast<int32_t>(tokens_.size()); }

  const std::string& token(int32_t id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  /// Id for a token, or -1 if the token never occurs.
  int32_t id_of(const std::string& tok) const {
    auto it = ids_.find(tok);
    return it == ids_.end() ? -1 : it->second;
  }

  /// Original token sequence.
  std::vector<std::string> restore() const {
    std::vector<std::string> out;
    out.reserve(syms_.size());
    for (int32_t v : syms_) out.push_back(tokens_[v]);
    return out;
  }

  /// Tokens of the half-open range [begin, end), concatenated with `joiner`.
  std::string render(std::size_t begin, std::size_t end,
                     std::string_view joiner = "") const {
    std::string out;
    for (std::size_t i = begin; i < end; ++i) {
      if (i > begin) out += joiner;
      out += tokens_[syms_[i]];
    }
    return out;
  }

  /// True when the length-`len` slices at i and j hold the same symbols.
  bool slice_equal(std::size_t i, std::size_t j, std::size_t len) const {
    return std::equal(syms_.begin() + i, syms_.begin() + i + len,
                      syms_.begin() + j);
  }

private:
  int32_t intern_one(const std::string& tok) {
    auto it = ids_.find(tok);
    if (it != ids_.end()) return it->second;
    int32_t id = static_cast<int32_t>(tokens_.size());
    tokens_.push_back(tok);
    ids_.emplace(tok, id);
    return id;
  }

  std::vector<int32_t> syms_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int32_t> ids_;
};

/// Pattern structure: the subsequence of symbols that occur at least twice,
/// in pattern order, plus the counts (and identities) of the non-repeating
/// symbols sitting before, between and after those repeating positions.
/// For p = fabbcdaae the repeating subsequence is abbaa and the gap counts
/// read 1:0:0:2:0:1 (f | - | - | cd | - | e).
struct PatternProfile {
  std::vector<int32_t> rep_subseq;   ///< repeating symbols, pattern order
  std::vector<int> rep_positions;    ///< pattern index of each rep_subseq slot
  std::vector<int> gap_counts;       ///< size rep_subseq.size()+1
  std::vector<std::vector<int32_t>> gap_symbols;  ///< non-repeating ids per gap
  std::vector<int> symbol_count;     ///< occurrences in p, indexed by symbol id
  std::vector<int32_t> rep_symbols;  ///< distinct repeating ids, appearance order
  std::vector<int> rep_symbol_index; ///< symbol id -> index in rep_symbols or -1

  bool has_repeats() const { return !rep_subseq.empty(); }
};

inline PatternProfile profile_pattern(const SymbolString& p) {
  if (p.empty()) throw EmptyInputError("cannot profile an empty pattern");
  PatternProfile prof;
  prof.symbol_count.assign(p.sigma(), 0);
  for (int32_t v : p.symbols()) ++prof.symbol_count[v];

  prof.rep_symbol_index.assign(p.sigma(), -1);
  prof.gap_symbols.emplace_back();
  prof.gap_counts.push_back(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    int32_t v = p[i];
    if (prof.symbol_count[v] >= 2) {
      if (prof.rep_symbol_index[v] < 0) {
        prof.rep_symbol_index[v] = static_cast<int>(prof.rep_symbols.size());
        prof.rep_symbols.push_back(v);
      }
      prof.rep_subseq.push_back(v);
      prof.rep_positions.push_back(static_cast<int>(i));
      prof.gap_symbols.emplace_back();
      prof.gap_counts.push_back(0);
    } else {
      prof.gap_symbols.back().push_back(v);
      ++prof.gap_counts.back();
    }
  }
  return prof;
}

/// One way of matching a pattern onto a text span. bounds[i] is where piece i
/// starts and bounds.back() is one past the final piece, so bounds has
/// |p|+1 strictly increasing entries; bounds.front() is the match start
/// (always 0 for whole-text matches).
struct MatchPartition {
  std::vector<int> bounds;

  int start() const { return bounds.front(); }
  int end() const { return bounds.back(); }
  int pieces() const { return static_cast<int>(bounds.size()) - 1; }

  friend bool operator==(const MatchPartition& a, const MatchPartition& b) {
    return a.bounds == b.bounds;
  }
  friend bool operator<(const MatchPartition& a, const MatchPartition& b) {
    return a.bounds < b.bounds;
  }
};

/// Checks that `mp` really witnesses f(p) = t[start, end): shape errors throw
/// InvalidPartitionError, while a well-formed partition whose equal pattern
/// symbols map to unequal text slices just returns false.
inline bool verify(const SymbolString& p, const SymbolString& t,
                   const MatchPartition& mp) {
  if (p.empty() || t.empty())
    throw EmptyInputError("verify needs a non-empty pattern and text");
  const auto m = p.size();
  const int n = static_cast<int>(t.size());
  if (mp.bounds.size() != m + 1)
    throw InvalidPartitionError("partition has wrong arity for the pattern");
  for (std::size_t i = 0; i + 1 < mp.bounds.size(); ++i)
    if (mp.bounds[i] >= mp.bounds[i + 1])
      throw InvalidPartitionError("partition bounds must strictly increase");
  if (mp.bounds.front() < 0 || mp.bounds.back() > n)
    throw InvalidPartitionError("partition bounds leave the text");

  // First piece of each symbol is the reference image; later pieces must
  // repeat it exactly.
  std::vector<int> first_at(p.sigma(), -1);
  for (std::size_t i = 0; i < m; ++i) {
    int32_t v = p[i];
    int begin = mp.bounds[i];
    int len = mp.bounds[i + 1] - begin;
    if (first_at[v] < 0) {
      first_at[v] = static_cast<int>(i);
    } else {
      int ref = first_at[v];
      int ref_len = mp.bounds[ref + 1] - mp.bounds[ref];
      if (ref_len != len || !t.slice_equal(mp.bounds[ref], begin, len))
        return false;
    }
  }
  return true;
}

/// Induced symbol images of a verified partition: for each distinct pattern
/// symbol, the [begin, end) text slice of its first piece, in appearance
/// order.
inline std::vector<std::pair<int32_t, std::pair<int, int>>> symbol_images(
    const SymbolString& p, const MatchPartition& mp) {
  std::vector<std::pair<int32_t, std::pair<int, int>>> out;
  std::vector<bool> seen(p.sigma(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    int32_t v = p[i];
    if (seen[v]) continue;
    seen[v] = true;
    out.emplace_back(v, std::make_pair(mp.bounds[i], mp.bounds[i + 1]));
  }
  return out;
}

}  // namespace gfm
