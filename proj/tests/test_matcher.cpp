#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <vector>

#include "gfm/baseline.hpp"
#include "gfm/core.hpp"
#include "gfm/matcher.hpp"
#include "gfm/repindex.hpp"
#include "support/naive.hpp"

using namespace gfm;
using gfm::testing::as_string;
using gfm::testing::bounded;
using gfm::testing::random_symbols;

namespace {

std::vector<std::vector<int>> all_bounds(const MatchResult& res) {
  std::vector<std::vector<int>> out;
  for (const auto& mp : res.partitions) out.push_back(mp.bounds);
  return out;
}

std::vector<std::vector<int>> all_bounds(const std::vector<MatchPartition>& ps) {
  std::vector<std::vector<int>> out;
  for (const auto& mp : ps) out.push_back(mp.bounds);
  return out;
}

MatcherConfig whole_cfg(Completeness c = Completeness::heuristic_pruned) {
  MatcherConfig cfg;
  cfg.mode = MatchMode::whole_text;
  cfg.completeness = c;
  return cfg;
}

/// Fixture shared by the slot-enumeration tests: repetitions handed in
/// directly, no tree involved.
struct SweepSetup {
  PatternProfile prof;
  std::vector<Repetition> reps;
  MergedOccurrenceList merged;
  RepMapping mapping;

  SweepSetup(const char* pattern, std::vector<Repetition> rs,
             std::vector<int> chosen)
      : prof(profile_pattern(SymbolString::intern_chars(pattern))),
        reps(std::move(rs)),
        merged(merge_occurrences(reps)),
        mapping{std::move(chosen)} {}
};

std::vector<std::vector<int>> slot_positions(const SweepSetup& s,
                                             const std::vector<SubseqOccurrence>& occs) {
  std::vector<std::vector<int>> out;
  for (const auto& occ : occs) {
    std::vector<int> row;
    for (int e : occ.entry_index) row.push_back(s.merged.entries[e].position);
    out.push_back(row);
  }
  return out;
}

}  // namespace

TEST_CASE("mapping enumerator walks admissible choices in order", "[matcher]") {
  // a twice, b three times; repetitions occur 3, 2, 2 times
  auto prof = profile_pattern(SymbolString::intern_chars("ababb"));
  std::vector<Repetition> reps{{1, {0, 2, 4}}, {2, {0, 3}}, {1, {1, 5}}};
  MappingEnumerator me(prof, reps);
  CHECK(me.count() == 3);  // a: any of the three, b: only the occ-3 one
  RepMapping mapping;
  std::vector<std::vector<int>> seen;
  while (me.next(mapping)) seen.push_back(mapping.rep_for_symbol);
  CHECK(seen == std::vector<std::vector<int>>{{0, 0}, {1, 0}, {2, 0}});

  // no repetition occurs three times: b has no choice at all
  std::vector<Repetition> thin{{2, {0, 3}}, {1, {1, 5}}};
  MappingEnumerator none(prof, thin);
  CHECK(none.count() == 0);
  CHECK_FALSE(none.next(mapping));
}

TEST_CASE("subsequence occurrences respect anchor, order and tail", "[matcher]") {
  // aa: no leading gap, so the first slot is pinned to position 0
  SweepSetup pinned("aa", {{1, {0, 2, 4}}}, {0});
  auto occs = find_subsequence_occurrences(pinned.mapping, pinned.prof,
                                           pinned.merged, 5);
  CHECK(slot_positions(pinned, occs) ==
        std::vector<std::vector<int>>{{0, 2}, {0, 4}});

  // xaa: the leading gap frees the anchor but costs one position
  SweepSetup leading("xaa", {{1, {0, 2, 4}}}, {0});
  occs = find_subsequence_occurrences(leading.mapping, leading.prof,
                                      leading.merged, 5);
  CHECK(slot_positions(leading, occs) == std::vector<std::vector<int>>{{2, 4}});

  // aax: the trailing gap needs a position after the last slot's piece
  SweepSetup trailing("aax", {{1, {0, 2, 4}}}, {0});
  occs = find_subsequence_occurrences(trailing.mapping, trailing.prof,
                                      trailing.merged, 5);
  CHECK(slot_positions(trailing, occs) == std::vector<std::vector<int>>{{0, 2}});

  // aba: consecutive slots need room for the gap symbol between them
  SweepSetup spaced("aba", {{1, {0, 1, 2}}}, {0});
  occs = find_subsequence_occurrences(spaced.mapping, spaced.prof,
                                      spaced.merged, 3);
  CHECK(slot_positions(spaced, occs) == std::vector<std::vector<int>>{{0, 2}});
}

TEST_CASE("trim fits pieces between slot positions", "[matcher]") {
  // aa on abab via the length-2 repetition: nothing shrinks
  SweepSetup square("aa", {{2, {0, 2}}}, {0});
  auto placed = trim_and_place(SubseqOccurrence{{0, 1}}, square.mapping,
                               square.prof, square.reps, square.merged, 4);
  REQUIRE(placed.reject == PlacementReject::none);
  CHECK(placed.partition.bounds == std::vector<int>{0, 2, 4});
  CHECK(placed.piece_len == std::vector<int>{2, 2});

  // aba on xyx: the length shrinks to one to clear the middle gap
  SweepSetup mid("aba", {{1, {0, 2}}}, {0});
  placed = trim_and_place(SubseqOccurrence{{0, 1}}, mid.mapping, mid.prof,
                          mid.reps, mid.merged, 3);
  REQUIRE(placed.reject == PlacementReject::none);
  CHECK(placed.partition.bounds == std::vector<int>{0, 1, 2, 3});
  CHECK(placed.gap_space ==
        std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {3, 3}});
}

TEST_CASE("trim rejects infeasible placements", "[matcher]") {
  // aa on aba: the symbol between the two pieces has nowhere to go
  SweepSetup gapless("aa", {{1, {0, 2}}}, {0});
  auto placed = trim_and_place(SubseqOccurrence{{0, 1}}, gapless.mapping,
                               gapless.prof, gapless.reps, gapless.merged, 3);
  CHECK(placed.reject == PlacementReject::adjacency);

  // aa on aaa: text left over after the last piece
  SweepSetup tail("aa", {{1, {0, 1, 2}}}, {0});
  placed = trim_and_place(SubseqOccurrence{{0, 1}}, tail.mapping, tail.prof,
                          tail.reps, tail.merged, 3);
  CHECK(placed.reject == PlacementReject::adjacency);

  // degenerate input: both slots on the same position leaves no room
  placed = trim_and_place(SubseqOccurrence{{1, 1}}, tail.mapping, tail.prof,
                          tail.reps, tail.merged, 3);
  CHECK(placed.reject == PlacementReject::empty_piece);

  // xaa with the first slot at position 0: no room for the leading symbol
  SweepSetup lead("xaa", {{1, {0, 2}}}, {0});
  placed = trim_and_place(SubseqOccurrence{{0, 1}}, lead.mapping, lead.prof,
                          lead.reps, lead.merged, 4);
  CHECK(placed.reject == PlacementReject::gap_too_small);
}

TEST_CASE("whole-text matching on pinned instances", "[matcher]") {
  for (Completeness c : {Completeness::heuristic_pruned, Completeness::full}) {
    auto res = match(SymbolString::intern_chars("aa"),
                     SymbolString::intern_chars("abab"), whole_cfg(c));
    CHECK(all_bounds(res) == std::vector<std::vector<int>>{{0, 2, 4}});

    res = match(SymbolString::intern_chars("aba"),
                SymbolString::intern_chars("xyx"), whole_cfg(c));
    CHECK(all_bounds(res) == std::vector<std::vector<int>>{{0, 1, 2, 3}});

    res = match(SymbolString::intern_chars("aa"),
                SymbolString::intern_chars("aba"), whole_cfg(c));
    CHECK(res.partitions.empty());

    res = match(SymbolString::intern_chars("aa"),
                SymbolString::intern_chars("aaa"), whole_cfg(c));
    CHECK(res.partitions.empty());

    // pattern longer than text
    res = match(SymbolString::intern_chars("aaaa"),
                SymbolString::intern_chars("ab"), whole_cfg(c));
    CHECK(res.partitions.empty());
  }
  CHECK_THROWS_AS(match(SymbolString{}, SymbolString::intern_chars("ab")),
                  EmptyInputError);
}

TEST_CASE("substring matching via the reduction", "[matcher]") {
  MatcherConfig cfg;  // substring is the default mode
  auto res = match(SymbolString::intern_chars("aa"),
                   SymbolString::intern_chars("abab"), cfg);
  CHECK(all_bounds(res) == std::vector<std::vector<int>>{{0, 2, 4}});

  // one repeated symbol in a longer text: every equal adjacent pair counts
  res = match(SymbolString::intern_chars("aa"),
              SymbolString::intern_chars("xaax"), cfg);
  CHECK(all_bounds(res) == std::vector<std::vector<int>>{{1, 2, 3}});
}

TEST_CASE("patterns without repeats fall back to compositions", "[matcher]") {
  auto p = SymbolString::intern_chars("ab");
  auto t = SymbolString::intern_chars("xyz");
  auto res = match(p, t, whole_cfg());
  CHECK(all_bounds(res) == std::vector<std::vector<int>>{{0, 1, 3}, {0, 2, 3}});

  MatcherConfig sub;
  res = match(p, t, sub);
  CHECK(all_bounds(res) == std::vector<std::vector<int>>{
                               {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});

  // six distinct symbols over a long text: too many compositions to list
  std::mt19937_64 rng(99ULL);
  auto big_p = as_string({0, 1, 2, 3, 4, 5}, 6);
  auto big_t = as_string(random_symbols(rng, 100, 3), 3);
  CHECK_THROWS_AS(match(big_p, big_t, whole_cfg()), TooManySolutionsError);
  // a match budget makes the same instance answerable
  MatcherConfig capped = whole_cfg();
  capped.max_matches = 5;
  res = match(big_p, big_t, capped);
  CHECK(res.partitions.size() == 5);
  for (const auto& mp : res.partitions) CHECK(verify(big_p, big_t, mp));
}

TEST_CASE("pruning trades matches for speed, splitting wins them back",
          "[matcher]") {
  // Text q z x y z z x y: the repetition "xy" is pruned away because every
  // occurrence extends to "zxy", and "y" because every occurrence extends to
  // "xy". The pattern c a b a can still match through "zxy", but the other
  // two images are only reachable after splitting rounds.
  auto p = SymbolString::intern_chars("caba");
  auto t = SymbolString::intern_chars("qzxyzzxy");

  auto full = match(p, t, whole_cfg(Completeness::full));
  CHECK(all_bounds(full) == std::vector<std::vector<int>>{
                                {0, 1, 4, 5, 8},    // f(a) = zxy
                                {0, 2, 4, 6, 8},    // f(a) = xy
                                {0, 3, 4, 7, 8}});  // f(a) = y

  // unlimited search on the pruned list stops as soon as anything is found,
  // so the pruned-away images stay missing
  auto pruned = match(p, t, whole_cfg(Completeness::heuristic_pruned));
  CHECK(all_bounds(pruned) == std::vector<std::vector<int>>{{0, 1, 4, 5, 8}});

  // an unmet match budget keeps the splitting rounds coming until the
  // recovered suffixes surface both missing images
  MatcherConfig hungry = whole_cfg(Completeness::heuristic_pruned);
  hungry.max_matches = 10;
  auto recovered = match(p, t, hungry);
  CHECK(all_bounds(recovered) == all_bounds(full));

  // one round recovers "xy" but not "y"
  MatcherConfig one_round = hungry;
  one_round.max_split_rounds = 1;
  auto partial = match(p, t, one_round);
  CHECK(all_bounds(partial) == std::vector<std::vector<int>>{{0, 1, 4, 5, 8},
                                                             {0, 2, 4, 6, 8}});

  // the oracle agrees with the full sweep
  CHECK(all_bounds(full) ==
        all_bounds(oracle_match(p, t, MatchMode::whole_text)));
}

TEST_CASE("gap splits are enumerated on demand", "[matcher]") {
  // a x y a: the two middle symbols share the gap region between the pieces
  auto p = SymbolString::intern_chars("axya");
  auto t = SymbolString::intern_chars("bcdeb");
  auto res = match(p, t, whole_cfg());
  CHECK(all_bounds(res) == std::vector<std::vector<int>>{{0, 1, 2, 4, 5}});

  MatcherConfig splits = whole_cfg();
  splits.all_gap_splits = true;
  res = match(p, t, splits);
  CHECK(all_bounds(res) == std::vector<std::vector<int>>{{0, 1, 2, 4, 5},
                                                         {0, 1, 3, 4, 5}});
  for (const auto& mp : res.partitions) CHECK(verify(p, t, mp));
}

TEST_CASE("full sweep with gap splits equals the oracle", "[matcher]") {
  std::mt19937_64 rng(4242ULL);
  MatcherConfig cfg;
  cfg.completeness = Completeness::full;
  cfg.all_gap_splits = true;
  for (int round = 0; round < 200; ++round) {
    const int m = 1 + bounded(rng, 5);
    const int n = 1 + bounded(rng, 9);
    const int ps = 1 + bounded(rng, 3);
    const int ts = 1 + bounded(rng, 3);
    auto p = as_string(random_symbols(rng, m, ps), ps);
    auto t = as_string(random_symbols(rng, n, ts), ts);
    for (MatchMode mode : {MatchMode::whole_text, MatchMode::substring}) {
      cfg.mode = mode;
      auto res = match(p, t, cfg);
      REQUIRE_FALSE(res.timed_out);
      REQUIRE(res.partitions == oracle_match(p, t, mode));
    }
  }
}

TEST_CASE("pruned results are sound and within the full set", "[matcher]") {
  std::mt19937_64 rng(515151ULL);
  for (int round = 0; round < 100; ++round) {
    const int m = 1 + bounded(rng, 7);
    const int n = 1 + bounded(rng, 18);
    const int ps = 1 + bounded(rng, 3);
    const int ts = 1 + bounded(rng, 4);
    auto p = as_string(random_symbols(rng, m, ps), ps);
    auto t = as_string(random_symbols(rng, n, ts), ts);
    for (MatchMode mode : {MatchMode::whole_text, MatchMode::substring}) {
      MatcherConfig pruned;
      pruned.mode = mode;
      MatcherConfig full;
      full.mode = mode;
      full.completeness = Completeness::full;
      MatcherConfig per_round = pruned;

      std::vector<MatchResult> results;
      try {
        results.push_back(match(p, t, pruned));
        results.push_back(match(p, t, full));
      } catch (const TooManySolutionsError&) {
        continue;  // repetition-free pattern over a roomy text
      }
      int broken = 0;
      for (const auto& res : results)
        for (const auto& mp : res.partitions)
          if (!verify(p, t, mp)) ++broken;
      REQUIRE(broken == 0);
      const auto full_vec = all_bounds(results[1]);
      const std::set<std::vector<int>> full_set(full_vec.begin(), full_vec.end());
      int strays = 0;
      for (const auto& b : all_bounds(results[0]))
        if (!full_set.count(b)) ++strays;
      REQUIRE(strays == 0);

      // more splitting rounds never lose matches
      per_round.max_matches = 1000000;
      std::set<std::vector<int>> prev;
      for (int rounds : {0, 1, 3}) {
        per_round.max_split_rounds = rounds;
        const auto got_vec = all_bounds(match(p, t, per_round));
        const std::set<std::vector<int>> got(got_vec.begin(), got_vec.end());
        int lost = 0;
        for (const auto& b : prev)
          if (!got.count(b)) ++lost;
        REQUIRE(lost == 0);
        prev = std::move(got);
      }
    }
  }
}

TEST_CASE("repeated runs produce identical output", "[matcher]") {
  std::mt19937_64 rng(902ULL);
  auto p = as_string(random_symbols(rng, 6, 2), 2);
  auto t = as_string(random_symbols(rng, 18, 3), 3);
  MatcherConfig cfg;
  cfg.max_matches = 50;
  auto first = match(p, t, cfg);
  auto second = match(p, t, cfg);
  CHECK(all_bounds(first) == all_bounds(second));
}

TEST_CASE("deadline cuts matching short with a partial answer", "[matcher]") {
  // long binary text with a heavily repeated pattern: plenty of mappings and
  // occurrence tuples to keep the sweep busy past any tiny budget
  std::mt19937_64 rng(31337ULL);
  auto p = as_string(random_symbols(rng, 14, 2), 2);
  auto t = as_string(random_symbols(rng, 4000, 2), 2);
  MatcherConfig cfg;
  cfg.mode = MatchMode::substring;
  cfg.completeness = Completeness::full;
  cfg.deadline = std::chrono::milliseconds(30);
  auto begin = std::chrono::steady_clock::now();
  auto res = match(p, t, cfg);
  auto elapsed = std::chrono::steady_clock::now() - begin;
  CHECK(res.timed_out);
  CHECK(elapsed < std::chrono::seconds(10));
  for (const auto& mp : res.partitions) CHECK(verify(p, t, mp));
}
