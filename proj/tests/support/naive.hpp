#pragma once

// Brute-force reference implementations shared by the unit tests and the
// acceptance suite. Everything here is deliberately simple and slow.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "gfm/core.hpp"
#include "gfm/repindex.hpp"

namespace gfm::testing {

/// Every distinct substring occurring at least twice, with all of its start
/// positions: O(n^3)-ish enumeration keyed on the substring itself.
inline std::vector<Repetition> naive_repetitions(
    const std::vector<int32_t>& text) {
  const int n = static_cast<int>(text.size());
  std::map<std::vector<int32_t>, std::vector<int>> occ;
  for (int len = 1; len <= n; ++len)
    for (int i = 0; i + len <= n; ++i)
      occ[std::vector<int32_t>(text.begin() + i, text.begin() + i + len)]
          .push_back(i);
  std::vector<Repetition> reps;
  for (auto& [key, positions] : occ)
    if (positions.size() >= 2)
      reps.push_back(Repetition{static_cast<int>(key.size()), positions});
  detail::sort_repetitions(reps);
  return reps;
}

/// Uniform integer in [0, bound) from an explicit 64-bit generator, written
/// out so streams are reproducible across standard libraries.
inline int bounded(std::mt19937_64& rng, int bound) {
  const uint64_t limit = ~0ULL - ~0ULL % static_cast<uint64_t>(bound);
  uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<int>(v % static_cast<uint64_t>(bound));
}

/// Random symbol string of the given length over ids [0, sigma).
inline std::vector<int32_t> random_symbols(std::mt19937_64& rng, int len,
                                           int sigma) {
  std::vector<int32_t> out(len);
  for (auto& v : out) v = bounded(rng, sigma);
  return out;
}

/// Wraps raw ids as a SymbolString with single-letter tokens.
inline SymbolString as_string(const std::vector<int32_t>& syms, int sigma) {
  std::vector<std::string> tokens;
  for (int i = 0; i < sigma; ++i)
    tokens.push_back(std::string(1, static_cast<char>('a' + i)));
  return SymbolString::from_symbols(syms, std::move(tokens));
}

}  // namespace gfm::testing
