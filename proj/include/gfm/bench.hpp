#pragma once

// Benchmark harness: deterministic instance generation, a suite runner that
// times the classic baseline against the repetition-guided matcher under a
// shared cutoff, and the bits needed to analyze the results (rank
// correlation, CSV output, preset instance grids).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gfm/baseline.hpp"
#include "gfm/core.hpp"
#include "gfm/matcher.hpp"
#include "gfm/repindex.hpp"
#include "gfm/suffix_tree.hpp"

namespace gfm {

/// Everything needed to regenerate one benchmark instance bit for bit.
struct InstanceSpec {
  std::string id;
  int text_len = 0;
  int text_sigma = 1;
  int pat_len = 0;
  int pat_sigma = 1;
  std::uint64_t seed = 0;
  /// Constrained patterns use every alphabet symbol, repeat their first and
  /// last symbols, and never put two once-only symbols next to each other —
  /// shapes where repetition guidance has something to work with.
  bool constrained = true;
  /// When set, the text comes from this separate seed, so many specs can
  /// share one text while varying the pattern.
  std::optional<std::uint64_t> text_seed;
};

struct Instance {
  InstanceSpec spec;
  SymbolString pattern;
  SymbolString text;
};

namespace detail {

/// Rejection-sampled uniform draw, spelled out so generated instances are
/// identical across standard libraries.
inline int uniform_below(std::mt19937_64& rng, int bound) {
  const std::uint64_t limit =
      ~0ULL - ~0ULL % static_cast<std::uint64_t>(bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<int>(v % static_cast<std::uint64_t>(bound));
}

inline std::string bench_token(int id) {
  static constexpr char kChars[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  if (id < 62) return std::string(1, kChars[id]);
  return "s" + std::to_string(id);
}

inline SymbolString wrap_symbols(std::vector<std::int32_t> syms, int sigma) {
  std::vector<std::string> tokens;
  tokens.reserve(sigma);
  for (int i = 0; i < sigma; ++i) tokens.push_back(bench_token(i));
  return SymbolString::from_symbols(std::move(syms), std::move(tokens));
}

}  // namespace detail

/// Whether `syms` qualifies as a constrained pattern over [0, sigma).
inline bool constrained_pattern_ok(const std::vector<std::int32_t>& syms,
                                   int sigma) {
  if (syms.empty()) return false;
  std::vector<int> count(sigma, 0);
  for (std::int32_t v : syms) ++count[v];
  for (int c = 0; c < sigma; ++c)
    if (count[c] == 0) return false;
  if (count[syms.front()] < 2 || count[syms.back()] < 2) return false;
  for (std::size_t j = 0; j + 1 < syms.size(); ++j)
    if (count[syms[j]] == 1 && count[syms[j + 1]] == 1) return false;
  return true;
}

/// Whether any constrained pattern of this shape exists. With k repeated
/// symbols there are at least max(2k, singles + 1) repeat occurrences: two
/// per repeated symbol, and enough that every once-only symbol gets its own
/// interior gap (ends must repeat, singles cannot touch). The minimum length
/// is that occurrence count plus the singles, minimized over k.
inline bool constrained_satisfiable(int len, int sigma) {
  if (len < 2 || sigma < 1) return false;
  if (sigma == 1) return true;
  int shortest = 2 * sigma;  // k == sigma: everything doubled, no singles
  for (int k = 1; k < sigma; ++k) {
    const int singles = sigma - k;
    shortest = std::min(shortest, std::max(2 * k, singles + 1) + singles);
  }
  return len >= shortest;
}

/// Calls f(pattern) for every constrained pattern in canonical form (symbols
/// numbered in order of first use), lexicographically.
template <class F>
void enumerate_constrained_patterns(int len, int sigma, F&& f) {
  if (len < 1 || sigma < 1) return;
  std::vector<std::int32_t> syms(len);
  std::function<void(int, int)> dfs = [&](int pos, int used) {
    if (sigma - used > len - pos) return;  // not enough room for new symbols
    if (pos == len) {
      if (used == sigma && constrained_pattern_ok(syms, sigma)) f(syms);
      return;
    }
    const int top = std::min(used, sigma - 1);  // reuse, or introduce one new
    for (int c = 0; c <= top; ++c) {
      syms[pos] = c;
      dfs(pos + 1, used + (c == used));
    }
  };
  dfs(0, 0);
}

/// The full canonical census for one shape.
inline std::vector<std::vector<std::int32_t>> constrained_pattern_census(
    int len, int sigma) {
  std::vector<std::vector<std::int32_t>> out;
  enumerate_constrained_patterns(len, sigma,
                                 [&](const std::vector<std::int32_t>& p) {
                                   out.push_back(p);
                                 });
  return out;
}

/// Deterministically regenerates the instance a spec describes.
inline Instance gen_instance(const InstanceSpec& spec) {
  if (spec.text_len < 1 || spec.pat_len < 1 || spec.text_sigma < 1 ||
      spec.pat_sigma < 1)
    throw InvalidSpecError("instance dimensions must be positive");
  if (spec.pat_sigma > spec.pat_len)
    throw InvalidSpecError("pattern alphabet larger than the pattern");
  if (spec.constrained && !constrained_satisfiable(spec.pat_len, spec.pat_sigma))
    throw InvalidSpecError("no constrained pattern of this shape exists");

  std::mt19937_64 rng(spec.seed);
  std::vector<std::int32_t> pat(spec.pat_len);
  for (long tries = 0;; ++tries) {
    if (tries == 1000000)
      throw InvalidSpecError("constrained pattern sampling failed to land");
    for (auto& v : pat)
      v = static_cast<std::int32_t>(detail::uniform_below(rng, spec.pat_sigma));
    if (!spec.constrained) {
      break;
    }
    if (constrained_pattern_ok(pat, spec.pat_sigma)) break;
  }

  std::mt19937_64 text_rng =
      spec.text_seed ? std::mt19937_64(*spec.text_seed) : std::move(rng);
  std::vector<std::int32_t> text(spec.text_len);
  for (auto& v : text)
    v = static_cast<std::int32_t>(detail::uniform_below(text_rng, spec.text_sigma));

  Instance inst;
  inst.spec = spec;
  inst.pattern = detail::wrap_symbols(std::move(pat), spec.pat_sigma);
  inst.text = detail::wrap_symbols(std::move(text), spec.text_sigma);
  return inst;
}

/// One timed cell of the benchmark grid.
struct BenchRecord {
  std::string instance_id;
  std::uint64_t seed = 0;
  int text_len = 0;
  int text_sigma = 0;
  int pat_len = 0;
  int pat_sigma = 0;
  std::size_t rep_count = 0;  ///< distinct repeated substrings of the text
  std::string algorithm;      ///< baseline | heuristic | portfolio
  std::string mode;           ///< whole | substring
  double time_ms = 0.0;
  bool timed_out = false;
  std::size_t matches = 0;
};

/// CSV with a fixed header and fixed number formatting, newline-terminated.
inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& rows) {
  os << "instance_id,seed,text_len,text_sigma,pat_len,pat_sigma,rep_count,"
        "algorithm,mode,time_ms,timed_out,matches\n";
  char buf[32];
  for (const BenchRecord& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f", r.time_ms);
    os << r.instance_id << ',' << r.seed << ',' << r.text_len << ','
       << r.text_sigma << ',' << r.pat_len << ',' << r.pat_sigma << ','
       << r.rep_count << ',' << r.algorithm << ',' << r.mode << ',' << buf
       << ',' << (r.timed_out ? 1 : 0) << ',' << r.matches << '\n';
  }
}

struct SuiteConfig {
  std::vector<InstanceSpec> instances;
  MatchMode mode = MatchMode::substring;
  std::chrono::milliseconds cutoff{1000};
  int workers = 1;  ///< instances run in parallel when more than one
};

namespace detail {

inline const char* mode_name(MatchMode mode) {
  return mode == MatchMode::whole_text ? "whole" : "substring";
}

/// Times one instance: baseline, heuristic, and the portfolio row taken from
/// whichever of the two finished first.
inline void run_instance(const Instance& inst, const SuiteConfig& sc,
                         BenchRecord* out) {
  SuffixTree st(inst.text.symbols());
  const std::size_t rep_count = extract_repetitions(st, false).size();

  BenchRecord proto;
  proto.instance_id = inst.spec.id;
  proto.seed = inst.spec.seed;
  proto.text_len = inst.spec.text_len;
  proto.text_sigma = inst.spec.text_sigma;
  proto.pat_len = inst.spec.pat_len;
  proto.pat_sigma = inst.spec.pat_sigma;
  proto.rep_count = rep_count;
  proto.mode = mode_name(sc.mode);

  using clock = std::chrono::steady_clock;
  BenchRecord& base = out[0];
  base = proto;
  base.algorithm = "baseline";
  auto t0 = clock::now();
  BaselineResult br = amir_nor_match(inst.pattern, inst.text, sc.mode, sc.cutoff);
  base.time_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  base.timed_out = br.timed_out;
  base.matches = br.partitions.size();

  BenchRecord& heur = out[1];
  heur = proto;
  heur.algorithm = "heuristic";
  MatcherConfig cfg;
  cfg.mode = sc.mode;
  cfg.deadline = sc.cutoff;
  t0 = clock::now();
  try {
    MatchResult mr = match(inst.pattern, inst.text, cfg);
    heur.timed_out = mr.timed_out;
    heur.matches = mr.partitions.size();
  } catch (const TooManySolutionsError&) {
    // repetition-free pattern: the full answer is not listable, which is as
    // hard a stop as running out of time
    heur.timed_out = true;
    heur.matches = 0;
  }
  heur.time_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

  BenchRecord& folio = out[2];
  folio = (heur.time_ms <= base.time_ms) ? heur : base;
  folio.algorithm = "portfolio";
}

}  // namespace detail

/// Runs every instance through both algorithms under the shared cutoff and
/// returns three rows per instance (baseline, heuristic, portfolio), in
/// instance order. One unrecorded warm-up run precedes the timings.
inline std::vector<BenchRecord> run_suite(const SuiteConfig& sc) {
  {
    InstanceSpec warm;
    warm.id = "warmup";
    warm.text_len = 32;
    warm.text_sigma = 4;
    warm.pat_len = 4;
    warm.pat_sigma = 2;
    warm.seed = 1;
    BenchRecord sink[3];
    SuiteConfig one = sc;
    one.instances.clear();
    detail::run_instance(gen_instance(warm), one, sink);
  }

  std::vector<BenchRecord> rows(sc.instances.size() * 3);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < sc.instances.size();
         i = next.fetch_add(1))
      detail::run_instance(gen_instance(sc.instances[i]), sc, &rows[i * 3]);
  };
  const int threads = std::max(1, sc.workers);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

/// Tie-averaged ranks, 1-based.
inline std::vector<double> tie_averaged_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

/// Spearman rank correlation with tie-averaged ranks; zero on degenerate
/// input (mismatched, short, or constant series).
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) return 0.0;
  const auto ra = tie_averaged_ranks(a);
  const auto rb = tie_averaged_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0 || vb == 0) return 0.0;
  return cov / std::sqrt(va * vb);
}

/// Text-alphabet sweep: fixed text length and pattern shape, text alphabet
/// sizes cycling 4..16, 500 instances. The reduced variant keeps four
/// alphabet sizes at 50 instances each.
inline std::vector<InstanceSpec> fig2_instances(bool reduced = false) {
  std::vector<InstanceSpec> specs;
  const auto push = [&](int sigma_t, int idx, std::uint64_t seed) {
    InstanceSpec s;
    s.id = (reduced ? "fig2r-s" : "fig2-s") + std::to_string(sigma_t) + "-" +
           std::to_string(idx);
    s.text_len = 200;
    s.text_sigma = sigma_t;
    s.pat_len = 5;
    s.pat_sigma = 3;
    s.seed = seed;
    specs.push_back(std::move(s));
  };
  if (reduced) {
    int counter = 0;
    for (int sigma_t : {4, 8, 12, 16})
      for (int i = 0; i < 50; ++i)
        push(sigma_t, i, 0x2F1620ULL + static_cast<std::uint64_t>(counter++));
  } else {
    for (int i = 0; i < 500; ++i)
      push(4 + i % 13, i, 0x2F1600ULL + static_cast<std::uint64_t>(i));
  }
  return specs;
}

/// Pattern-alphabet sweep over one fixed text: pattern alphabet sizes with
/// several patterns each, all sharing the same text through a common text
/// seed. The reduced variant uses a shorter text and three alphabet sizes.
inline std::vector<InstanceSpec> fig3_instances(bool reduced = false) {
  std::vector<InstanceSpec> specs;
  const int text_len = reduced ? 80 : 200;
  const std::vector<int> sigmas = reduced ? std::vector<int>{2, 3, 4}
                                          : std::vector<int>{2, 3, 4, 5};
  const int per_sigma = reduced ? 11 : 25;
  int counter = 0;
  for (int sigma_p : sigmas) {
    for (int i = 0; i < per_sigma; ++i) {
      InstanceSpec s;
      s.id = (reduced ? "fig3r-p" : "fig3-p") + std::to_string(sigma_p) + "-" +
             std::to_string(i);
      s.text_len = text_len;
      s.text_sigma = 16;
      s.pat_len = reduced ? 6 : 2 * sigma_p + 2;
      s.pat_sigma = sigma_p;
      s.seed = 0x3F1630ULL + static_cast<std::uint64_t>(counter++);
      s.text_seed = 0x3F16FEEDULL;
      specs.push_back(std::move(s));
    }
  }
  return specs;
}

}  // namespace gfm
