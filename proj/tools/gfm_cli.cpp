// Command-line front end: match (find mappings), viz (arc-diagram SVG),
// gen (write instance files), bench (timing grid as CSV).

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfm/arc_svg.hpp"
#include "gfm/baseline.hpp"
#include "gfm/bench.hpp"
#include "gfm/core.hpp"
#include "gfm/matcher.hpp"
#include "gfm/repindex.hpp"
#include "gfm/suffix_tree.hpp"

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// input plumbing

struct InputOpts {
  std::string pattern_inline;
  std::string text_inline;
  std::string pattern_file;
  std::string text_file;
  std::string instance_file;
  std::string tokens = "chars";  // chars | split
};

std::string slurp_line(std::istream& in, const std::string& what) {
  std::string line;
  if (!std::getline(in, line))
    throw gfm::InvalidSpecError("missing " + what + " line in input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string read_file_line(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw gfm::InvalidSpecError("cannot read " + path);
  return slurp_line(in, what);
}

gfm::SymbolString parse_symbols(const std::string& raw, const std::string& tokens) {
  if (tokens == "split") {
    std::istringstream is(raw);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return gfm::SymbolString::intern(toks);
  }
  return gfm::SymbolString::intern_chars(raw);
}

/// Resolves pattern and text from flags, files, an instance file, or stdin
/// (two lines: pattern, then text).
std::pair<gfm::SymbolString, gfm::SymbolString> resolve_inputs(const InputOpts& io) {
  std::string praw, traw;
  bool have_p = false, have_t = false;
  if (!io.instance_file.empty()) {
    std::ifstream in(io.instance_file);
    if (!in) throw gfm::InvalidSpecError("cannot read " + io.instance_file);
    praw = slurp_line(in, "pattern");
    traw = slurp_line(in, "text");
    have_p = have_t = true;
  }
  if (!io.pattern_inline.empty()) praw = io.pattern_inline, have_p = true;
  if (!io.text_inline.empty()) traw = io.text_inline, have_t = true;
  if (!have_p && !io.pattern_file.empty())
    praw = read_file_line(io.pattern_file, "pattern"), have_p = true;
  if (!have_t && !io.text_file.empty())
    traw = read_file_line(io.text_file, "text"), have_t = true;
  if (!have_p && !have_t) {
    praw = slurp_line(std::cin, "pattern");
    traw = slurp_line(std::cin, "text");
    have_p = have_t = true;
  }
  if (!have_p || !have_t)
    throw gfm::InvalidSpecError("need both a pattern and a text");
  return {parse_symbols(praw, io.tokens), parse_symbols(traw, io.tokens)};
}

void add_input_flags(CLI::App* cmd, InputOpts& io, bool pattern_required) {
  cmd->add_option("-p,--pattern", io.pattern_inline, "pattern, inline");
  cmd->add_option("-t,--text", io.text_inline, "text, inline");
  cmd->add_option("--pattern-file", io.pattern_file, "file with the pattern on line 1");
  cmd->add_option("--text-file", io.text_file, "file with the text on line 1");
  cmd->add_option("--instance", io.instance_file,
                  "two-line instance file: pattern, then text");
  cmd->add_option("--tokens", io.tokens, "token format: chars or split")
      ->check(CLI::IsMember({"chars", "split"}));
  (void)pattern_required;
}

// ---------------------------------------------------------------------------
// match plumbing

struct MatchOpts {
  bool whole = false;
  std::string algo = "heuristic";  // heuristic | baseline | oracle | auto
  std::string completeness = "pruned";
  std::optional<int> max_split_rounds;
  std::optional<long long> max_matches;
  bool all = false;
  bool all_gap_splits = false;
  std::optional<long long> timeout_ms;
};

void add_match_flags(CLI::App* cmd, MatchOpts& mo) {
  cmd->add_flag("--whole", mo.whole, "whole-text matching (default: substring)");
  cmd->add_option("--algo", mo.algo, "heuristic, baseline, oracle, or auto")
      ->check(CLI::IsMember({"heuristic", "baseline", "oracle", "auto"}));
  cmd->add_option("--completeness", mo.completeness,
                  "pruned (fast) or full (exhaustive repetition list)")
      ->check(CLI::IsMember({"pruned", "full"}));
  cmd->add_option("--max-split-rounds", mo.max_split_rounds,
                  "cap on occurrence-splitting rounds");
  auto* all = cmd->add_flag("--all", mo.all, "enumerate every match (default)");
  cmd->add_option("--max-matches", mo.max_matches, "stop after this many matches")
      ->excludes(all);
  cmd->add_flag("--all-gap-splits", mo.all_gap_splits,
                "enumerate every layout of the unconstrained gap symbols");
  cmd->add_option("--timeout-ms", mo.timeout_ms, "time budget in milliseconds");
}

gfm::MatcherConfig matcher_config(const MatchOpts& mo) {
  gfm::MatcherConfig cfg;
  cfg.mode = mo.whole ? gfm::MatchMode::whole_text : gfm::MatchMode::substring;
  cfg.completeness = mo.completeness == "full" ? gfm::Completeness::full
                                               : gfm::Completeness::heuristic_pruned;
  cfg.max_split_rounds = mo.max_split_rounds;
  if (mo.max_matches)
    cfg.max_matches = static_cast<std::size_t>(*mo.max_matches);
  cfg.all_gap_splits = mo.all_gap_splits;
  if (mo.timeout_ms) cfg.deadline = std::chrono::milliseconds(*mo.timeout_ms);
  return cfg;
}

struct RunOutcome {
  std::vector<gfm::MatchPartition> partitions;
  bool timed_out = false;
  std::string algo_used;
};

RunOutcome run_algo(const std::string& algo, const gfm::SymbolString& p,
                    const gfm::SymbolString& t, const MatchOpts& mo) {
  const gfm::MatchMode mode =
      mo.whole ? gfm::MatchMode::whole_text : gfm::MatchMode::substring;
  RunOutcome out;
  if (algo == "heuristic") {
    gfm::MatchResult mr = gfm::match(p, t, matcher_config(mo));
    out.partitions = std::move(mr.partitions);
    out.timed_out = mr.timed_out;
    out.algo_used = "heuristic";
  } else if (algo == "baseline") {
    std::optional<std::chrono::milliseconds> budget;
    if (mo.timeout_ms) budget = std::chrono::milliseconds(*mo.timeout_ms);
    gfm::BaselineResult br = gfm::amir_nor_match(p, t, mode, budget);
    out.partitions = std::move(br.partitions);
    out.timed_out = br.timed_out;
    out.algo_used = "baseline";
    if (mo.max_matches &&
        out.partitions.size() > static_cast<std::size_t>(*mo.max_matches))
      out.partitions.resize(static_cast<std::size_t>(*mo.max_matches));
  } else if (algo == "oracle") {
    out.partitions = gfm::oracle_match(p, t, mode);
    out.algo_used = "oracle";
    if (mo.max_matches &&
        out.partitions.size() > static_cast<std::size_t>(*mo.max_matches))
      out.partitions.resize(static_cast<std::size_t>(*mo.max_matches));
  } else {  // auto: both under the same budget, faster finisher wins
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    RunOutcome heur = run_algo("heuristic", p, t, mo);
    const auto heur_ms = clock::now() - t0;
    t0 = clock::now();
    RunOutcome base = run_algo("baseline", p, t, mo);
    const auto base_ms = clock::now() - t0;
    const bool pick_heur = heur.timed_out == base.timed_out
                               ? heur_ms <= base_ms
                               : !heur.timed_out;
    out = pick_heur ? std::move(heur) : std::move(base);
    out.algo_used = pick_heur ? "heuristic" : "baseline";
  }
  return out;
}

// ---------------------------------------------------------------------------
// rendering

bool single_char_tokens(const gfm::SymbolString& s) {
  for (const std::string& tok : s.tokens())
    if (tok.size() != 1) return false;
  return true;
}

std::vector<std::string> token_sequence(const gfm::SymbolString& s) {
  std::vector<std::string> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.token(s[i]));
  return out;
}

std::string render_slice(const gfm::SymbolString& t, int lo, int hi, bool glue) {
  std::string out;
  for (int i = lo; i < hi; ++i) {
    if (!glue && i > lo) out += ' ';
    out += t.token(t[i]);
  }
  return out;
}

/// Pattern symbols in first-appearance order with their images under the
/// partition's mapping.
std::vector<std::pair<std::string, std::pair<int, int>>> mapping_of(
    const gfm::SymbolString& p, const gfm::MatchPartition& mp) {
  std::vector<std::pair<std::string, std::pair<int, int>>> entries;
  std::vector<bool> seen(p.sigma(), false);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (seen[p[j]]) continue;
    seen[p[j]] = true;
    entries.push_back({p.token(p[j]), {mp.bounds[j], mp.bounds[j + 1]}});
  }
  return entries;
}

int cmd_match(const InputOpts& io, const MatchOpts& mo, bool as_json) {
  auto [p, t] = resolve_inputs(io);
  RunOutcome out = run_algo(mo.algo, p, t, mo);
  const bool glue = single_char_tokens(t);

  if (as_json) {
    json doc;
    doc["mode"] = mo.whole ? "whole" : "substring";
    doc["algo"] = out.algo_used;
    doc["timed_out"] = out.timed_out;
    doc["pattern"] = token_sequence(p);
    doc["text"] = token_sequence(t);
    json arr = json::array();
    for (const gfm::MatchPartition& mp : out.partitions) {
      json one;
      one["start"] = mp.bounds.front();
      one["bounds"] = mp.bounds;
      json pieces = json::array();
      for (std::size_t j = 0; j + 1 < mp.bounds.size(); ++j)
        pieces.push_back(render_slice(t, mp.bounds[j], mp.bounds[j + 1], glue));
      one["pieces"] = pieces;
      json f = json::object();
      for (const auto& [tok, span] : mapping_of(p, mp))
        f[tok] = render_slice(t, span.first, span.second, glue);
      one["f"] = f;
      arr.push_back(std::move(one));
    }
    doc["matches"] = std::move(arr);
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const gfm::MatchPartition& mp : out.partitions) {
      std::string line = std::to_string(mp.bounds.front()) + "  ";
      for (std::size_t j = 0; j + 1 < mp.bounds.size(); ++j) {
        if (j > 0) line += '|';
        line += render_slice(t, mp.bounds[j], mp.bounds[j + 1], glue);
      }
      std::cout << line << "\n";
      std::string ftab = "    f:";
      for (const auto& [tok, span] : mapping_of(p, mp))
        ftab += " " + tok + "=" + render_slice(t, span.first, span.second, glue);
      std::cout << ftab << "\n";
    }
    if (out.timed_out)
      std::cerr << "warning: time budget exhausted; match list may be partial\n";
  }
  return out.partitions.empty() ? 1 : 0;
}

int cmd_viz(const InputOpts& io, const MatchOpts& mo, const std::string& out_path) {
  gfm::SymbolString p, t;
  const bool with_pattern =
      !io.pattern_inline.empty() || !io.pattern_file.empty() || !io.instance_file.empty();
  if (with_pattern) {
    std::tie(p, t) = resolve_inputs(io);
  } else if (!io.text_inline.empty()) {
    t = parse_symbols(io.text_inline, io.tokens);
  } else if (!io.text_file.empty()) {
    t = parse_symbols(read_file_line(io.text_file, "text"), io.tokens);
  } else {
    t = parse_symbols(slurp_line(std::cin, "text"), io.tokens);
  }

  gfm::SuffixTree st(t.symbols());
  const auto reps = gfm::extract_repetitions(st, true);
  std::vector<gfm::MatchPartition> matches;
  if (with_pattern) matches = run_algo(mo.algo, p, t, mo).partitions;

  const std::string svg = gfm::render_arc_svg(t, reps, matches);
  if (out_path.empty() || out_path == "-") {
    std::cout << svg;
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw gfm::InvalidSpecError("cannot write " + out_path);
    os << svg;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// gen / bench plumbing

std::vector<gfm::InstanceSpec> preset_specs(const std::string& name) {
  if (name == "fig2") return gfm::fig2_instances(false);
  if (name == "fig2r") return gfm::fig2_instances(true);
  if (name == "fig3") return gfm::fig3_instances(false);
  if (name == "fig3r") return gfm::fig3_instances(true);
  throw gfm::InvalidSpecError("unknown preset " + name);
}

struct GridOpts {
  std::string preset;
  int text_len = 0, text_sigma = 0, pat_len = 0, pat_sigma = 0;
  int count = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> text_seed;
  bool unconstrained = false;
};

std::vector<gfm::InstanceSpec> grid_specs(const GridOpts& go) {
  if (!go.preset.empty()) {
    auto specs = preset_specs(go.preset);
    for (auto& s : specs) s.seed += go.seed;  // --seed shifts the whole grid
    return specs;
  }
  if (go.text_len <= 0 || go.pat_len <= 0)
    throw gfm::InvalidSpecError(
        "need --preset, or --text-len/--text-sigma/--pat-len/--pat-sigma");
  std::vector<gfm::InstanceSpec> specs;
  for (int i = 0; i < go.count; ++i) {
    gfm::InstanceSpec s;
    s.id = "cell-" + std::to_string(i);
    s.text_len = go.text_len;
    s.text_sigma = go.text_sigma > 0 ? go.text_sigma : 4;
    s.pat_len = go.pat_len;
    s.pat_sigma = go.pat_sigma > 0 ? go.pat_sigma : 2;
    s.seed = go.seed + static_cast<std::uint64_t>(i);
    s.constrained = !go.unconstrained;
    s.text_seed = go.text_seed;
    specs.push_back(std::move(s));
  }
  return specs;
}

void add_grid_flags(CLI::App* cmd, GridOpts& go) {
  cmd->add_option("--preset", go.preset, "fig2, fig2r, fig3, or fig3r");
  cmd->add_option("--text-len", go.text_len, "text length");
  cmd->add_option("--text-sigma", go.text_sigma, "text alphabet size");
  cmd->add_option("--pat-len", go.pat_len, "pattern length");
  cmd->add_option("--pat-sigma", go.pat_sigma, "pattern alphabet size");
  cmd->add_option("--count", go.count, "instances to generate");
  cmd->add_option("--seed", go.seed, "base seed (shifts preset seeds)");
  cmd->add_option("--text-seed", go.text_seed,
                  "separate text seed shared by every instance");
  cmd->add_flag("--unconstrained", go.unconstrained,
                "drop the constrained-pattern shape rules");
}

int cmd_gen(const GridOpts& go, const std::string& out_dir) {
  const auto specs = grid_specs(go);
  for (const auto& spec : specs) {
    const gfm::Instance inst = gfm::gen_instance(spec);
    const bool glue =
        single_char_tokens(inst.pattern) && single_char_tokens(inst.text);
    const std::string path = out_dir + "/" + spec.id + ".txt";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw gfm::InvalidSpecError("cannot write " + path);
    os << render_slice(inst.pattern, 0, static_cast<int>(inst.pattern.size()), glue)
       << "\n"
       << render_slice(inst.text, 0, static_cast<int>(inst.text.size()), glue)
       << "\n";
    std::cout << path << "\n";
  }
  return 0;
}

/// key=value lines; '#' starts a comment; flags given on the command line win.
void apply_bench_config(const std::string& path, GridOpts& go,
                        long long& cutoff_ms, int& workers, bool& whole,
                        const CLI::App* cmd) {
  std::ifstream in(path);
  if (!in) throw gfm::InvalidSpecError("cannot read " + path);
  const auto flag_given = [&](const std::string& name) {
    return cmd->count(name) > 0;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw gfm::InvalidSpecError("bad config line " + std::to_string(lineno) +
                                  " in " + path);
    const std::string key = trimmed.substr(0, eq);
    const std::string val = trimmed.substr(eq + 1);
    // maps each config key to the flag that overrides it
    static const std::map<std::string, std::string> kKeys = {
        {"preset", "--preset"},           {"text_len", "--text-len"},
        {"text_sigma", "--text-sigma"},   {"pat_len", "--pat-len"},
        {"pat_sigma", "--pat-sigma"},     {"count", "--count"},
        {"seed", "--seed"},               {"text_seed", "--text-seed"},
        {"unconstrained", "--unconstrained"}, {"cutoff_ms", "--cutoff-ms"},
        {"workers", "--workers"},         {"mode", "--whole"}};
    const auto known = kKeys.find(key);
    if (known == kKeys.end())
      throw gfm::InvalidSpecError("unknown config key " + key + " in " + path);
    if (flag_given(known->second)) continue;  // command-line flags win
    try {
      if (key == "preset") go.preset = val;
      else if (key == "text_len") go.text_len = std::stoi(val);
      else if (key == "text_sigma") go.text_sigma = std::stoi(val);
      else if (key == "pat_len") go.pat_len = std::stoi(val);
      else if (key == "pat_sigma") go.pat_sigma = std::stoi(val);
      else if (key == "count") go.count = std::stoi(val);
      else if (key == "seed") go.seed = std::stoull(val);
      else if (key == "text_seed") go.text_seed = std::stoull(val);
      else if (key == "unconstrained") go.unconstrained = val == "1" || val == "true";
      else if (key == "cutoff_ms") cutoff_ms = std::stoll(val);
      else if (key == "workers") workers = std::stoi(val);
      else whole = val == "whole";
    } catch (const std::invalid_argument&) {
      throw gfm::InvalidSpecError("bad value for " + key + " in " + path);
    } catch (const std::out_of_range&) {
      throw gfm::InvalidSpecError("bad value for " + key + " in " + path);
    }
  }
}

int cmd_bench(const GridOpts& go, long long cutoff_ms, int workers, bool whole,
              const std::string& out_path) {
  gfm::SuiteConfig sc;
  sc.instances = grid_specs(go);
  sc.mode = whole ? gfm::MatchMode::whole_text : gfm::MatchMode::substring;
  sc.cutoff = std::chrono::milliseconds(cutoff_ms);
  sc.workers = workers;
  const auto rows = gfm::run_suite(sc);
  if (out_path.empty() || out_path == "-") {
    gfm::write_csv(std::cout, rows);
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw gfm::InvalidSpecError("cannot write " + out_path);
    gfm::write_csv(os, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized function matching: solver, visualizer, benchmarks"};
  app.require_subcommand(1);

  InputOpts match_io, viz_io;
  MatchOpts match_mo, viz_mo;
  bool match_json = false;
  std::string viz_out;
  GridOpts gen_go, bench_go;
  std::string gen_out_dir = ".";
  long long bench_cutoff = 1000;
  int bench_workers = 1;
  bool bench_whole = false;
  std::string bench_out, bench_config;

  CLI::App* m = app.add_subcommand("match", "find pattern-to-text mappings");
  add_input_flags(m, match_io, true);
  add_match_flags(m, match_mo);
  m->add_flag("--json", match_json, "machine-readable output");

  CLI::App* v = app.add_subcommand("viz", "arc-diagram SVG of repetitions and matches");
  add_input_flags(v, viz_io, false);
  add_match_flags(v, viz_mo);
  v->add_option("-o,--out", viz_out, "output file (default stdout)");

  CLI::App* g = app.add_subcommand("gen", "write two-line instance files");
  add_grid_flags(g, gen_go);
  g->add_option("--out-dir", gen_out_dir, "directory for the instance files");

  CLI::App* b = app.add_subcommand("bench", "time baseline vs heuristic, CSV out");
  add_grid_flags(b, bench_go);
  b->add_option("--config", bench_config, "key=value config file (flags win)");
  b->add_option("--cutoff-ms", bench_cutoff, "per-run time budget");
  b->add_option("--workers", bench_workers, "parallel instance runners");
  b->add_flag("--whole", bench_whole, "whole-text matching (default: substring)");
  b->add_option("-o,--out", bench_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, bad usage is an error
  }

  try {
    if (m->parsed()) return cmd_match(match_io, match_mo, match_json);
    if (v->parsed()) return cmd_viz(viz_io, viz_mo, viz_out);
    if (g->parsed()) return cmd_gen(gen_go, gen_out_dir);
    if (b->parsed()) {
      if (!bench_config.empty())
        apply_bench_config(bench_config, bench_go, bench_cutoff, bench_workers,
                           bench_whole, b);
      return cmd_bench(bench_go, bench_cutoff, bench_workers, bench_whole,
                       bench_out);
    }
  } catch (const gfm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
