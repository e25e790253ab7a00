#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfm/core.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string golden(const std::string& name) {
  return read_file(fs::path(GFM_GOLDEN_DIR) / name);
}

CliRun run_cli(const std::string& args) {
  const fs::path out = fs::absolute("cli_stdout.tmp");
  const fs::path err = fs::absolute("cli_stderr.tmp");
  const std::string cmd = std::string(GFM_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out);
  r.err = read_file(err);
  return r;
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  REQUIRE(os.good());
  os << content;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("match prints partitions with mappings and exits by match count") {
  CliRun hit = run_cli("match -p aa -t abab --whole");
  CHECK(hit.code == 0);
  CHECK(hit.out == golden("match_aa_abab.txt"));

  CliRun miss = run_cli("match -p ab -t q --whole");
  CHECK(miss.code == 1);
  CHECK(miss.out.empty());
}

TEST_CASE("every algorithm agrees on a simple instance") {
  const CliRun heur = run_cli("match -p aba -t xyx --algo heuristic");
  for (const char* algo : {"baseline", "oracle", "auto"}) {
    CliRun other = run_cli(std::string("match -p aba -t xyx --algo ") + algo);
    CHECK(other.code == 0);
    CHECK(other.out == heur.out);
  }
  CHECK(heur.out.substr(0, heur.out.find('\n')) == "0  x|y|x");
}

TEST_CASE("json output is frozen and re-verifies against the library") {
  CliRun r = run_cli("match -p abba -t xzzx --whole --json");
  CHECK(r.code == 0);
  CHECK(r.out == golden("match_abba_xzzx.json"));

  const json doc = json::parse(r.out);
  std::vector<std::string> ptoks = doc["pattern"], ttoks = doc["text"];
  const auto p = gfm::SymbolString::intern(ptoks);
  const auto t = gfm::SymbolString::intern(ttoks);
  REQUIRE(doc["matches"].size() == 1);
  for (const json& m : doc["matches"]) {
    gfm::MatchPartition mp;
    mp.bounds = m["bounds"].get<std::vector<int>>();
    CHECK(gfm::verify(p, t, mp));
    CHECK(m["start"] == mp.bounds.front());
  }
}

TEST_CASE("split token mode handles multi-character symbols") {
  CliRun r = run_cli(
      "match -p \"ab ba ab\" -t \"xy zz xy\" --tokens split --whole");
  CHECK(r.code == 0);
  CHECK(r.out == golden("match_split_tokens.txt"));
}

TEST_CASE("generated instance files round-trip through match") {
  const fs::path dir = fs::absolute("cli_gen_tmp");
  fs::create_directories(dir);
  const std::string gen_args =
      "gen --text-len 20 --text-sigma 3 --pat-len 5 --pat-sigma 2 --count 1 "
      "--seed 9 --out-dir " + dir.string();
  CliRun gen = run_cli(gen_args);
  CHECK(gen.code == 0);
  const fs::path inst = dir / "cell-0.txt";
  REQUIRE(fs::exists(inst));
  const std::string first = read_file(inst);

  // regeneration is byte-identical
  CliRun again = run_cli(gen_args);
  CHECK(again.code == 0);
  CHECK(read_file(inst) == first);

  CliRun m = run_cli("match --instance " + inst.string());
  CHECK(m.code == 0);  // this seeded instance has matches
  CHECK(m.out.find("f:") != std::string::npos);
}

TEST_CASE("viz output matches goldens and is deterministic") {
  CliRun bare = run_cli("viz -t abab");
  CHECK(bare.code == 0);
  CHECK(bare.out == golden("viz_abab.svg"));

  CliRun overlay = run_cli("viz -p aa -t abab --whole");
  CHECK(overlay.code == 0);
  CHECK(overlay.out == golden("viz_aa_abab.svg"));
  CHECK(run_cli("viz -p aa -t abab --whole").out == overlay.out);

  // matches appear only in the overlay, below the shared upper half
  CHECK(bare.out.find("#c62828") == std::string::npos);
  CHECK(overlay.out.find("#c62828") != std::string::npos);

  const fs::path out = fs::absolute("cli_viz_tmp.svg");
  CliRun to_file = run_cli("viz -t abab -o " + out.string());
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  CHECK(read_file(out) == bare.out);
}

TEST_CASE("viz refuses texts beyond the layout budget") {
  const std::string big(600, 'a');
  CliRun r = run_cli("viz -t " + big);
  CHECK(r.code == 2);
  CHECK(r.err.find("layout budget") != std::string::npos);
}

TEST_CASE("bad inputs exit with code two") {
  CHECK(run_cli("match -p aa -t abab --algo nope").code == 2);
  CHECK(run_cli("match --instance no_such_file.txt").code == 2);
  CHECK(run_cli("gen --pat-len 2 --pat-sigma 3 --text-len 5").code == 2);
  CHECK(run_cli("gen --preset nope").code == 2);
  CHECK(run_cli("bench").code == 2);  // no preset and no dimensions
  CHECK(run_cli("nope").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("bench reads config files and flags win over them") {
  const fs::path cfg = fs::absolute("cli_bench_cfg.tmp");
  write_file(cfg, "# tiny grid\n"
                  "text_len = 16\n"
                  "text_sigma = 3\n"
                  "pat_len = 4\n"
                  "pat_sigma = 2\n"
                  "count = 2\n"
                  "seed = 3\n"
                  "cutoff_ms = 300\n");

  CliRun r = run_cli("bench --config " + cfg.string());
  CHECK(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 7);  // header + 3 rows per instance
  CHECK(lines[0] ==
        "instance_id,seed,text_len,text_sigma,pat_len,pat_sigma,rep_count,"
        "algorithm,mode,time_ms,timed_out,matches");
  const char* algos[3] = {"baseline", "heuristic", "portfolio"};
  for (int row = 0; row < 6; ++row) {
    const auto f = split_fields(lines[1 + row]);
    REQUIRE(f.size() == 12);
    CHECK(f[0] == (row < 3 ? "cell-0" : "cell-1"));
    CHECK(f[1] == (row < 3 ? "3" : "4"));
    CHECK(f[2] == "16");
    CHECK(f[3] == "3");
    CHECK(f[4] == "4");
    CHECK(f[5] == "2");
    CHECK(f[7] == algos[row % 3]);
    CHECK(f[8] == "substring");
    CHECK(std::stod(f[9]) >= 0.0);
    CHECK(f[10] == "0");  // these tiny cells never hit the cutoff
  }
  // deterministic columns repeat across runs (times of course differ)
  CliRun r2 = run_cli("bench --config " + cfg.string());
  const auto lines2 = split_lines(r2.out);
  REQUIRE(lines2.size() == lines.size());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto a = split_fields(lines[i]);
    const auto b = split_fields(lines2[i]);
    CHECK(a[0] == b[0]);
    CHECK(a[6] == b[6]);   // rep_count
    CHECK(a[11] == b[11]);  // matches
  }

  // a flag overrides the config's pattern length
  CliRun over = run_cli("bench --config " + cfg.string() + " --pat-len 5");
  CHECK(over.code == 0);
  const auto lines3 = split_lines(over.out);
  REQUIRE(lines3.size() == 7);
  CHECK(split_fields(lines3[1])[4] == "5");

  // unknown keys are refused
  const fs::path bad = fs::absolute("cli_bench_bad.tmp");
  write_file(bad, "nope = 1\n");
  CHECK(run_cli("bench --config " + bad.string()).code == 2);
}

TEST_CASE("preset generation writes the full grid") {
  const fs::path dir = fs::absolute("cli_preset_tmp");
  fs::remove_all(dir);
  fs::create_directories(dir);
  CliRun r = run_cli("gen --preset fig3r --out-dir " + dir.string());
  CHECK(r.code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    const auto lines = split_lines(read_file(e.path()));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0].size() == 6);   // pattern line
    CHECK(lines[1].size() == 80);  // shared text line
  }
  CHECK(files == 33);
  CHECK(split_lines(r.out).size() == 33);
}
