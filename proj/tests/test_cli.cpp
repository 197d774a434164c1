// End-to-end runs of the command-line tool: flag handling, config files,
// report emission in both formats, determinism, and exit codes.  The
// binary path arrives as the first program argument.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kreinreg/report.hpp"

namespace {

std::string g_cli_path;
int g_run_counter = 0;

struct CliResult {
  int code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string out_file =
      "/tmp/kreinreg_cli_capture_" + std::to_string(g_run_counter++) + ".txt";
  const std::string cmd =
      g_cli_path + " " + args + " >" + out_file + " 2>&1";
  int raw = std::system(cmd.c_str());
  CliResult res;
  res.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  res.output = os.str();
  std::remove(out_file.c_str());
  return res;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fresh_dir(const std::string& tag) {
  std::string d = "/tmp/kreinreg_cli_" + tag;
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("help text lists the options and exits cleanly") {
  CliResult r = run_cli("--help");
  CHECK(r.code == 0);
  CHECK(r.output.find("--scenario") != std::string::npos);
  CHECK(r.output.find("--truncation") != std::string::npos);
  CHECK(r.output.find("--config") != std::string::npos);
}

TEST_CASE("a scenario subset runs green and writes a parsable report") {
  std::string dir = fresh_dir("subset");
  CliResult r = run_cli("--scenario neutral --scenario krein --truncation 4 "
                        "--seed 7 --out " +
                        dir);
  CHECK(r.code == 0);
  CHECK(r.output.find("checks passed") != std::string::npos);

  kreinreg::Report rep =
      kreinreg::report_from_json(read_file(dir + "/report.json"));
  CHECK(rep.all_pass());
  CHECK(!rep.records.empty());
  bool has_neutral = false, has_krein = false, has_other = false;
  for (const auto& rec : rep.records) {
    if (rec.name.rfind("neutral/", 0) == 0)
      has_neutral = true;
    else if (rec.name.rfind("krein/", 0) == 0)
      has_krein = true;
    else
      has_other = true;
  }
  CHECK(has_neutral);
  CHECK(has_krein);
  CHECK_FALSE(has_other);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CSV output is selectable from the command line") {
  std::string dir = fresh_dir("csv");
  CliResult r =
      run_cli("--scenario neutral --truncation 3 --format csv --out " + dir);
  CHECK(r.code == 0);
  std::string text = read_file(dir + "/report.csv");
  CHECK(text.rfind("name,measured,bound,pass\n", 0) == 0);
  CHECK(text.find("neutral/") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir + "/report.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("bad invocations exit with the usage code") {
  CHECK(run_cli("--bogus-flag").code == 2);
  CHECK(run_cli("--scenario not_a_scenario").code == 2);
  CHECK(run_cli("--format xml").code == 2);
  CHECK(run_cli("--truncation -3").code == 2);
  CHECK(run_cli("--config /tmp/kreinreg_no_such_file.ini").code == 2);
}

TEST_CASE("a config file drives the run and flags override it") {
  std::string dir = fresh_dir("config");
  std::string cfg_path = dir + "/run.ini";
  {
    std::ofstream cfg(cfg_path);
    cfg << "# comment line\n"
           "[profile]\n"
           "rule = superexp\n"
           "delta = 2.0\n"
           "beta = 1.5\n"
           "\n"
           "[run]\n"
           "scenarios = neutral\n"
           "truncations = 3\n"
           "seed = 99\n"
           "out = " +
               dir +
               "/from_cfg\n"
               "format = csv\n";
  }

  CliResult r = run_cli("--config " + cfg_path);
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir + "/from_cfg/report.csv"));

  // A flag given alongside the file wins.
  CliResult r2 = run_cli("--config " + cfg_path + " --format json --out " +
                         dir + "/override");
  CHECK(r2.code == 0);
  CHECK(std::filesystem::exists(dir + "/override/report.json"));
  CHECK_FALSE(std::filesystem::exists(dir + "/override/report.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("identical seeds reproduce the report record for record") {
  std::string dir_a = fresh_dir("det_a");
  std::string dir_b = fresh_dir("det_b");
  const std::string args = "--scenario krein --truncation 4 --seed 12345 ";
  CHECK(run_cli(args + "--out " + dir_a).code == 0);
  CHECK(run_cli(args + "--out " + dir_b).code == 0);

  kreinreg::Report a =
      kreinreg::report_from_json(read_file(dir_a + "/report.json"));
  kreinreg::Report b =
      kreinreg::report_from_json(read_file(dir_b + "/report.json"));
  REQUIRE(a.records.size() == b.records.size());
  bool identical = true;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].name != b.records[i].name ||
        a.records[i].measured != b.records[i].measured ||
        a.records[i].bound != b.records[i].bound ||
        a.records[i].pass != b.records[i].pass)
      identical = false;
  }
  CHECK(identical);
  // Environment entries are deterministic except the per-scenario wall
  // clocks.
  for (const auto& [key, value] : a.environment) {
    if (key.size() >= 8 && key.rfind("_seconds") == key.size() - 8) continue;
    REQUIRE(b.environment.count(key) == 1);
    CHECK(b.environment.at(key) == value);
  }
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("a weight budget violation surfaces as a failing run") {
  std::string dir = fresh_dir("overbudget");
  std::string cfg_path = dir + "/bad.ini";
  {
    std::ofstream cfg(cfg_path);
    cfg << "[profile]\n"
           "rule = custom\n"
           "weights = 1.5, 0.5\n"
           "[run]\n"
           "scenarios = neutral\n"
           "truncations = 1\n"
           "out = " +
               dir + "\n";
  }
  CliResult r = run_cli("--config " + cfg_path);
  CHECK(r.code == 1);
  CHECK(r.output.find("failed:") != std::string::npos);
  kreinreg::Report rep =
      kreinreg::report_from_json(read_file(dir + "/report.json"));
  CHECK_FALSE(rep.all_pass());
  std::filesystem::remove_all(dir);
}

int main(int argc, char** argv) {
  std::vector<char*> doctest_args;
  doctest_args.push_back(argv[0]);
  int start = 1;
  if (argc > 1 && argv[1][0] != '-') {
    g_cli_path = argv[1];
    start = 2;
  }
  for (int i = start; i < argc; ++i) doctest_args.push_back(argv[i]);

  if (g_cli_path.empty()) {
    std::fprintf(stderr,
                 "usage: test_cli <path-to-kreinreg-binary> [doctest args]\n");
    return 1;
  }

  doctest::Context ctx;
  ctx.applyCommandLine(static_cast<int>(doctest_args.size()),
                       doctest_args.data());
  return ctx.run();
}
