#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kreinreg/errors.hpp"
#include "kreinreg/report.hpp"
#include "kreinreg/scenario.hpp"

namespace {

int verbosity_from_env() {
  const char* raw = std::getenv("KREINREG_LOG");
  if (raw == nullptr) return 0;
  std::string v(raw);
  if (v.empty() || v == "0" || v == "quiet") return 0;
  if (v == "debug" || v == "2") return 2;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "kreinreg: builds the truncated neutral family for a singular weight "
      "profile and verifies its norm, pairing, projection, coordinate-model "
      "and representation properties"};

  std::string config_path, out_dir, format;
  std::vector<std::string> scenarios;
  std::vector<int> truncations;
  long long seed = 0;

  app.add_option("--config", config_path, "config file (INI-style sections)");
  app.add_option("--scenario", scenarios,
                 "scenario to run (repeatable): neutral majorant krein "
                 "abstract heisenberg sweep");
  app.add_option("--out", out_dir, "output directory for the report");
  app.add_option("--format", format, "report format: json or csv");
  app.add_option("--seed", seed, "seed for the generated test families");
  app.add_option("--truncation", truncations,
                 "truncation order N (repeatable; first entry drives the "
                 "single-order scenarios, the full list drives sweep)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const int verbosity = verbosity_from_env();
  try {
    kreinreg::RunConfig cfg;
    if (!config_path.empty()) cfg = kreinreg::load_config(config_path);
    if (app.count("--scenario") > 0) cfg.scenarios = scenarios;
    if (app.count("--truncation") > 0) cfg.truncations = truncations;
    if (app.count("--seed") > 0)
      cfg.seed = static_cast<std::uint64_t>(seed);
    if (app.count("--out") > 0) cfg.out_dir = out_dir;
    if (app.count("--format") > 0) cfg.format = format;

    if (verbosity >= 1) {
      std::cerr << "rule=" << cfg.rule << " N=" << cfg.truncations.front()
                << " seed=" << cfg.seed << " scenarios=";
      for (const std::string& s : cfg.scenarios) std::cerr << s << ' ';
      std::cerr << "\n";
    }

    kreinreg::Report rep = kreinreg::run_scenario(cfg);

    std::filesystem::create_directories(cfg.out_dir);
    const std::string path = cfg.out_dir + "/report." + cfg.format;
    kreinreg::write_report(rep, path, cfg.format);

    int passed = 0;
    for (const kreinreg::CheckRecord& rec : rep.records) {
      if (rec.pass) ++passed;
      if (verbosity >= 2 || (!rec.pass && verbosity >= 1))
        std::cerr << (rec.pass ? "  ok   " : "  FAIL ") << rec.name
                  << "  measured=" << rec.measured << " bound=" << rec.bound
                  << "\n";
    }
    std::cout << passed << "/" << rep.records.size() << " checks passed in "
              << rep.timing_seconds << " s; report written to " << path
              << "\n";
    if (!rep.all_pass()) {
      for (const kreinreg::CheckRecord& rec : rep.records)
        if (!rec.pass) std::cout << "failed: " << rec.name << "\n";
      return 1;
    }
    return 0;
  } catch (const kreinreg::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const kreinreg::IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 2;
  }
}
