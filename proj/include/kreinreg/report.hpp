#pragma once

#include <map>
#include <string>
#include <vector>

namespace kreinreg {

// One verification record: a measured magnitude, the bound it must stay
// under, and the verdict. Boolean checks are stored as violation
// indicators (measured 0 = ok, 1 = violated, bound 0).
struct CheckRecord {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct Report {
  std::string scenario;
  std::vector<CheckRecord> records;
  std::map<std::string, double> environment;  // tolerances, truncation, seed
  double timing_seconds = 0.0;

  // measured <= bound decides the verdict.
  void add_bound(const std::string& name, double measured, double bound);
  // Boolean check recorded as a violation indicator.
  void add_flag(const std::string& name, bool ok);
  // Appends another report's records under "<prefix>/<name>".
  void merge(const Report& other, const std::string& prefix);

  bool all_pass() const;
};

// JSON layout: top-level keys {scenario, records, environment, timing};
// records is an array of {name, measured, bound, pass}. Key order is
// alphabetical, so equal reports serialize byte-identically apart from the
// timing value.
std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);

// CSV layout: header name,measured,bound,pass then one row per record.
std::string report_to_csv(const Report& r);

// format is "json" or "csv"; anything else throws ConfigError. Throws
// IoError when the file cannot be written.
void write_report(const Report& r, const std::string& path,
                  const std::string& format);

}  // namespace kreinreg
