#include "kreinreg/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "kreinreg/errors.hpp"

namespace kreinreg {

void Report::add_bound(const std::string& name, double measured, double bound) {
  CheckRecord rec;
  rec.name = name;
  rec.measured = measured;
  rec.bound = bound;
  rec.pass = std::isfinite(measured) && measured <= bound;
  records.push_back(std::move(rec));
}

void Report::add_flag(const std::string& name, bool ok) {
  CheckRecord rec;
  rec.name = name;
  rec.measured = ok ? 0.0 : 1.0;
  rec.bound = 0.0;
  rec.pass = ok;
  records.push_back(std::move(rec));
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const CheckRecord& rec : other.records) {
    CheckRecord copy = rec;
    copy.name = prefix + "/" + rec.name;
    records.push_back(std::move(copy));
  }
}

bool Report::all_pass() const {
  for (const CheckRecord& rec : records)
    if (!rec.pass) return false;
  return true;
}

namespace {

// JSON has no literal for infinities or NaN, and the serializer would
// otherwise emit null for them; informational records use an infinite
// bound, so non-finite values travel as string sentinels instead.
nlohmann::json number_out(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_in(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw IoError("report schema: expected a number, got " + j.dump());
}

}  // namespace

std::string report_to_json(const Report& r) {
  nlohmann::json j;
  j["scenario"] = r.scenario;
  j["environment"] = r.environment;
  j["timing"] = r.timing_seconds;
  nlohmann::json recs = nlohmann::json::array();
  for (const CheckRecord& rec : r.records) {
    nlohmann::json one;
    one["name"] = rec.name;
    one["measured"] = number_out(rec.measured);
    one["bound"] = number_out(rec.bound);
    one["pass"] = rec.pass;
    recs.push_back(std::move(one));
  }
  j["records"] = std::move(recs);
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("report parse: ") + e.what());
  }
  Report r;
  try {
    r.scenario = j.at("scenario").get<std::string>();
    r.timing_seconds = j.at("timing").get<double>();
    r.environment =
        j.at("environment").get<std::map<std::string, double>>();
    for (const auto& one : j.at("records")) {
      CheckRecord rec;
      rec.name = one.at("name").get<std::string>();
      rec.measured = number_in(one.at("measured"));
      rec.bound = number_in(one.at("bound"));
      rec.pass = one.at("pass").get<bool>();
      r.records.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("report schema: ") + e.what());
  }
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os << "name,measured,bound,pass\n";
  os.precision(17);
  for (const CheckRecord& rec : r.records) {
    os << csv_field(rec.name) << ',' << rec.measured << ',' << rec.bound
       << ',' << (rec.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

void write_report(const Report& r, const std::string& path,
                  const std::string& format) {
  std::string body;
  if (format == "json")
    body = report_to_json(r);
  else if (format == "csv")
    body = report_to_csv(r);
  else
    throw ConfigError("unknown report format '" + format + "'");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << body;
  out.flush();
  if (!out) throw IoError("short write to '" + path + "'");
}

}  // namespace kreinreg
