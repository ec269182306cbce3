#include "wells_majorize/report.hpp"

#include <sstream>
#include <stdexcept>

#include "wells_majorize/errors.hpp"

namespace wm {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
    case Status::hypothesis_not_met: return "hypothesis_not_met";
  }
  return "fail";
}

Status status_from_string(std::string_view s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "inconclusive") return Status::inconclusive;
  if (s == "hypothesis_not_met") return Status::hypothesis_not_met;
  throw ConfigError("unknown status: " + std::string(s));
}

int exit_code(Status s) {
  switch (s) {
    case Status::pass: return 0;
    case Status::fail: return 1;
    case Status::inconclusive:
    case Status::hypothesis_not_met: return 3;
  }
  return 1;
}

void VerificationReport::fail_with(nlohmann::ordered_json witness) {
  status = Status::fail;
  witnesses.push_back(std::move(witness));
}

nlohmann::ordered_json VerificationReport::to_json(bool include_timing) const {
  if (status == Status::fail && witnesses.empty()) {
    throw InvariantError("failing report for '" + command + "' has no witness");
  }
  nlohmann::ordered_json j;
  j["command"] = command;
  j["status"] = to_string(status);
  j["parameters"] = parameters;
  j["details"] = details;
  j["witnesses"] = witnesses;
  if (!table_header.empty()) {
    j["table"] = {{"header", table_header}, {"rows", table_rows}};
  }
  if (include_timing) j["timing_ms"] = timing_ms;
  return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::ordered_json& j) {
  VerificationReport r;
  r.command = j.at("command").get<std::string>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.parameters = j.value("parameters", nlohmann::ordered_json::object());
  r.details = j.value("details", nlohmann::ordered_json::object());
  for (const auto& w : j.value("witnesses", nlohmann::ordered_json::array())) r.witnesses.push_back(w);
  if (j.contains("table")) {
    r.table_header = j["table"].at("header").get<std::vector<std::string>>();
    r.table_rows = j["table"].at("rows").get<std::vector<std::vector<std::string>>>();
  }
  r.timing_ms = j.value("timing_ms", 0.0);
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
  return out + "\"";
}

std::string scalar_text(const nlohmann::ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  auto row = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << csv_field(cells[i]);
    }
    os << '\n';
  };
  if (!table_header.empty()) {
    row(table_header);
    for (const auto& r : table_rows) row(r);
    return os.str();
  }
  row({"key", "value"});
  row({"command", command});
  row({"status", std::string(to_string(status))});
  for (const auto& [k, v] : parameters.items()) row({"parameters." + k, scalar_text(v)});
  for (const auto& [k, v] : details.items()) row({"details." + k, scalar_text(v)});
  for (std::size_t i = 0; i < witnesses.size(); ++i) row({"witness." + std::to_string(i), witnesses[i].dump()});
  return os.str();
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << command << ": " << to_string(status) << '\n';
  for (const auto& [k, v] : parameters.items()) os << "  " << k << " = " << scalar_text(v) << '\n';
  for (const auto& [k, v] : details.items()) os << "  " << k << ": " << scalar_text(v) << '\n';
  for (const auto& w : witnesses) os << "  witness: " << w.dump() << '\n';
  if (!table_header.empty()) {
    os << "  ";
    for (std::size_t i = 0; i < table_header.size(); ++i) os << (i ? "\t" : "") << table_header[i];
    os << '\n';
    for (const auto& r : table_rows) {
      os << "  ";
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
      os << '\n';
    }
  }
  return os.str();
}

nlohmann::ordered_json to_json(const std::vector<Rational>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : v) arr.push_back(e.str());
  return arr;
}

}  // namespace wm
