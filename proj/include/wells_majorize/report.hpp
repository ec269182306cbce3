#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wells_majorize/rational.hpp"

namespace wm {

enum class Status { pass, fail, inconclusive, hypothesis_not_met };

std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

/// CLI exit code: 0 pass, 1 fail, 3 inconclusive or hypotheses not met.
int exit_code(Status s);

/// Structured outcome of a verifier. Exact values are stored as "p/q"
/// strings so serialization is lossless.
struct VerificationReport {
  std::string command;
  Status status = Status::pass;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::vector<nlohmann::ordered_json> witnesses;
  /// Optional tabular payload (CSV output uses it when present).
  std::vector<std::string> table_header;
  std::vector<std::vector<std::string>> table_rows;
  double timing_ms = 0.0;

  /// Sets status to fail and records the witness; a failing report always
  /// carries at least one.
  void fail_with(nlohmann::ordered_json witness);
  bool ok() const { return status == Status::pass; }

  /// include_timing=false gives byte-stable output for identical runs.
  nlohmann::ordered_json to_json(bool include_timing = true) const;
  static VerificationReport from_json(const nlohmann::ordered_json& j);
  std::string to_csv() const;
  std::string to_text() const;
};

nlohmann::ordered_json to_json(const std::vector<Rational>& v);

}  // namespace wm
