#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebroidkit/algebroid/presentation.hpp"
#include "algebroidkit/exactalg/complexes.hpp"

namespace algebroidkit::io {

/// Task output kept in two parallel forms: structured JSON and human-readable lines.
class ResultBuilder {
 public:
  void scalar(const std::string& key, const nlohmann::ordered_json& value);
  void flag(const std::string& key, bool value) { scalar(key, value); }
  void sizes(const std::string& key, const std::vector<std::size_t>& values);
  void strings(const std::string& key, const std::vector<std::string>& values);
  void graded_betti(const std::string& key, const std::map<int, std::vector<std::size_t>>& table);
  void total_betti(const std::string& key, const std::vector<TotalBetti>& table);
  void matrix(const std::string& key, const PolyMatrix& m);
  void algebroid(const std::string& key, const AlgebroidPresentation& A);

  const nlohmann::ordered_json& json() const { return json_; }
  const std::vector<std::string>& lines() const { return lines_; }

 private:
  nlohmann::ordered_json json_ = nlohmann::ordered_json::object();
  std::vector<std::string> lines_;
};

struct Report {
  std::string task;
  std::string input_sha256;
  Verdict verdict;
  ResultBuilder result;
  std::optional<double> timing_ms;

  /// 0 when the verdict is valid, 1 otherwise.
  int exit_status() const { return verdict.valid ? 0 : 1; }
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace algebroidkit::io
