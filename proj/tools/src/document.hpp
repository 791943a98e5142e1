#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "algebroidkit/groupoid/groupoid_algebroid.hpp"
#include "algebroidkit/pullback/descent.hpp"

namespace algebroidkit::io {

inline constexpr std::string_view kSchema = "algebroidkit/1";

/// Malformed or invalid input document. `field` is the JSON path of the offending value.
class LoadError : public Error {
 public:
  LoadError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class TaskKind {
  VerifyAlgebroid,
  VerifyMorphism,
  Pullback,
  Descend,
  VerifyDescent,
  BuildLaGroupoid,
  RoundtripF1F2,
  CechCohomology,
  InvariantCohomology,
  PoissonVerify,
  Cotangent,
  LinearPoisson,
  Symplectic,
};

/// Names in the order of TaskKind.
const std::vector<std::string>& task_names();
std::optional<TaskKind> parse_task(std::string_view name);
std::string task_name(TaskKind kind);

struct TaskOptions {
  std::optional<std::size_t> max_degree;
  std::optional<std::string> grading;
  std::optional<int> cap;

  friend bool operator==(const TaskOptions&, const TaskOptions&) = default;
};

/// Every object a task document may carry; which ones are required depends on the task.
struct TaskInputs {
  std::optional<AlgebroidPresentation> algebroid;
  std::optional<AlgebroidMorphism> morphism;
  std::optional<SplitSubmersion> submersion;
  std::optional<SubmersionDatum> descent;
  std::optional<PolyMap> section;
  std::optional<CoverDatum> cover;
  std::optional<GroupoidAlgebroid> groupoid_algebroid;
  std::optional<PolyMatrix> bivector;
  std::optional<PolyMatrix> omega;
  std::optional<PolyMatrix> omega_inverse;
  TaskOptions options;

  friend bool operator==(const TaskInputs&, const TaskInputs&) = default;
};

/// Parses and validates a document for `kind`. Throws LoadError naming the offending field.
TaskInputs load_inputs(TaskKind kind, const nlohmann::json& doc);
/// Reads UTF-8 JSON text; syntax errors become LoadError.
nlohmann::json parse_document(const std::string& text);
/// Inverse of load_inputs: writes the fields present in `inputs`.
nlohmann::ordered_json save_inputs(const TaskInputs& inputs);

// Single-object codecs. `nvars` is the chart dimension the entries live on.
nlohmann::ordered_json to_json(const Rational& q);
nlohmann::ordered_json to_json(const Polynomial& p);
nlohmann::ordered_json to_json(const PolyMatrix& m);
nlohmann::ordered_json to_json(const PolyMap& f);
nlohmann::ordered_json to_json(const ChartBase& b);
nlohmann::ordered_json to_json(const AlgebroidPresentation& A);

}  // namespace algebroidkit::io
