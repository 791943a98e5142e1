#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "document.hpp"
#include "tasks.hpp"

using namespace algebroidkit;
using namespace algebroidkit::io;
using nlohmann::json;

namespace {

const std::filesystem::path examples{ALGEBROIDKIT_EXAMPLES_DIR};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string example(const std::string& name) { return (examples / (name + ".json")).string(); }

/// Copy of an example addressed to another task.
std::string retask(const std::string& name, const std::string& task) {
  json doc = parse_document(slurp(example(name)));
  doc["task"] = task;
  const auto path = std::filesystem::temp_directory_path() / ("algebroidkit_" + name + "_" + task + ".json");
  std::ofstream(path) << doc.dump();
  return path.string();
}

json sl2_doc() { return parse_document(slurp(example("verify-algebroid"))); }

std::string load_error_field(TaskKind kind, const json& doc) {
  try {
    load_inputs(kind, doc);
  } catch (const LoadError& e) {
    return e.field() + " | " + e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("task names") {
  CHECK(task_names().size() == 13);
  for (const auto& n : task_names()) CHECK(task_name(*parse_task(n)) == n);
  CHECK_FALSE(parse_task("verify-everything").has_value());
}

TEST_CASE("golden documents round-trip through the schema") {
  std::size_t count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(examples)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const json doc = parse_document(slurp(entry.path()));
    const TaskKind kind = *parse_task(doc.at("task").get<std::string>());
    const TaskInputs first = load_inputs(kind, doc);
    const json saved = json::parse(save_inputs(first).dump());
    const TaskInputs second = load_inputs(kind, saved);
    CHECK(first == second);
    CHECK(json::parse(save_inputs(second).dump()) == saved);
    ++count;
  }
  CHECK(count >= 26);
}

TEST_CASE("load errors name the offending field") {
  json doc = sl2_doc();
  doc["algebroid"].erase("anchor");
  CHECK(load_error_field(TaskKind::VerifyAlgebroid, doc).find("anchor") != std::string::npos);

  doc = sl2_doc();
  doc["algebroid"]["brackets"].push_back({{"i", 1}, {"j", 1}, {"k", 1}, {"value", {{{"coeff", "1"}, {"exponents", json::array()}}}}});
  CHECK(load_error_field(TaskKind::VerifyAlgebroid, doc).find("antisymmetry") != std::string::npos);

  doc = sl2_doc();
  doc["algebroid"]["brackets"].push_back({{"i", 2}, {"j", 1}, {"k", 0}, {"value", json::array()}});
  CHECK(load_error_field(TaskKind::VerifyAlgebroid, doc).find("given twice") != std::string::npos);

  doc = sl2_doc();
  doc["schema"] = "algebroidkit/2";
  CHECK(load_error_field(TaskKind::VerifyAlgebroid, doc).rfind("schema |", 0) == 0);

  doc = sl2_doc();
  doc["algebroid"]["brackets"][0]["value"][0]["coeff"] = "1/0";
  CHECK(load_error_field(TaskKind::VerifyAlgebroid, doc).find("coeff") != std::string::npos);

  doc = sl2_doc();
  doc["algebroid"]["brackets"][0]["value"][0]["exponents"] = {1};
  CHECK(load_error_field(TaskKind::VerifyAlgebroid, doc).find("exponents") != std::string::npos);

  doc = sl2_doc();
  doc["algebroids"] = doc["algebroid"];
  CHECK(load_error_field(TaskKind::VerifyAlgebroid, doc).rfind("algebroids |", 0) == 0);

  CHECK(load_error_field(TaskKind::PoissonVerify, sl2_doc()).find("task") != std::string::npos);

  json group = parse_document(slurp(example("build-la-groupoid")));
  group["groupoid_algebroid"]["groupoid"]["inverses"] = {0, 0};
  CHECK(load_error_field(TaskKind::BuildLaGroupoid, group).find("inverses[1]") != std::string::npos);

  json bad_table = parse_document(slurp(example("cech-cohomology")));
  bad_table["groupoid_algebroid"]["groupoid"]["table"] = {{0, 1}, {1, 1}};
  bad_table["groupoid_algebroid"]["groupoid"]["inverses"] = {0, 1};
  CHECK(load_error_field(TaskKind::CechCohomology, bad_table) != "no error");

  CHECK_THROWS_AS(parse_document("{\"schema\": "), LoadError);
}

TEST_CASE("exit statuses") {
  const Run ok = cli({"verify-algebroid", example("verify-algebroid")});
  CHECK(ok.status == 0);
  CHECK(ok.out.find("status: valid") != std::string::npos);
  CHECK(ok.out.find("betti: (1, 0, 0, 1)") != std::string::npos);

  const Run bad = cli({"verify-algebroid", example("verify-algebroid.corrupt")});
  CHECK(bad.status == 1);
  CHECK(bad.out.find("residue = -2") != std::string::npos);

  CHECK(cli({"verify-everything", "/nonexistent.json"}).status == 2);
  CHECK(cli({"verify-algebroid", "/nonexistent.json"}).status == 2);
  CHECK(cli({"verify-algebroid"}).status == 2);
  CHECK(cli({"verify-algebroid", example("verify-algebroid"), "--bogus"}).status == 2);
  CHECK(cli({"--help"}).status == 0);
  const Run wrong = cli({"poisson-verify", example("verify-algebroid")});
  CHECK(wrong.status == 2);
  CHECK(wrong.err.find("task") != std::string::npos);

  // Polynomial grading is not preserved by d on the tangent algebroid.
  const std::string tangent = retask("build-la-groupoid", "cech-cohomology");
  CHECK(cli({"cech-cohomology", tangent, "--cap", "1"}).status == 2);
  const Run total = cli({"cech-cohomology", tangent, "--cap", "1", "--grading", "total",
                         "--max-degree", "1"});
  CHECK(total.status == 0);
  CHECK(total.out.find("betti: (1, 0)  reliable: RR") != std::string::npos);
}

TEST_CASE("reports are deterministic and mirror each other") {
  for (const auto& entry : std::filesystem::directory_iterator(examples)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const std::string task = parse_document(slurp(entry.path())).at("task").get<std::string>();
    const Run a = cli({task, entry.path().string(), "--json"});
    const Run b = cli({task, entry.path().string(), "--json"});
    CHECK(a.out == b.out);
    const json r = json::parse(a.out);
    CHECK(r.at("schema") == "algebroidkit/1");
    CHECK(r.at("task") == task);
    CHECK(r.at("verdict").at("valid").get<bool>() == (a.status == 0));
    CHECK(r.at("status") == (a.status == 0 ? "valid" : "invalid"));
    CHECK_FALSE(r.contains("timing_ms"));
    if (a.status == 1) {
      REQUIRE_FALSE(r.at("verdict").at("witnesses").empty());
      CHECK(r.at("verdict").at("witnesses")[0].at("residue") != "0");
    }
  }
  const Run timed = cli({"poisson-verify", example("poisson-verify"), "--json", "--timing"});
  CHECK(json::parse(timed.out).contains("timing_ms"));
}

TEST_CASE("task results") {
  const json sign = json::parse(cli({"cech-cohomology", example("cech-cohomology"), "--json"}).out);
  std::vector<std::size_t> betti;
  for (const auto& t : sign["result"]["betti"]) {
    betti.push_back(t["betti"].get<std::size_t>());
    CHECK(t["reliable"].get<bool>());
  }
  CHECK(betti == std::vector<std::size_t>{1, 0, 0, 0});

  const json swap = json::parse(cli({"invariant-cohomology", example("invariant-cohomology"), "--json"}).out);
  CHECK(swap["result"]["betti"] == json({1, 1, 0}));

  // The cotangent output is itself a loadable presentation.
  const json cot = json::parse(cli({"cotangent", example("cotangent"), "--json"}).out);
  json doc{{"schema", "algebroidkit/1"}, {"algebroid", cot["result"]["algebroid"]}};
  const TaskInputs in = load_inputs(TaskKind::VerifyAlgebroid, doc);
  CHECK(in.algebroid->rank == 2);
  CHECK(verify_algebroid(*in.algebroid).valid);

  const json lp = json::parse(cli({"linear-poisson", example("linear-poisson"), "--json"}).out);
  json bdoc{{"schema", "algebroidkit/1"}, {"bivector", lp["result"]["bivector"]}};
  CHECK(load_inputs(TaskKind::PoissonVerify, bdoc).bivector->rows() == 3);

  const json pb = json::parse(cli({"pullback", example("pullback"), "--json"}).out);
  CHECK(pb["result"]["rank"] == 2);

  const Run out = cli({"verify-descent", example("verify-descent.corrupt")});
  CHECK(out.status == 1);
  CHECK(out.out.find("residue = -1/3") != std::string::npos);

  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "algebroidkit_report.txt";
  CHECK(cli({"symplectic", example("symplectic-block"), "--out", tmp.string()}).status == 0);
  CHECK(slurp(tmp).find("graded Betti numbers of T*_Π and TX agree") != std::string::npos);
  std::filesystem::remove(tmp);
}
