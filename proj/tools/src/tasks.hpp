#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "document.hpp"
#include "report.hpp"

namespace algebroidkit::io {

/// Runs one task on loaded inputs. Library errors propagate as exceptions.
Report run_task(TaskKind kind, const TaskInputs& inputs);

/// Full command line: `<task> <input.json> [--max-degree N] [--grading NAME] [--cap N] [--json]
/// [--out PATH] [--timing]`. Returns the exit status: 0 valid, 1 invalid with witness, 2 usage,
/// parse or library error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace algebroidkit::io
