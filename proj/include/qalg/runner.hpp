#pragma once

#include <string>

namespace qalg {

// CLI entry point.  Exit codes: 0 property holds / computation succeeded,
// 1 property refuted (witness in the report), 2 input error, 3 resource
// budget exceeded.
int run_cli(int argc, char** argv);

}  // namespace qalg
