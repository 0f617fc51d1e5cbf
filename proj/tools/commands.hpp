#pragma once

namespace tailinv::cli {

// Exit codes: 0 success, 1 input error, 2 validation failure or numeric failure
// recorded in the report.
int run(int argc, char** argv);

}  // namespace tailinv::cli
