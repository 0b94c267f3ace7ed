#pragma once

namespace geosteer {

/// Command-line front end. Returns the process exit code:
/// 0 success, 1 domain/guard/integration errors (single-line diagnostic on
/// stderr), 2 usage errors (usage text on stderr).
int run_cli(int argc, const char* const* argv);

}  // namespace geosteer
