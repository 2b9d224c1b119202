#pragma once

#include <ostream>

namespace susy {

/// The `susy` command line. Traces go to `out` unless --trace names a file;
/// summaries and errors go to `err`. Returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace susy
