#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fdof/dataset.hpp"

namespace fdof {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;  // violations, or unknown GUPRI
inline constexpr int kExitError = 2;     // usage, I/O or parse error

// Reads and merges TriG files. With more than one file, blank node labels
// are prefixed with "f<index>_" so that files never share blank nodes.
// Throws std::runtime_error with a "path:line:column: message" text.
Dataset load_inputs(const std::vector<std::string>& paths);

// Runs one command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fdof
