#pragma once

#include <ostream>

namespace slantsum::cli {

// Runs one slantsum command. Returns the process exit code; diagnostics go
// to `err` as a single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slantsum::cli
