#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecg::cli {

/// Parses argv, runs the command and writes its output to `out` (or --out).
/// Returns the process exit code: 0 success, 1 verification mismatch, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the program name supplied implicitly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecg::cli
