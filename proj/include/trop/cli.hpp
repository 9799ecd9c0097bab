#pragma once

// Command-line driver: loads polytopes, fans, and cycles from JSON files,
// runs one operation per invocation, and renders an exact result document.
// Kept in the library so the test suite can drive it in-process.

#include <string>
#include <vector>

namespace trop {

// Runs one command (args exclude the program name) and appends the output
// document — or, on failure, a machine-readable error document — to out.
// Returns the process exit code: 0 success, 1 usage/I-O/parse failure,
// 2 domain error (bad mathematics in well-formed input).  Never throws.
// When --output is given the document goes to that file instead of out;
// nothing is written to the file on failure.
int run_cli(const std::vector<std::string>& args, std::string& out);

}  // namespace trop
