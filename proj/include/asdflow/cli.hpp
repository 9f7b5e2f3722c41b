#pragma once

// Command-line front end.  run_cli() is the whole program minus process
// plumbing, so tests can drive it in-process.
//
// Every command accepts --out DIR (default: $ASDFLOW_OUT, else the current
// directory) and --config FILE, a flat `key = value` file with `#` comments
// whose keys are the command's long option names.  Flags given on the command
// line override file keys; unknown keys are a usage error.  Every run writes
// <command>_metadata.json echoing the fully resolved configuration.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace asdflow {

enum ExitCode : int { exit_ok = 0, exit_usage = 2, exit_numeric = 3, exit_io = 4 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
/// Throws ArgumentError on a malformed line or a repeated key.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);

/// Values a, a+step, ..., b (inclusive, step > 0) from "a:step:b", or an explicit
/// comma-separated list.  Values within 1e-12 * step of zero are snapped to 0.
std::vector<double> parse_grid_spec(const std::string& spec);

}  // namespace asdflow
