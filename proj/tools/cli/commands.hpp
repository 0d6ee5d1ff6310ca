#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "cli/manifest.hpp"

namespace abstractpose::cli {

/// What a command did, for the caller's summary line and for tests.
struct CommandResult {
  std::size_t frames = 0;   // frames processed without error
  std::size_t outputs = 0;  // files written
  std::vector<std::string> warnings;
};

CommandResult cmd_render(const Manifest& m);
CommandResult cmd_encode(const Manifest& m);
CommandResult cmd_decode(const Manifest& m);
CommandResult cmd_roundtrip(const Manifest& m);
CommandResult cmd_metrics(const Manifest& m);
CommandResult cmd_ablate(const Manifest& m);

/// Parses the command line and runs one command. Returns the process exit
/// code: 0 success, 1 validation error, 2 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abstractpose::cli
