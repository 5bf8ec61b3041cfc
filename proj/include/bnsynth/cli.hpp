#pragma once

// Command-line front end. Subcommands:
//   validate <net>
//   synthesize <net> <contract> [--central] [--out FILE]
//   verify <net> <contract> <controllers>
//   distribute <net> <contract> --subsystem NAME
//   eps <topology> [--partition FILE] [--central] [--out FILE]
//       [--emit-network FILE] [--emit-contract FILE]
// Global flags: --json (machine-readable report), --oracle (cross-check the
// result against the brute-force references when within budget).

#include <iosfwd>
#include <string>
#include <vector>

namespace bnsynth::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUnrealizable = 1,  // also: verification failed, oracle disagreement
  kInputError = 2,
};

int cli_main(int argc, const char* const* argv);
/// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnsynth::cli
