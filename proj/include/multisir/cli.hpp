#pragma once

namespace multisir {

/// Entry point behind the `multisir` executable. Subcommands:
///   simulate <scenario-file> --out <dir>   run one scenario and export
///   analyze <dir>                          claim suite on stored artifacts
///   check --seed <k> --trials <N>          seeded batch, nonzero exit on violation
///   sweep --seeds a..b --jobs J            parallel seed batch
/// Exit codes: 0 success, 1 claim violation, 2 usage/validation error.
int cli_main(int argc, const char* const* argv);

}  // namespace multisir
