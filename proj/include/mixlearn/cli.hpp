#pragma once

#include <iosfwd>

namespace mixlearn {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

// Parses argv and runs one subcommand: simulate, learn, plan-samples,
// verify-identifiability, tv {exact,bound,littlewood,survey} or experiment.
// Reports go to `out`, diagnostics to `err`.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace mixlearn
