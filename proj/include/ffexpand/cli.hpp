#pragma once

// Command-line front end. `run_cli` takes the arguments after the program
// name and writes the single output document to `out`; diagnostics go to `err`.

#include <ostream>
#include <string>
#include <vector>

namespace ffx {

/// Stable exit codes.
enum ExitCode : int {
    kExitOk = 0,             // success; Nice for check-nice
    kExitNegative = 1,       // NotNice, a failed check, or no relation found
    kExitInconclusive = 2,   // check-nice without either certificate
    kExitUsage = 64,         // bad flags, malformed field spec or polynomial text
    kExitPrecondition = 65,  // q <= n and other mathematical preconditions
    kExitIo = 66,            // unreadable input or config file
    kExitCap = 67,           // a configured size cap was exceeded
    kExitInternal = 70,
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffx
