#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tightree {

/// Exit codes shared by every verb.
enum ExitCode : int {
    kExitOk = 0,
    /// A negative answer: not a tight tree, no embedding, incomplete search.
    kExitNegative = 1,
    /// Bad command line, unreadable or malformed input, unmet hypotheses.
    kExitPrecondition = 2,
    /// A case inequality failed, greedy placement starved, or a search that should succeed did not.
    kExitDiagnostic = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Output depends only on the arguments and input files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tightree
