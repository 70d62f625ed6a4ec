#pragma once

#include <ostream>

namespace semdirb::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kTransportAbort = 3,
};

/// Environment variable that supplies the default --out-dir.
inline constexpr const char* kOutputDirEnv = "SEMDIRB_OUTPUT_DIR";

/// Entry point for the `semdirb` tool. Subcommands: tokenize, embed, cluster,
/// pca, run, bench, merge.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semdirb::cli
