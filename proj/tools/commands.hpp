#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbc::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIo = 2,
    kCorrupt = 3,
};

// Entry point of the `mbc` tool. Never throws; failures map to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbc::cli
