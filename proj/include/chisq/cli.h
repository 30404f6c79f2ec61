#pragma once

// Command-line front end. run() never touches the process streams; the
// caller prints out / err and exits with exit_code.

#include <string>
#include <vector>

namespace chisq::cli {

inline constexpr const char* kVersion = "0.1.0";

struct CommandResult
{
    int exit_code = 0;  // 0 success, 1 a "false" / "none" answer, 2 error
    std::string out;
    std::string err;
};

// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace chisq::cli
