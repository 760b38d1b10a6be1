#pragma once

#include <map>
#include <string>
#include <vector>

namespace testsupport {

struct ProcResult {
    int exitCode = -1;
    std::string out;
    std::string err;
};

// Runs an executable with arguments, captures both streams and the exit
// code. env entries are exported for the child only.
ProcResult run_process(const std::string& exe, const std::vector<std::string>& args,
                       const std::map<std::string, std::string>& env = {});

// Writes content to a fresh file under the system temp directory and
// returns its path.
std::string write_temp_file(const std::string& stem, const std::string& content);

}  // namespace testsupport
