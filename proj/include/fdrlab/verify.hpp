#pragma once

#include <string>
#include <vector>

namespace fdrlab {

// One named verification suite: a self-contained check with its tolerances
// and runtime budget pinned in code.  `detail` carries the measured values.
struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
    double seconds;
};

const std::vector<std::string>& verify_suite_names();

// Runs one suite; throws std::invalid_argument for an unknown name.
// threads: 0 = hardware concurrency for the Monte-Carlo parts.
CheckResult run_verify_suite(const std::string& name, int threads = 0);

}  // namespace fdrlab
