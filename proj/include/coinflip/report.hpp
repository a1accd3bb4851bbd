#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace coinflip {

struct RunConfig {
    enum class Command { Alice, Bob, Fair, Sweep, Simulate, Verify };
    Command command = Command::Verify;
    int n = 1;
    std::optional<double> theta;  // radians
    std::string grid;             // "start:stop:count", degrees
    double p_loss = 0.0;
    long trials = 100000;
    std::optional<uint64_t> seed;
    std::string cheat = "none";   // none | alice-optimal | bob-optimal | bob-file
    std::string cheat_file;
    std::string out;              // empty = stdout
    std::string format = "json";  // json | csv
    bool table = false;           // fair: emit the whole table up to n
    bool quick = false;           // verify: skip n >= 5 and Monte Carlo
};

// Executes one command, writing the artifact to config.out or stdout.
// Returns the process exit code: 0 success, 2 usage error, 3 certification
// failure. All errors are also printed as single-line JSON on stderr.
int run_command(const RunConfig& config);

// Full argv surface (flag parsing + dispatch). Never throws.
int cli_main(int argc, const char* const* argv);

}
