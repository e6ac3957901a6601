#pragma once

// The `ltp` command dispatcher, kept in the library so tests can drive it
// without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct JobConfig {
    std::string group;    // fg | ring | multi | mono
    std::string command;  // e.g. qk, psi, decompose, demo

    long p = 2;
    std::string flavor = "auto";  // auto | qp | unramified | eisenstein
    int h = 1;
    std::string eis;  // "c0,c1,...,1"
    int prec = 25;    // N: digits reported
    std::optional<int> out_prec;
    long deg = 10;  // D
    std::uint64_t seed = 1;
    std::string in, out;

    std::string a, c;  // field elements, basis rationals joined by ';'
    std::string r, s;  // radii
    long k = 1;
    long n = 1;
    long level = 1;
    long order = 6;
    long samples = 3;
    int j = 1;
    int d = 2;
    std::optional<long> n_max;
    bool check_only = false;
    bool phi = false;
    std::string gauge_in;
};

/// Usage problems detected after parsing (missing input, bad subcommand).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs one job. JSON (or the deep-norm line) goes to `out` unless
/// config.out names a file; diagnostics go to `err`. Returns the exit code.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs the job.
int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Subcommands accepted for each group.
const std::vector<std::pair<std::string, std::vector<std::string>>>& command_table();

}  // namespace ltp::cli
