#ifndef TSA_CLI_HPP
#define TSA_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

namespace tsa::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kDivergence = 3,
};

/// Entry point behind the `tsa` executable. Writes results to `out` and
/// diagnostics to `err`; never calls std::exit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Rebuilds one of the published tables (1, 2, 3, 5, 6 or 7) from the files in
/// `data_dir`, with computed and published values side by side.
/// Throws std::invalid_argument for an unsupported table number.
std::string reproduce_table(int table, const std::filesystem::path& data_dir);

/// Directory holding the bundled configs and reference tables.
std::filesystem::path default_data_dir();

}  // namespace tsa::cli

#endif  // TSA_CLI_HPP
