#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specres/localized.hpp"

namespace specres {

struct RunConfig {
    enum class Command { filter, estimate, sweep, localized, oracle };
    enum class Model { circle, torus2, sphere, file };
    enum class Format { json, csv };

    Command command = Command::estimate;
    Model model = Model::circle;
    std::size_t k = 0;
    std::vector<double> cutoffs;  // one entry for estimate/localized, >= 2 for sweep
    std::optional<double> m;
    std::optional<std::vector<double>> poles;   // required for file spectra
    std::optional<std::vector<double>> scales;  // default 2^j when absent
    std::optional<std::string> input_path;      // spectrum file for model = file
    std::optional<std::string> filter_file;     // JSON produced by the filter command
    std::optional<std::string> output_path;     // default standard output
    Format format = Format::json;
    Parity keep = Parity::even;                 // localized circle projection
};

// Executes the configured command, writing the report to `out` and progress
// notes to `diag` (suppressed when SPECRES_QUIET=1). Returns 0; errors are
// thrown and mapped to exit codes by main_entry.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

// Full command-line entry point: parses argv, runs, prints one-line
// diagnostics to stderr on failure. Exit codes: 0 success, 2 usage or
// configuration error, 3 numerical error, 4 I/O or parse error.
int main_entry(int argc, const char* const* argv);

}  // namespace specres
