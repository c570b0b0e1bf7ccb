#pragma once

#include "config.hpp"
#include "output.hpp"

#include <string>
#include <vector>

namespace quadwg::app {

const std::vector<std::string>& command_names();

struct RunResult {
    std::string summary;  // one line, printed to stdout
    bool passed = true;   // false only for a failed verify
};

/// Runs one subcommand, writing its data files and run_meta.json into `out`.
RunResult run_command(const std::string& name, const Config& cfg, OutputDir& out,
                      unsigned threads);

}  // namespace quadwg::app
