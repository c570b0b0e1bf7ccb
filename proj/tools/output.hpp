#pragma once

// Files written by the CLI. Data files are deterministic; the timestamp
// lives only in run_meta.json.

#include "quadwg/spectral.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace quadwg::app {

using Json = nlohmann::ordered_json;

/// {"value": v, "unit": unit}.
Json quantity(double value, const std::string& unit);

class OutputDir {
public:
    /// Creates the directory if needed and checks that it is writable.
    explicit OutputDir(std::string path);

    const std::string& path() const { return path_; }
    /// Writes `name` inside the directory and records it.
    void write(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const Json& value);
    const std::vector<std::string>& files() const { return files_; }

private:
    std::string path_;
    std::vector<std::string> files_;
};

struct CsvOptions {
    std::size_t stride = 1;
    /// Also emit (ω', ω) for Δ > 0 with the channel label reversed.
    bool mirror = true;
};

/// Header omega,omega_prime,channel,abs2,re,im; rows for the given channels.
std::string joint_spectrum_csv(const GridState& state, const std::vector<DirectionPair>& channels,
                               const CsvOptions& opts);

/// Plain table with a header line and "%.10g" cells.
std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

/// "%.10g".
std::string fmt(double v);

}  // namespace quadwg::app
