#include "output.hpp"

#include "quadwg/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace quadwg::app {

Json quantity(double value, const std::string& unit)
{
    Json j;
    j["value"] = value;
    j["unit"] = unit;
    return j;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

OutputDir::OutputDir(std::string path) : path_(std::move(path))
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(path_, ec);
    if (ec || !fs::is_directory(path_)) {
        throw Error(ErrorKind::Config, "cannot create output directory '" + path_ + "'");
    }
    const fs::path probe = fs::path(path_) / ".quadwg_write_test";
    {
        std::ofstream out(probe);
        if (!out) {
            throw Error(ErrorKind::Config, "output directory '" + path_ + "' is not writable");
        }
    }
    fs::remove(probe, ec);
}

void OutputDir::write(const std::string& name, const std::string& content)
{
    const auto target = std::filesystem::path(path_) / name;
    std::ofstream out(target, std::ios::binary);
    out << content;
    if (!out) {
        throw Error(ErrorKind::Config, "failed writing '" + target.string() + "'");
    }
    files_.push_back(name);
}

void OutputDir::write_json(const std::string& name, const Json& value)
{
    write(name, value.dump(2) + "\n");
}

std::string joint_spectrum_csv(const GridState& state, const std::vector<DirectionPair>& channels,
                               const CsvOptions& opts)
{
    const auto& wb = state.grid.omegabar();
    const auto& dl = state.grid.delta();
    const std::size_t stride = std::max<std::size_t>(1, opts.stride);
    std::string out = "omega,omega_prime,channel,abs2,re,im\n";
    char line[192];
    for (const auto ch : channels) {
        const auto& field = state.channel(ch);
        const std::string label = ch.label();
        const std::string swapped = ch.swapped().label();
        for (std::size_t i = 0; i < wb.count; i += stride) {
            for (std::size_t j = 0; j < dl.count; j += stride) {
                const auto [w, wp] = to_frequency_pair(wb[i], dl[j]);
                const Complex a = field(i, j);
                std::snprintf(line, sizeof line, "%.10g,%.10g,%s,%.10g,%.10g,%.10g\n", w, wp,
                              label.c_str(), std::norm(a), a.real(), a.imag());
                out += line;
                if (opts.mirror && dl[j] > 0.0) {
                    std::snprintf(line, sizeof line, "%.10g,%.10g,%s,%.10g,%.10g,%.10g\n", wp, w,
                                  swapped.c_str(), std::norm(a), a.real(), a.imag());
                    out += line;
                }
            }
        }
    }
    return out;
}

std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows)
{
    std::ostringstream out;
    for (std::size_t k = 0; k < header.size(); ++k) {
        out << (k ? "," : "") << header[k];
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out << (k ? "," : "") << fmt(row[k]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace quadwg::app
