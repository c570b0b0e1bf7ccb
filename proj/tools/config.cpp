#include "config.hpp"

#include "quadwg/errors.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace quadwg::app {

namespace {

Error config_error(const std::string& what)
{
    return Error(ErrorKind::Config, what);
}

double to_number(const std::string& text, const std::string& where)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw config_error(where + ": expected a number, got '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw config_error(where + ": expected a number, got '" + text + "'");
    }
    return v;
}

}  // namespace

const std::vector<Key>& schema()
{
    static const std::vector<Key> keys = {
        {"coupling", "preset", "isotropic", "isotropic | chiral | copropagating | custom"},
        {"coupling", "Gamma", "0.004", "total emission rate Γ (units of ω0) for the presets"},
        {"coupling", "rates", "0.001,0.001,0.001,0.001", "γ++,γ+-,γ-+,γ-- for preset = custom"},
        {"coupling", "envelope", "gaussian", "gaussian | lorentzian | tabulated"},
        {"coupling", "beta", "0.02", "envelope width β (ω0)"},
        {"coupling", "fwhm", "0", "> 0: choose β from the FWHM of |u|² instead"},
        {"coupling", "envelope_file", "", "tabulated envelope: CSV rows delta,re[,im]"},
        {"coupling", "omega0", "1", "emitter frequency"},
        {"grid", "n_omegabar", "2048", "sum-frequency points"},
        {"grid", "n_delta", "1024", "difference-frequency points"},
        {"grid", "omegabar_halfwidth", "0", "ω̄ window half-width; 0 = max(20Γ, 6α)"},
        {"grid", "delta_max", "0", "Δ upper limit; 0 = 10·max(α, envelope scale)"},
        {"grid", "csv_stride", "8", "write every n-th grid point along both axes"},
        {"grid", "mirror", "true", "also write the (ω', ω) half of the plane"},
        {"emit", "core_level", "0.5", "density fraction kept for the correlation"},
        {"scatter", "input", "gaussian-pair", "gaussian-pair | matched"},
        {"scatter", "alpha", "0.02", "input width α (ω0)"},
        {"scatter", "omega1", "0.5", "carrier of the first photon (gaussian-pair)"},
        {"scatter", "omega2", "0.5", "carrier of the second photon (gaussian-pair)"},
        {"scatter", "method", "separable", "separable | grid | closed-form"},
        {"scatter", "finite_delta_limit", "false", "restrict Δ-integrals to Δ ≤ ω̄ (grid method)"},
        {"scatter", "core_level", "0.5", "density fraction kept for the correlation"},
        {"sweep-reflection", "alpha", "0.02", "input width α (ω0)"},
        {"sweep-reflection", "gamma_over_alpha", "0.2,1,10,1000", "Γ/α values"},
        {"sweep-reflection", "beta_over_alpha", "log:-1:1:41", "β/α values"},
        {"entangle", "Gamma", "0.004", "total emission rate Γ (isotropic, Lorentzian envelope)"},
        {"entangle", "delta_over_gamma", "lin:0:20:81", "filter detunings δ/Γ"},
        {"entangle", "beta_over_gamma", "log:-2:2:81", "envelope widths β/Γ"},
        {"entangle", "fixed_beta_over_gamma", "0.125", "β/Γ held during the δ sweep"},
        {"entangle", "fixed_delta_over_gamma", "10", "δ/Γ held during the β sweep"},
        {"entangle", "box_width_over_gamma", "0", "> 0: box filters of this full width"},
        {"gate", "Gamma", "0.004", "mirror emitter rate Γ (ω0)"},
        {"gate", "gamma_over_fwhm", "log:0:3:31", "Γ/fwhm values"},
        {"gate", "fwhm_on", "amplitude", "amplitude | density: profile the FWHM refers to"},
        {"gate", "splitting", "0.5", "beam splitter transmission t²"},
        {"verify", "Gamma", "0.004", "Γ for the comparisons (ω0)"},
        {"verify", "alpha", "0.02", "width of the matched Gaussian input"},
        {"verify", "beta", "0.02", "Gaussian envelope width β"},
        {"verify", "n_omegabar", "256", "oracle ω̄ points (raised if the revival time demands)"},
        {"verify", "n_delta", "128", "oracle Δ points"},
        {"verify", "tolerance", "0.02", "relative agreement required"},
    };
    return keys;
}

std::string defaults_text()
{
    std::ostringstream out;
    out << "; quadwg configuration. Frequencies and rates are in units of omega0.\n";
    std::string section;
    for (const auto& k : schema()) {
        if (k.section != section) {
            section = k.section;
            out << "\n[" << section << "]\n";
        }
        out << "; " << k.help << "\n" << k.name << " = " << k.value << "\n";
    }
    return out.str();
}

Config::Config()
{
    for (const auto& k : schema()) {
        values_[k.section + "." + k.name] = k.value;
    }
}

void Config::assign(const std::string& section, const std::string& key, const std::string& value,
                    const std::string& origin)
{
    const std::string full = section + "." + key;
    if (!values_.count(full)) {
        bool known_section = false;
        for (const auto& k : schema()) {
            known_section = known_section || k.section == section;
        }
        throw config_error(origin + ": unknown " +
                           (known_section ? "key '" + key + "' in section [" + section + "]"
                                          : "section [" + section + "]"));
    }
    values_[full] = boost::algorithm::trim_copy(value);
}

void Config::load_string(const std::string& text, const std::string& origin)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw config_error(origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw config_error(origin + ": key '" + section + "' outside any section");
        }
        for (const auto& [key, value] : body) {
            assign(section, key, value.data(), origin);
        }
    }
}

void Config::load_file(const std::string& path)
{
    namespace pt = boost::property_tree;
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot read config file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    load_string(text.str(), path);
}

void Config::set(const std::string& assignment)
{
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw config_error("--set expects section.key=value, got '" + assignment + "'");
    }
    assign(boost::algorithm::trim_copy(assignment.substr(0, dot)),
           boost::algorithm::trim_copy(assignment.substr(dot + 1, eq - dot - 1)), assignment.substr(eq + 1),
           "--set");
}

std::string Config::str(const std::string& section, const std::string& key) const
{
    const auto it = values_.find(section + "." + key);
    if (it == values_.end()) {
        throw config_error("internal: no key " + section + "." + key);
    }
    return it->second;
}

double Config::number(const std::string& section, const std::string& key) const
{
    return to_number(str(section, key), "[" + section + "] " + key);
}

std::size_t Config::count(const std::string& section, const std::string& key) const
{
    const double v = number(section, key);
    if (v < 1.0 || v != std::floor(v) || v > 1e9) {
        throw config_error("[" + section + "] " + key + ": expected a positive integer");
    }
    return static_cast<std::size_t>(v);
}

bool Config::flag(const std::string& section, const std::string& key) const
{
    const std::string v = str(section, key);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw config_error("[" + section + "] " + key + ": expected true or false, got '" + v + "'");
}

std::vector<double> Config::list(const std::string& section, const std::string& key) const
{
    try {
        return parse_list(str(section, key));
    } catch (const Error& e) {
        throw config_error("[" + section + "] " + key + ": " + e.what());
    }
}

std::map<std::string, std::string> Config::dump(const std::vector<std::string>& sections) const
{
    std::map<std::string, std::string> out;
    for (const auto& k : schema()) {
        for (const auto& s : sections) {
            if (k.section == s) {
                out[k.section + "." + k.name] = values_.at(k.section + "." + k.name);
            }
        }
    }
    return out;
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<std::string> parts;
    std::string item;
    const bool ranged = text.rfind("lin:", 0) == 0 || text.rfind("log:", 0) == 0;
    std::istringstream in(ranged ? text.substr(4) : text);
    while (std::getline(in, item, ranged ? ':' : ',')) {
        parts.push_back(boost::algorithm::trim_copy(item));
    }
    if (ranged) {
        if (parts.size() != 3) {
            throw config_error("range needs lin:a:b:n or log:a:b:n");
        }
        const double a = to_number(parts[0], "range start");
        const double b = to_number(parts[1], "range end");
        const double n = to_number(parts[2], "range count");
        if (n < 1 || n != std::floor(n)) {
            throw config_error("range count must be a positive integer");
        }
        std::vector<double> v(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < v.size(); ++k) {
            const double t = v.size() > 1 ? static_cast<double>(k) / static_cast<double>(v.size() - 1) : 0.0;
            const double x = a + (b - a) * t;
            v[k] = text[1] == 'o' ? std::pow(10.0, x) : x;
        }
        return v;
    }
    std::vector<double> v;
    for (const auto& p : parts) {
        v.push_back(to_number(p, "list entry"));
    }
    if (v.empty()) {
        throw config_error("empty list");
    }
    return v;
}

}  // namespace quadwg::app
