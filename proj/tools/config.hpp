#pragma once

// INI-style experiment configuration: built-in defaults, then a file, then
// --set overrides. Unknown sections and keys are rejected.

#include <map>
#include <string>
#include <vector>

namespace quadwg::app {

struct Key {
    std::string section;
    std::string name;
    std::string value;  // default
    std::string help;
};

/// Every recognised key with its default.
const std::vector<Key>& schema();

/// Annotated template with all defaults (the --print-defaults output).
std::string defaults_text();

class Config {
public:
    /// Defaults only.
    Config();

    /// Merges an INI file. Syntax errors report the line; unknown keys the
    /// section and key.
    void load_file(const std::string& path);
    void load_string(const std::string& text, const std::string& origin = "<string>");
    /// "section.key=value".
    void set(const std::string& assignment);

    std::string str(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key) const;
    std::size_t count(const std::string& section, const std::string& key) const;
    bool flag(const std::string& section, const std::string& key) const;
    /// Comma list, or lin:a:b:n / log:a:b:n (log uses exponents of ten).
    std::vector<double> list(const std::string& section, const std::string& key) const;

    /// Resolved values of the given sections, in schema order.
    std::map<std::string, std::string> dump(const std::vector<std::string>& sections) const;

private:
    void assign(const std::string& section, const std::string& key, const std::string& value,
                const std::string& origin);
    std::map<std::string, std::string> values_;  // "section.key"
};

/// Parses the list syntax above.
std::vector<double> parse_list(const std::string& text);

}  // namespace quadwg::app
