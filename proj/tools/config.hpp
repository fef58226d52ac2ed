#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ringsim/errors.hpp"

namespace ringsim::cli {

struct ConfigError : Error {
    using Error::Error;
};

// Flat sectioned key-value text:
//   [section]
//   key = value        # trailing comments allowed
// Keys are unique per section. Silent typos are the main user hazard, so
// consumers must touch every key they accept and then call
// require_all_consumed(), which rejects anything left over.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_text(const std::string& text, const std::string& origin = "<inline>");

    std::optional<std::string> raw(const std::string& section, const std::string& key) const;

    // Typed lookups; each marks the key consumed. A present-but-malformed
    // value is always an error.
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    std::optional<double> get_optional_double(const std::string& section,
                                              const std::string& key) const;

    bool has(const std::string& section, const std::string& key) const;

    // Throws ConfigError listing every key no consumer asked about.
    void require_all_consumed() const;

private:
    std::string origin_;
    std::map<std::string, std::map<std::string, std::string>> sections_;
    mutable std::set<std::string> consumed_;  // "section.key"

    void mark(const std::string& section, const std::string& key) const;
};

}  // namespace ringsim::cli
