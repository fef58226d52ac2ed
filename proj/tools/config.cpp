#include "config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ringsim::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& s) {
    const std::size_t pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

Config Config::parse_text(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(body.substr(1, body.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            cfg.sections_[section];  // allow empty sections
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": key outside any [section]");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        auto& sec = cfg.sections_[section];
        if (sec.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        sec[key] = value;
    }
    return cfg;
}

std::optional<std::string> Config::raw(const std::string& section, const std::string& key) const {
    const auto sit = sections_.find(section);
    if (sit == sections_.end()) return std::nullopt;
    const auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return std::nullopt;
    return kit->second;
}

void Config::mark(const std::string& section, const std::string& key) const {
    consumed_.insert(section + "." + key);
}

bool Config::has(const std::string& section, const std::string& key) const {
    return raw(section, key).has_value();
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    mark(section, key);
    const auto v = raw(section, key);
    if (!v) return fallback;
    char* end = nullptr;
    errno = 0;
    const double parsed = std::strtod(v->c_str(), &end);
    if (errno != 0 || end == v->c_str() || *end != '\0')
        throw ConfigError(origin_ + ": [" + section + "] " + key + ": not a number: '" + *v + "'");
    return parsed;
}

std::optional<double> Config::get_optional_double(const std::string& section,
                                                  const std::string& key) const {
    if (!has(section, key)) {
        mark(section, key);
        return std::nullopt;
    }
    return get_double(section, key, 0.0);
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    mark(section, key);
    const auto v = raw(section, key);
    if (!v) return fallback;
    char* end = nullptr;
    errno = 0;
    const long parsed = std::strtol(v->c_str(), &end, 10);
    if (errno != 0 || end == v->c_str() || *end != '\0')
        throw ConfigError(origin_ + ": [" + section + "] " + key + ": not an integer: '" + *v + "'");
    return static_cast<int>(parsed);
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    mark(section, key);
    const auto v = raw(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError(origin_ + ": [" + section + "] " + key + ": not a boolean: '" + *v + "'");
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    mark(section, key);
    const auto v = raw(section, key);
    return v ? *v : fallback;
}

void Config::require_all_consumed() const {
    std::vector<std::string> unknown;
    for (const auto& [section, keys] : sections_)
        for (const auto& [key, value] : keys)
            if (!consumed_.count(section + "." + key)) unknown.push_back("[" + section + "] " + key);
    if (!unknown.empty()) {
        std::string msg = origin_ + ": unknown key(s):";
        for (const auto& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
}

}  // namespace ringsim::cli
