#include "besovlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace besovlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

double parse_number(const std::string& token, int line_no) {
    const std::string t = trim(token);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": not a number: '" + t + "'");
    }
    if (used != t.size())
        throw ConfigError("line " + std::to_string(line_no) + ": trailing junk in number: '" +
                          t + "'");
    return value;
}

ConfigFile::Value parse_value(const std::string& raw, int line_no) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value");
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
        return v.substr(1, v.size() - 2);
    }
    if (v.front() == '[') {
        if (v.back() != ']')
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
        std::vector<double> values;
        std::string inner = v.substr(1, v.size() - 2);
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (trim(item).empty()) continue;
            values.push_back(parse_number(item, line_no));
        }
        return values;
    }
    return parse_number(v, line_no);
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, end);
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": empty section name");
            cfg.sections_[section];
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (section.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
        cfg.sections_[section][key] = parse_value(line.substr(eq + 1), line_no);
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ConfigFile::serialize() const {
    std::string out;
    bool first = true;
    for (const auto& [section, keys] : sections_) {
        if (!first) out += "\n";
        first = false;
        out += "[" + section + "]\n";
        for (const auto& [key, value] : keys) {
            out += key + " = ";
            if (std::holds_alternative<double>(value)) {
                out += format_double(std::get<double>(value));
            } else if (std::holds_alternative<bool>(value)) {
                out += std::get<bool>(value) ? "true" : "false";
            } else if (std::holds_alternative<std::string>(value)) {
                out += "\"" + std::get<std::string>(value) + "\"";
            } else {
                const auto& arr = std::get<std::vector<double>>(value);
                out += "[";
                for (std::size_t i = 0; i < arr.size(); ++i) {
                    if (i) out += ", ";
                    out += format_double(arr[i]);
                }
                out += "]";
            }
            out += "\n";
        }
    }
    return out;
}

void ConfigFile::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config: " + path.string());
    out << serialize();
}

const ConfigFile::Value* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (!std::holds_alternative<double>(*v))
        throw ConfigError(section + "." + key + " must be a number");
    return std::get<double>(*v);
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
    const double v = get_double(section, key, fallback);
    const int n = static_cast<int>(std::llround(v));
    if (std::abs(v - n) > 1e-9) throw ConfigError(section + "." + key + " must be an integer");
    return n;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (!std::holds_alternative<bool>(*v))
        throw ConfigError(section + "." + key + " must be true or false");
    return std::get<bool>(*v);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (!std::holds_alternative<std::string>(*v))
        throw ConfigError(section + "." + key + " must be a string");
    return std::get<std::string>(*v);
}

std::vector<double> ConfigFile::get_array(const std::string& section, const std::string& key,
                                          const std::vector<double>& fallback) const {
    const Value* v = find(section, key);
    if (!v) return fallback;
    if (!std::holds_alternative<std::vector<double>>(*v))
        throw ConfigError(section + "." + key + " must be an array of numbers");
    return std::get<std::vector<double>>(*v);
}

void ConfigFile::set_double(const std::string& section, const std::string& key, double value) {
    sections_[section][key] = value;
}
void ConfigFile::set_int(const std::string& section, const std::string& key, int value) {
    sections_[section][key] = static_cast<double>(value);
}
void ConfigFile::set_bool(const std::string& section, const std::string& key, bool value) {
    sections_[section][key] = value;
}
void ConfigFile::set_string(const std::string& section, const std::string& key,
                            std::string value) {
    sections_[section][key] = std::move(value);
}
void ConfigFile::set_array(const std::string& section, const std::string& key,
                           std::vector<double> value) {
    sections_[section][key] = std::move(value);
}

}  // namespace besovlab
