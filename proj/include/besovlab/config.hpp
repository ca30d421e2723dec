#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "besovlab/common.hpp"

namespace besovlab {

/// Flat sectioned key-value config, TOML-compatible for the subset used here:
/// [section] headers, key = number | "string" | true/false | [num, num, ...],
/// # comments. Serialization is canonical (sorted sections and keys, shortest
/// round-trip float formatting), so parse -> serialize -> parse is stable and
/// re-emitted manifests are byte-identical.
class ConfigFile {
  public:
    using Value = std::variant<double, std::string, bool, std::vector<double>>;

    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::filesystem::path& path);

    std::string serialize() const;
    void save(const std::filesystem::path& path) const;

    bool has(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    std::vector<double> get_array(const std::string& section, const std::string& key,
                                  const std::vector<double>& fallback) const;

    void set_double(const std::string& section, const std::string& key, double value);
    void set_int(const std::string& section, const std::string& key, int value);
    void set_bool(const std::string& section, const std::string& key, bool value);
    void set_string(const std::string& section, const std::string& key, std::string value);
    void set_array(const std::string& section, const std::string& key,
                   std::vector<double> value);

    const std::map<std::string, std::map<std::string, Value>>& sections() const {
        return sections_;
    }

  private:
    const Value* find(const std::string& section, const std::string& key) const;
    std::map<std::string, std::map<std::string, Value>> sections_;
};

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// FNV-1a 64-bit, used to key report files off their canonical config text.
std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace besovlab
