#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace suntrack {

/// Hierarchical key-value text: `[section]` headers prefix the keys below them
/// with `section.`; `key = value` lines; `#` and `;` start comments. Later
/// assignments override earlier ones.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream &in, const std::string &source = "<input>");
    static KeyValueConfig load(const std::filesystem::path &path);

    /// Applies a `dotted.key=value` override.
    void set(const std::string &assignment);
    void set(const std::string &key, const std::string &value);

    bool has(const std::string &key) const { return values_.count(key) != 0; }
    std::optional<std::string> raw(const std::string &key) const;

    std::string get_string(const std::string &key, const std::string &fallback) const;
    double get_double(const std::string &key, double fallback) const;
    long get_int(const std::string &key, long fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;

    /// Keys present in the file that no getter asked for.
    std::vector<std::string> unused_keys() const;

    const std::map<std::string, std::string> &values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

} // namespace suntrack
