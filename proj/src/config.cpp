#include "suntrack/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <stdexcept>

#include "suntrack/format.hpp"

namespace suntrack {

namespace {

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string &line) {
    const auto pos = line.find_first_of("#;");
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

KeyValueConfig KeyValueConfig::parse(std::istream &in, const std::string &source) {
    KeyValueConfig cfg;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(strip_comment(line));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw std::runtime_error(source + ":" + std::to_string(line_no) + ": unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(source + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(text.substr(0, eq));
        if (key.empty()) throw std::runtime_error(source + ":" + std::to_string(line_no) + ": empty key");
        cfg.set(section.empty() ? key : section + "." + key, trim(text.substr(eq + 1)));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
    return parse(in, path.string());
}

void KeyValueConfig::set(const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("override must look like key=value: " + assignment);
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void KeyValueConfig::set(const std::string &key, const std::string &value) {
    if (key.empty()) throw std::invalid_argument("empty configuration key");
    values_[key] = value;
}

std::optional<std::string> KeyValueConfig::raw(const std::string &key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    used_.insert(key);
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string &key, const std::string &fallback) const {
    return raw(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string &key, double fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    try {
        return parse_double(*v);
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument("key " + key + " expects a number, got '" + *v + "'");
    }
}

long KeyValueConfig::get_int(const std::string &key, long fallback) const {
    const double v = get_double(key, static_cast<double>(fallback));
    if (v != static_cast<double>(static_cast<long>(v)))
        throw std::invalid_argument("key " + key + " expects an integer");
    return static_cast<long>(v);
}

bool KeyValueConfig::get_bool(const std::string &key, bool fallback) const {
    const auto v = raw(key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw std::invalid_argument("key " + key + " expects a boolean, got '" + *v + "'");
}

std::vector<std::string> KeyValueConfig::unused_keys() const {
    std::vector<std::string> out;
    for (const auto &[k, v] : values_)
        if (!used_.count(k)) out.push_back(k);
    return out;
}

} // namespace suntrack
