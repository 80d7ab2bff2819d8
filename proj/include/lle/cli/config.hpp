// include/lle/cli/config.hpp
//
// Experiment configuration: an INI-style file of [section] headers and
// `key = value` lines.  Values are typed by a fixed schema (docs/config.md);
// unknown keys and malformed values are rejected.  Environment variables
// LLE_<SECTION>_<KEY> override file values.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lle::cli {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class ValueType { Double, Int, Bool, String, DoubleList, IntList };

struct SchemaEntry {
    std::string_view key;  // "section.key"
    ValueType type;
    std::string_view default_value;  // empty: no default
    std::string_view help;
};

const std::vector<SchemaEntry>& schema();
const SchemaEntry* find_schema(std::string_view key);
const char* to_string(ValueType t);

// Typed scalar / list parsing shared by the getters and validation.
double parse_double(std::string_view text, std::string_view what);
std::int64_t parse_int(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);
// Comma-separated values, or linspace(a, b, count).
std::vector<double> parse_double_list(std::string_view text, std::string_view what);
std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view what);

class Config {
public:
    static Config parse(std::string_view text, std::string_view origin = "<string>");
    static Config load(const std::filesystem::path& path);

    // Raw assignment; the key must be in the schema and the value must parse.
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    void erase(const std::string& key) { values_.erase(key); }

    // Values fall back to schema defaults; a key without value or default
    // throws ConfigError.
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;

    // Applies LLE_<SECTION>_<KEY> variables.  Unknown LLE_ names are errors
    // unless listed in `reserved`.
    void apply_env(const std::map<std::string, std::string>& env,
                   const std::vector<std::string>& reserved = {});

    // Explicitly set values, sorted by key.
    const std::map<std::string, std::string>& values() const { return values_; }

    // "section.key = value" lines sorted by key: explicit values, plus schema
    // defaults when include_defaults is set; keys in `exclude` are skipped.
    std::string canonical(bool include_defaults = false, const std::vector<std::string>& exclude = {}) const;

private:
    std::optional<std::string> raw(const std::string& key, ValueType expected) const;
    std::map<std::string, std::string> values_;
};

// All LLE_* variables of the process environment.
std::map<std::string, std::string> process_env();

// "model.zeta" -> "LLE_MODEL_ZETA"
std::string env_name(std::string_view key);

}  // namespace lle::cli
