#include "lle/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

extern char** environ;

namespace lle::cli {

namespace {

using VT = ValueType;

const std::vector<SchemaEntry> kSchema = {
    {"experiment.kind", VT::String, "", "trivial-branch | continue | sweep | bifurcation-scan | sign-map | bounds-report | reproduce-fig | locate-threshold"},
    {"experiment.target", VT::String, "", "reproduce-fig target: fig1 .. fig6"},
    {"experiment.seed", VT::Int, "1", "seed for random multi-start runs"},
    {"model.d", VT::Double, "-0.1", "dispersion coefficient, nonzero"},
    {"model.f0", VT::Double, "2", "constant pump amplitude"},
    {"model.f1", VT::Double, "0", "second pump amplitude (bounds-report)"},
    {"model.k1", VT::Int, "1", "mode index of the second pump, >= 1"},
    {"model.omega", VT::Double, "1", "wave speed"},
    {"model.zeta", VT::Double, "", "detuning"},
    {"model.zeta_list", VT::DoubleList, "", "detunings for sweep"},
    {"grid.n", VT::Int, "256", "grid points, even and >= 8"},
    {"continuation.param", VT::String, "f1", "continued parameter: f1 | zeta"},
    {"continuation.ds0", VT::Double, "0.01", "initial step"},
    {"continuation.ds_min", VT::Double, "1e-5", "smallest step"},
    {"continuation.ds_max", VT::Double, "0.1", "largest step"},
    {"continuation.max_steps", VT::Int, "4000", "steps per direction"},
    {"continuation.loop_tol", VT::Double, "1e-6", "loop closure tolerance"},
    {"continuation.param_min", VT::Double, "-2", "lower parameter bound"},
    {"continuation.param_max", VT::Double, "2", "upper parameter bound"},
    {"continuation.max_tangent_turn", VT::Double, "0.35", "largest accepted tangent turn, radians"},
    {"continuation.two_sided", VT::Bool, "true", "trace both directions from the start"},
    {"continuation.record_min_sv", VT::Bool, "true", "record the smallest singular value per point"},
    {"newton.tol_residual", VT::Double, "1e-10", "residual target, scaled by sqrt(n)"},
    {"newton.max_iter", VT::Int, "25", "Newton iteration cap"},
    {"start.trivial_index", VT::IntList, "", "trivial points to start from (ascending rho); empty = all"},
    {"trivial.f0_list", VT::DoubleList, "", "pump amplitudes for trivial-branch; empty = model.f0"},
    {"trivial.t_count", VT::Int, "1999", "samples of the curve parameter"},
    {"trivial.t_max", VT::Double, "0.999", "|t| range of the curve parameter"},
    {"sign_map.t_min", VT::Double, "-0.999", "first curve parameter"},
    {"sign_map.t_max", VT::Double, "0.999", "last curve parameter"},
    {"sign_map.t_count", VT::Int, "3997", "number of samples"},
    {"sign_map.check_zeta", VT::DoubleList, "", "detunings for the numeric second-derivative check"},
    {"sign_map.fd_step", VT::Double, "1e-3", "f1 step of the numeric check"},
    {"sign_map.check_n", VT::Int, "512", "grid of the numeric check"},
    {"bounds.multistart", VT::Int, "0", "random-start Newton runs inside the sup-norm ball"},
    {"bounds.inflation", VT::Double, "1", "relative slack when verifying bounds"},
    {"threshold.lo", VT::Double, "", "lower end of the zeta bracket"},
    {"threshold.hi", VT::Double, "", "upper end of the zeta bracket"},
    {"threshold.width", VT::Double, "0.01", "target bracket width"},
    {"bifurcation.rank_tol", VT::Double, "1e-6", "relative singular value cut for the kernel"},
    {"output.dir", VT::String, "out", "output directory"},
    {"output.write_fields", VT::Bool, "false", "also write JSON snapshots of f1 = 0 fields"},
    {"run.threads", VT::Int, "0", "worker threads; 0 = hardware concurrency"},
    {"run.verbose", VT::Bool, "false", "progress messages on stderr"},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string r(s);
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::tolower(c); });
    return r;
}

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    if (trim(s).empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(',', start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

void check_value(const SchemaEntry& e, std::string_view value) {
    switch (e.type) {
        case VT::Double: parse_double(value, e.key); break;
        case VT::Int: parse_int(value, e.key); break;
        case VT::Bool: parse_bool(value, e.key); break;
        case VT::String: break;
        case VT::DoubleList: parse_double_list(value, e.key); break;
        case VT::IntList: parse_int_list(value, e.key); break;
    }
}

}  // namespace

const std::vector<SchemaEntry>& schema() { return kSchema; }

const SchemaEntry* find_schema(std::string_view key) {
    for (const auto& e : kSchema)
        if (e.key == key) return &e;
    return nullptr;
}

const char* to_string(ValueType t) {
    switch (t) {
        case VT::Double: return "real";
        case VT::Int: return "integer";
        case VT::Bool: return "bool";
        case VT::String: return "string";
        case VT::DoubleList: return "real list";
        case VT::IntList: return "integer list";
    }
    return "?";
}

double parse_double(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ConfigError(std::string(what) + ": expected a finite real, got '" + std::string(text) + "'");
    return v;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw ConfigError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
    return v;
}

bool parse_bool(std::string_view text, std::string_view what) {
    const std::string t = lower(trim(text));
    if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
    if (t == "false" || t == "no" || t == "off" || t == "0") return false;
    throw ConfigError(std::string(what) + ": expected a boolean, got '" + std::string(trim(text)) + "'");
}

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
    text = trim(text);
    if (text.starts_with("linspace(")) {
        if (!text.ends_with(")")) throw ConfigError(std::string(what) + ": unterminated linspace(");
        const auto args = split_commas(text.substr(9, text.size() - 10));
        if (args.size() != 3) throw ConfigError(std::string(what) + ": linspace needs (start, stop, count)");
        const double a = parse_double(args[0], what);
        const double b = parse_double(args[1], what);
        const auto count = parse_int(args[2], what);
        if (count < 1) throw ConfigError(std::string(what) + ": linspace count must be >= 1");
        std::vector<double> out(static_cast<std::size_t>(count));
        for (std::int64_t i = 0; i < count; ++i)
            out[static_cast<std::size_t>(i)] = count == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
        return out;
    }
    std::vector<double> out;
    for (auto item : split_commas(text)) out.push_back(parse_double(item, what));
    return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view what) {
    std::vector<std::int64_t> out;
    for (auto item : split_commas(text)) out.push_back(parse_int(item, what));
    return out;
}

Config Config::parse(std::string_view text, std::string_view origin) {
    Config cfg;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        const auto where = [&] { return std::string(origin) + ":" + std::to_string(line_no) + ": "; };

        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where() + "malformed section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw ConfigError(where() + "empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where() + "expected 'key = value'");
        if (section.empty()) throw ConfigError(where() + "key outside of a section");
        const std::string key = section + "." + lower(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (cfg.values_.count(key)) throw ConfigError(where() + "duplicate key '" + key + "'");
        try {
            cfg.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where() + e.what());
        }
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value) {
    const SchemaEntry* e = find_schema(key);
    if (!e) throw ConfigError("unknown key '" + key + "'");
    check_value(*e, value);
    values_[key] = value;
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

std::optional<std::string> Config::raw(const std::string& key, ValueType expected) const {
    const SchemaEntry* e = find_schema(key);
    if (!e) throw ConfigError("unknown key '" + key + "'");
    if (e->type != expected)
        throw ConfigError("key '" + key + "' has type " + to_string(e->type) + ", read as " + to_string(expected));
    if (auto it = values_.find(key); it != values_.end()) return it->second;
    if (!e->default_value.empty()) return std::string(e->default_value);
    return std::nullopt;
}

namespace {
[[noreturn]] void missing(const std::string& key) { throw ConfigError("missing required key '" + key + "'"); }
}  // namespace

double Config::get_double(const std::string& key) const {
    auto v = raw(key, VT::Double);
    if (!v) missing(key);
    return parse_double(*v, key);
}

std::int64_t Config::get_int(const std::string& key) const {
    auto v = raw(key, VT::Int);
    if (!v) missing(key);
    return parse_int(*v, key);
}

bool Config::get_bool(const std::string& key) const {
    auto v = raw(key, VT::Bool);
    if (!v) missing(key);
    return parse_bool(*v, key);
}

std::string Config::get_string(const std::string& key) const {
    auto v = raw(key, VT::String);
    if (!v) missing(key);
    return *v;
}

// Lists default to empty.
std::vector<double> Config::get_double_list(const std::string& key) const {
    auto v = raw(key, VT::DoubleList);
    return v ? parse_double_list(*v, key) : std::vector<double>{};
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
    auto v = raw(key, VT::IntList);
    return v ? parse_int_list(*v, key) : std::vector<std::int64_t>{};
}

std::string env_name(std::string_view key) {
    std::string out = "LLE_";
    for (char c : key) out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

void Config::apply_env(const std::map<std::string, std::string>& env, const std::vector<std::string>& reserved) {
    for (const auto& [name, value] : env) {
        if (!name.starts_with("LLE_")) continue;
        if (std::find(reserved.begin(), reserved.end(), name) != reserved.end()) continue;
        const SchemaEntry* hit = nullptr;
        for (const auto& e : kSchema)
            if (env_name(e.key) == name) hit = &e;
        if (!hit) throw ConfigError("unknown environment override '" + name + "'");
        try {
            set(std::string(hit->key), value);
        } catch (const ConfigError& e) {
            throw ConfigError(name + ": " + e.what());
        }
    }
}

std::string Config::canonical(bool include_defaults, const std::vector<std::string>& exclude) const {
    std::map<std::string, std::string> all = values_;
    if (include_defaults)
        for (const auto& e : kSchema)
            if (!e.default_value.empty()) all.emplace(std::string(e.key), std::string(e.default_value));
    std::string out;
    for (const auto& [k, v] : all)
        if (std::find(exclude.begin(), exclude.end(), k) == exclude.end()) out += k + " = " + v + "\n";
    return out;
}

std::map<std::string, std::string> process_env() {
    std::map<std::string, std::string> out;
    for (char** e = environ; e && *e; ++e) {
        std::string_view kv(*e);
        if (!kv.starts_with("LLE_")) continue;
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) continue;
        out.emplace(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
    }
    return out;
}

}  // namespace lle::cli
