#include "qcrb/config.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qcrb/constants.hpp"

namespace qcrb::cli {

namespace {

struct KeyDef {
    const char* name;
    double RunConfig::* num = nullptr;
    std::string RunConfig::* str = nullptr;
};

constexpr std::array<KeyDef, 16> kKeyTable = {{
    {"lambda0_m", &RunConfig::lambda0_m, nullptr},
    {"distance_m", &RunConfig::distance_m, nullptr},
    {"temperature_c", &RunConfig::temperature_c, nullptr},
    {"pressure_pa", &RunConfig::pressure_pa, nullptr},
    {"co2_fraction", &RunConfig::co2_fraction, nullptr},
    {"water_partial_pa", &RunConfig::water_partial_pa, nullptr},
    {"photons", &RunConfig::photons, nullptr},
    {"noise_db", &RunConfig::noise_db, nullptr},
    {"eta", &RunConfig::eta, nullptr},
    {"shape", nullptr, &RunConfig::shape},
    {"mu2_rel", &RunConfig::mu2_rel, nullptr},
    {"beta", &RunConfig::beta, nullptr},
    {"shape_a", &RunConfig::shape_a, nullptr},
    {"centering", nullptr, &RunConfig::centering},
    {"regime", nullptr, &RunConfig::regime},
    {"output", nullptr, &RunConfig::output},
}};

const KeyDef& find_key(const std::string& key) {
    for (const auto& def : kKeyTable)
        if (key == def.name) return def;
    throw ConfigError("unknown configuration key '" + key + "'");
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    double out = 0.0;
    const char* begin = v.data();
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("key '" + key + "': cannot parse number from '" + value + "'");
    return out;
}

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool one_of(const std::string& v, std::initializer_list<const char*> set) {
    for (const char* s : set)
        if (v == s) return true;
    return false;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& def : kKeyTable) k.emplace_back(def.name);
        return k;
    }();
    return keys;
}

bool key_is_numeric(const std::string& key) { return find_key(key).num != nullptr; }

std::string get_key(const RunConfig& c, const std::string& key) {
    const KeyDef& def = find_key(key);
    return def.num ? format_number(c.*(def.num)) : c.*(def.str);
}

void set_key(RunConfig& c, const std::string& key, const std::string& value) {
    const KeyDef& def = find_key(key);
    if (def.num)
        c.*(def.num) = parse_double(key, value);
    else
        c.*(def.str) = trim(value);
}

void set_key(RunConfig& c, const std::string& key, double value) {
    const KeyDef& def = find_key(key);
    if (!def.num) throw ConfigError("key '" + key + "' is not numeric");
    c.*(def.num) = value;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    RunConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        set_key(c, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
    return c;
}

void apply_overrides(RunConfig& c, const std::vector<std::string>& overrides) {
    for (const auto& ov : overrides) {
        const size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw ConfigError("override '" + ov + "': expected key=value");
        set_key(c, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
    }
}

void validate(const RunConfig& c) {
    check(std::isfinite(c.lambda0_m) && c.lambda0_m > 0.0, "lambda0_m must be > 0");
    const double nu_tilde = wavenumber_per_um(omega_from_wavelength(c.lambda0_m));
    check(nu_tilde * nu_tilde < 38.9,
          "lambda0_m outside the refractive-index validity window (needs lambda > 0.1604 um)");
    check(std::isfinite(c.distance_m) && c.distance_m >= 0.0, "distance_m must be >= 0");
    try {
        c.ambient().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    check(std::isfinite(c.photons) && c.photons > 0.0, "photons must be > 0");
    check(std::isfinite(c.noise_db), "noise_db must be finite");
    check(std::isfinite(c.eta) && c.eta >= 0.0 && c.eta <= 1.0, "eta must lie in [0, 1]");
    check(one_of(c.shape, {"gaussian", "sech2", "skew_normal", "symmetric"}),
          "shape must be one of gaussian|sech2|skew_normal|symmetric");
    check(std::isfinite(c.mu2_rel) && c.mu2_rel > 0.0 && c.mu2_rel <= 0.25,
          "mu2_rel must lie in (0, 0.25]");
    if (c.shape == "symmetric")
        check(std::isfinite(c.beta) && c.beta >= 1.0, "beta must be >= 1 for symmetric shapes");
    if (c.shape == "skew_normal") {
        check(std::isfinite(c.shape_a), "shape_a must be finite");
        check(one_of(c.centering, {"mean", "mode"}), "centering must be mean|mode");
    }
    check(one_of(c.regime, {"full_nuisance", "known_nuisance"}),
          "regime must be full_nuisance|known_nuisance");
    check(one_of(c.output, {"csv", "json"}), "output must be csv|json");
}

}  // namespace qcrb::cli
