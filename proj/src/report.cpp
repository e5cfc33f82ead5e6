#include "qcrb/report.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace qcrb::cli {

namespace {

/// Output values in the order of output_keys(), formatted for emission.
std::vector<std::string> output_values(const BoundRecord& r) {
    std::string error = r.error;
    for (char& ch : error)
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    return {format_number(r.n_mean),      format_number(r.n_var),
            format_number(r.f_q),         format_number(r.sigma_tphi_s),
            format_number(r.sigma_tg_s),  format_number(r.sigma_tgvd_s),
            format_number(r.sigma_L_m),   format_number(r.sigma_ratio),
            error};
}

}  // namespace

const std::vector<std::string>& output_keys() {
    static const std::vector<std::string> keys = {
        "n_mean",      "n_var",      "f_q",       "sigma_tphi_s", "sigma_tg_s",
        "sigma_tgvd_s", "sigma_L_m", "sigma_ratio", "error"};
    return keys;
}

std::string to_csv(const std::vector<BoundRecord>& records) {
    std::ostringstream out;
    bool first = true;
    for (const auto& key : config_keys()) {
        out << (first ? "" : ",") << key;
        first = false;
    }
    for (const auto& key : output_keys()) out << ',' << key;
    out << '\n';
    for (const auto& rec : records) {
        first = true;
        for (const auto& key : config_keys()) {
            out << (first ? "" : ",") << get_key(rec.config, key);
            first = false;
        }
        for (const auto& value : output_values(rec)) out << ',' << value;
        out << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<BoundRecord>& records) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& rec : records) {
        nlohmann::ordered_json row;
        for (const auto& key : config_keys()) row[key] = get_key(rec.config, key);
        const auto& keys = output_keys();
        const auto values = output_values(rec);
        for (size_t i = 0; i < keys.size(); ++i) row[keys[i]] = values[i];
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

std::string index_report_text(const IndexReport& rep) {
    std::ostringstream out;
    out << "x = " << format_number(rep.x) << '\n'
        << "n_phase = " << format_number(rep.n) << '\n'
        << "n_group = " << format_number(rep.group_index) << '\n'
        << "gvd_index = " << format_number(rep.gvd_index) << '\n'
        << "k0_ns_per_m = " << format_number(rep.k.k0) << '\n'
        << "k1_ns_per_m = " << format_number(rep.k.k1) << '\n'
        << "k2_ns_per_m_pa = " << format_number(rep.k.k2) << '\n'
        << "k3_ns_per_m = " << format_number(rep.k.k3) << '\n'
        << "k4_ns_per_m_pa = " << format_number(rep.k.k4) << '\n'
        << "k5_ns_per_m = " << format_number(rep.k.k5) << '\n'
        << "k6_ns_per_m_pa = " << format_number(rep.k.k6) << '\n';
    return out.str();
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
    out << content;
}

}  // namespace qcrb::cli
