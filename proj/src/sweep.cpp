#include "qcrb/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

namespace qcrb::cli {

namespace {

double parse_num(const std::string& text, const std::string& what) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("axis " + what + ": cannot parse '" + text + "'");
    return out;
}

/// Applies one grid coordinate to a config, translating the "delta"
/// pseudo-key into the skew-normal shape parameter a = δ/√(1−δ²).
void apply_axis_value(RunConfig& c, const std::string& key, double value) {
    if (key == "delta") {
        if (!(std::abs(value) < 1.0))
            throw ConfigError("delta axis values must satisfy |delta| < 1");
        set_key(c, "shape_a", value / std::sqrt(1.0 - value * value));
        return;
    }
    set_key(c, key, value);
}

void mark_failed(BoundRecord& rec, const RunConfig& c, const std::string& message) {
    rec.config = c;
    rec.error = message;
    rec.n_mean = rec.n_var = rec.f_q = std::nan("");
    rec.sigma_tphi_s = rec.sigma_tg_s = rec.sigma_tgvd_s = std::nan("");
    rec.sigma_L_m = rec.sigma_ratio = std::nan("");
}

BoundRecord evaluate_row(const RunConfig& c, SweepKind kind) {
    BoundRecord rec;
    try {
        rec = evaluate_bound(c);
        if (kind == SweepKind::Skew) {
            RunConfig ref = c;
            ref.shape = "gaussian";
            ref.shape_a = 0.0;
            rec.sigma_ratio = rec.sigma_L_m / evaluate_bound(ref).sigma_L_m;
        }
    } catch (const std::exception& e) {
        mark_failed(rec, c, e.what());
    }
    return rec;
}

}  // namespace

SweepKind parse_kind(const std::string& name) {
    if (name == "shape") return SweepKind::Shape;
    if (name == "skew") return SweepKind::Skew;
    if (name == "loss") return SweepKind::Loss;
    if (name == "custom") return SweepKind::Custom;
    throw ConfigError("unknown sweep kind '" + name + "' (shape|skew|loss|custom)");
}

std::string to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::Shape: return "shape";
        case SweepKind::Skew: return "skew";
        case SweepKind::Loss: return "loss";
        case SweepKind::Custom: return "custom";
    }
    return "custom";
}

AxisSpec parse_axis(const std::string& text) {
    const size_t eq = text.find('=');
    if (eq == std::string::npos)
        throw ConfigError("axis '" + text + "': expected key=min:max:count[:log]");
    AxisSpec axis;
    axis.key = text.substr(0, eq);
    std::vector<std::string> parts;
    size_t start = eq + 1;
    while (start <= text.size()) {
        const size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string::npos ? colon : colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 4)
        throw ConfigError("axis '" + text + "': expected key=min:max:count[:log]");
    axis.min = parse_num(parts[0], axis.key);
    axis.max = parse_num(parts[1], axis.key);
    axis.count = static_cast<int>(parse_num(parts[2], axis.key));
    if (parts.size() == 4) {
        if (parts[3] == "log")
            axis.log = true;
        else if (parts[3] != "lin")
            throw ConfigError("axis '" + text + "': scale must be lin or log");
    }
    return axis;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2)
        throw ConfigError("sweep requires 1 or 2 axes");
    for (const auto& axis : axes) {
        if (axis.key != "delta" && !key_is_numeric(axis.key))
            throw ConfigError("axis key '" + axis.key + "' is not a numeric config key");
        if (axis.count < 2) throw ConfigError("axis '" + axis.key + "': count must be >= 2");
        if (!(std::isfinite(axis.min) && std::isfinite(axis.max) && axis.min < axis.max))
            throw ConfigError("axis '" + axis.key + "': need finite min < max");
        if (axis.log && !(axis.min > 0.0))
            throw ConfigError("axis '" + axis.key + "': log axes need min > 0");
    }
}

SweepSpec preset_sweep(SweepKind kind) {
    SweepSpec spec;
    spec.kind = kind;
    switch (kind) {
        case SweepKind::Shape:
            spec.axes = {{"mu2_rel", 1e-4, 0.25, 20, true}, {"beta", 1.5, 10.0, 20, false}};
            break;
        case SweepKind::Skew:
            spec.axes = {{"noise_db", -10.0, 10.0, 21, false}, {"delta", -0.9, 0.9, 19, false}};
            break;
        case SweepKind::Loss:
            spec.axes = {{"eta", 0.02, 1.0, 50, false}};
            break;
        case SweepKind::Custom:
            break;
    }
    return spec;
}

std::string preset_shape(SweepKind kind) {
    switch (kind) {
        case SweepKind::Shape: return "symmetric";
        case SweepKind::Skew: return "skew_normal";
        default: return "";
    }
}

std::vector<double> axis_values(const AxisSpec& axis) {
    std::vector<double> v(axis.count);
    for (int i = 0; i < axis.count; ++i) {
        const double f = double(i) / (axis.count - 1);
        if (axis.log)
            v[i] = axis.min * std::pow(axis.max / axis.min, f);
        else
            v[i] = axis.min + f * (axis.max - axis.min);
    }
    v.back() = axis.max;  // pin the endpoint against rounding
    return v;
}

std::vector<BoundRecord> run_sweep(const RunConfig& base, const SweepSpec& spec, int threads) {
    spec.validate();
    std::vector<std::vector<double>> grids;
    for (const auto& axis : spec.axes) grids.push_back(axis_values(axis));
    const size_t rows = grids.size() == 2 ? grids[0].size() * grids[1].size() : grids[0].size();

    std::vector<BoundRecord> records(rows);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < rows; i = next.fetch_add(1)) {
            RunConfig c = base;
            try {
                if (grids.size() == 2) {
                    apply_axis_value(c, spec.axes[0].key, grids[0][i / grids[1].size()]);
                    apply_axis_value(c, spec.axes[1].key, grids[1][i % grids[1].size()]);
                } else {
                    apply_axis_value(c, spec.axes[0].key, grids[0][i]);
                }
                records[i] = evaluate_row(c, spec.kind);
            } catch (const std::exception& e) {
                mark_failed(records[i], c, e.what());
            }
        }
    };

    int n_threads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, int(rows)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return records;
}

}  // namespace qcrb::cli
