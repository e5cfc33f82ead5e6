#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qcrb/report.hpp"
#include "qcrb/sweep.hpp"
#include "qcrb/validate.hpp"

namespace {

using namespace qcrb::cli;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_format;  // empty = from config
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "flat key = value configuration file");
    cmd->add_option("--set", opt.overrides, "override one key, e.g. --set eta=0.5")
        ->take_all();
    cmd->add_option("--output", opt.output_format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opt.out_path, "write the report to this path instead of stdout");
}

RunConfig build_config(const CommonOptions& opt, const std::string& preset_family = "") {
    RunConfig c;
    if (!opt.config_path.empty()) c = load_config_file(opt.config_path);
    if (!preset_family.empty()) c.shape = preset_family;
    apply_overrides(c, opt.overrides);
    if (!opt.output_format.empty()) c.output = opt.output_format;
    return c;
}

void emit_records(const std::vector<BoundRecord>& records, const RunConfig& c,
                  const std::string& out_path) {
    write_output(c.output == "json" ? to_json(records) : to_csv(records), out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Cramér-Rao bounds for frequency-comb ranging through dispersive air"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string kind_name = "custom";
    std::vector<std::string> axis_texts;
    int threads = 0;

    CLI::App* cmd_index = app.add_subcommand(
        "index", "refractive index, group/GVD combinations and path coefficients");
    add_common(cmd_index, opt);

    CLI::App* cmd_bound = app.add_subcommand(
        "bound", "single-point Cramér-Rao bound record");
    add_common(cmd_bound, opt);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "grid sweep over 1-2 axes");
    add_common(cmd_sweep, opt);
    cmd_sweep->add_option("--kind", kind_name, "shape|skew|loss|custom (presets pick axes and family)")
        ->check(CLI::IsMember({"shape", "skew", "loss", "custom"}));
    cmd_sweep->add_option("--axis", axis_texts, "axis spec key=min:max:count[:log]")->take_all();
    cmd_sweep->add_option("--threads", threads, "worker threads (default: hardware)");

    CLI::App* cmd_validate = app.add_subcommand("validate", "run the built-in oracle suite");
    add_common(cmd_validate, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_validate->parsed()) {
            const auto checks = run_validation_suite();
            write_output(validation_report(checks), opt.out_path);
            return all_passed(checks) ? 0 : 3;
        }
        if (cmd_index->parsed()) {
            const RunConfig c = build_config(opt);
            validate(c);
            write_output(index_report_text(evaluate_index(c)), opt.out_path);
            return 0;
        }
        if (cmd_bound->parsed()) {
            const RunConfig c = build_config(opt);
            emit_records({evaluate_bound(c)}, c, opt.out_path);
            return 0;
        }
        // sweep
        const SweepKind kind = parse_kind(kind_name);
        const RunConfig base = build_config(opt, preset_shape(kind));
        validate(base);
        SweepSpec spec = preset_sweep(kind);
        if (!axis_texts.empty()) {
            spec.axes.clear();
            for (const auto& text : axis_texts) spec.axes.push_back(parse_axis(text));
        }
        if (spec.axes.empty())
            throw ConfigError("custom sweeps need at least one --axis key=min:max:count[:log]");
        emit_records(run_sweep(base, spec, threads), base, opt.out_path);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical rejection: " << e.what() << '\n';
        return 2;
    }
}
