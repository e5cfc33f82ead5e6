#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qcrb/config.hpp"
#include "qcrb/constants.hpp"
#include "qcrb/pipeline.hpp"
#include "qcrb/report.hpp"
#include "qcrb/sweep.hpp"
#include "qcrb/validate.hpp"

namespace {

using namespace qcrb::cli;

// Frozen end-to-end references for the default configuration
// (scripts/reference_pipeline.py).
constexpr double kRefSigmaLFull = 1.2526259711795757303e-10;
constexpr double kRefSigmaLKnown = 6.2141785161671439211e-16;
constexpr double kRefSigmaTg = 2.0837187026088868216e-23;

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QCRB_BIN) + " " + args;
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("config keys: fixed order, typed access, round trips") {
  const auto& keys = config_keys();
  REQUIRE(keys.size() == 16);
  CHECK(keys.front() == "lambda0_m");
  CHECK(keys[9] == "shape");
  CHECK(keys.back() == "output");

  RunConfig c;
  CHECK(get_key(c, "lambda0_m") == "7.85000000000e-07");
  CHECK(get_key(c, "shape") == "gaussian");
  CHECK(key_is_numeric("photons"));
  CHECK_FALSE(key_is_numeric("regime"));

  set_key(c, "photons", "2.5e12");
  CHECK(c.photons == 2.5e12);
  set_key(c, "eta", 0.25);
  CHECK(c.eta == 0.25);
  set_key(c, "centering", "mode");
  CHECK(c.centering == "mode");

  CHECK_THROWS_AS(set_key(c, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(set_key(c, "photons", "abc"), ConfigError);
  CHECK_THROWS_AS(set_key(c, "shape", 1.0), ConfigError);
  CHECK_THROWS_AS(get_key(c, "nope"), ConfigError);
}

TEST_CASE("numbers are formatted at 12 significant digits") {
  CHECK(format_number(1.0 / 3.0) == "3.33333333333e-01");
  CHECK(format_number(0.0) == "0.00000000000e+00");
  CHECK(format_number(-1.2526259711795757e-10) == "-1.25262597118e-10");
}

TEST_CASE("config file loading: comments, blanks, later lines win") {
  const auto path = temp_file("qcrb_cfg_ok.txt");
  {
    std::ofstream out(path);
    out << "# comb ranging scenario\n"
        << "\n"
        << "photons = 1e12   # bright pulse train\n"
        << "shape = sech2\n"
        << "eta = 0.8\n"
        << "eta = 0.5\n";
  }
  const RunConfig c = load_config_file(path.string());
  CHECK(c.photons == 1e12);
  CHECK(c.shape == "sech2");
  CHECK(c.eta == 0.5);
  CHECK(c.lambda0_m == 785e-9);  // untouched default
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_config_file("/definitely/not/there.cfg"), ConfigError);

  const auto bad = temp_file("qcrb_cfg_bad.txt");
  {
    std::ofstream out(bad);
    out << "photons = 1e12\nthis line has no equals sign\n";
  }
  CHECK_THROWS_AS(load_config_file(bad.string()), ConfigError);
  std::filesystem::remove(bad);
}

TEST_CASE("override strings") {
  RunConfig c;
  apply_overrides(c, {"eta=0.7", "shape=skew_normal", "shape_a = 2"});
  CHECK(c.eta == 0.7);
  CHECK(c.shape == "skew_normal");
  CHECK(c.shape_a == 2.0);
  CHECK_THROWS_AS(apply_overrides(c, {"eta"}), ConfigError);
}

TEST_CASE("configuration validation") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));

  RunConfig bad = c;
  bad.eta = 1.5;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = c;
  bad.mu2_rel = 0.3;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = c;
  bad.shape = "weird";
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = c;
  bad.lambda0_m = 100e-9;  // outside the index validity window
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = c;
  bad.shape = "symmetric";
  bad.beta = 0.5;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = c;
  bad.regime = "sometimes";
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = c;
  bad.water_partial_pa = bad.pressure_pa + 1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = c;
  bad.photons = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("moments_for honours the configured family") {
  RunConfig c;
  const double omega0 = qcrb::omega_from_wavelength(c.lambda0_m);
  const double mu2 = c.mu2_rel * omega0 * omega0;

  CHECK(rel_err(moments_for(c, omega0).beta, 3.0) < 1e-12);
  CHECK(rel_err(moments_for(c, omega0).mu2, mu2) < 1e-12);

  c.shape = "sech2";
  CHECK(rel_err(moments_for(c, omega0).beta, 4.2) < 1e-12);

  c.shape = "symmetric";
  c.beta = 5.5;
  CHECK(moments_for(c, omega0).beta == 5.5);

  c.shape = "skew_normal";
  c.shape_a = 2.0;
  c.centering = "mean";
  const auto mean_centered = moments_for(c, omega0);
  CHECK(std::abs(mean_centered.mu1) < 1e-9 * std::sqrt(mu2));
  c.centering = "mode";
  const auto mode_centered = moments_for(c, omega0);
  CHECK(mode_centered.mu1 > 1e-3 * std::sqrt(mu2));  // mean sits above the mode
}

TEST_CASE("state statistics for the configured source") {
  RunConfig c;
  c.photons = 1e16;
  const auto shot = state_statistics_for(c);
  CHECK(rel_err(shot.n_mean, 1e16) < 1e-12);
  CHECK(rel_err(shot.n_var, 1e16) < 1e-12);
  CHECK(rel_err(shot.f_q, 4e16) < 1e-12);

  c.noise_db = 10.0;
  const auto noisy = state_statistics_for(c);
  CHECK(rel_err(noisy.n_var / noisy.n_mean, 10.0) < 1e-11);

  c.noise_db = 0.0;
  c.eta = 0.25;
  const auto lossy = state_statistics_for(c);
  CHECK(rel_err(lossy.n_mean, 0.25e16) < 1e-12);
  CHECK(rel_err(lossy.f_q, 1e16) < 1e-12);

  c.eta = 0.0;
  CHECK_THROWS_AS(state_statistics_for(c), NumericalError);

  c.eta = 1.0;
  c.photons = 2.0;
  c.noise_db = -30.0;  // infeasible squeezing target
  CHECK_THROWS_AS(state_statistics_for(c), NumericalError);
}

TEST_CASE("single-point bound evaluation against frozen references") {
  RunConfig c;
  const BoundRecord rec = evaluate_bound(c);
  CHECK(rec.error.empty());
  CHECK(rec.sigma_ratio == 1.0);
  CHECK(rel_err(rec.sigma_L_m, kRefSigmaLFull) < 1e-8);
  CHECK(rel_err(rec.sigma_tg_s, kRefSigmaTg) < 1e-9);
  CHECK(rel_err(rec.n_mean, 1e16) < 1e-12);

  // Quadrupling the photon number halves every bound for coherent light.
  RunConfig c4 = c;
  c4.photons = 4e16;
  const BoundRecord rec4 = evaluate_bound(c4);
  CHECK(rel_err(rec4.sigma_L_m, 0.5 * rec.sigma_L_m) < 1e-9);
  CHECK(rel_err(rec4.sigma_tphi_s, 0.5 * rec.sigma_tphi_s) < 1e-9);

  // Known-nuisance regime only affects the distance column.
  RunConfig ck = c;
  ck.regime = "known_nuisance";
  const BoundRecord reck = evaluate_bound(ck);
  CHECK(rel_err(reck.sigma_L_m, kRefSigmaLKnown) < 1e-12);
  CHECK(reck.sigma_tg_s == rec.sigma_tg_s);

  RunConfig bad = c;
  bad.eta = 2.0;
  CHECK_THROWS_AS(evaluate_bound(bad), ConfigError);
  bad = c;
  bad.eta = 0.0;
  CHECK_THROWS_AS(evaluate_bound(bad), NumericalError);
}

TEST_CASE("index report quantities") {
  RunConfig c;
  const IndexReport rep = evaluate_index(c);
  CHECK(std::abs(rep.x - 0.99958) < 5e-6);
  CHECK(rel_err(rep.n, 1.0002655839373245684) < 1e-12);
  CHECK(rep.group_index > rep.n);
  CHECK(rel_err(rep.k.k6, 6.23580409215e-11) < 1e-9);

  const std::string text = index_report_text(rep);
  CHECK(text.find("x = ") != std::string::npos);
  CHECK(text.find("k0_ns_per_m = ") != std::string::npos);
  CHECK(text.find("k5_ns_per_m = ") != std::string::npos);
  CHECK(text.find("k6_ns_per_m_pa = ") != std::string::npos);
  CHECK(text.find("gvd_index = ") != std::string::npos);
}

TEST_CASE("axis parsing and grid generation") {
  const AxisSpec a = parse_axis("eta=0.1:1:5");
  CHECK(a.key == "eta");
  CHECK(a.min == 0.1);
  CHECK(a.max == 1.0);
  CHECK(a.count == 5);
  CHECK_FALSE(a.log);

  CHECK(parse_axis("mu2_rel=1e-4:0.25:20:log").log);
  CHECK_FALSE(parse_axis("beta=1.5:10:20:lin").log);

  CHECK_THROWS_AS(parse_axis("eta0.1:1:5"), ConfigError);
  CHECK_THROWS_AS(parse_axis("eta=0.1:1"), ConfigError);
  CHECK_THROWS_AS(parse_axis("eta=0.1:1:5:6:7"), ConfigError);
  CHECK_THROWS_AS(parse_axis("eta=0.1:1:5:cubic"), ConfigError);
  CHECK_THROWS_AS(parse_axis("eta=a:1:5"), ConfigError);

  const std::vector<double> lin = axis_values({"eta", 0.0, 1.0, 5, false});
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  CHECK(lin[2] == doctest::Approx(0.5).epsilon(1e-15));

  const std::vector<double> logv = axis_values({"photons", 1e8, 1e12, 5, true});
  CHECK(logv.front() == 1e8);
  CHECK(logv.back() == 1e12);
  CHECK(rel_err(logv[1], 1e9) < 1e-12);
  CHECK(rel_err(logv[3], 1e11) < 1e-12);
}

TEST_CASE("sweep specification validation") {
  SweepSpec spec;
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // no axes

  spec.axes = {{"eta", 0.1, 1.0, 5, false}};
  CHECK_NOTHROW(spec.validate());

  spec.axes.push_back({"photons", 1e8, 1e10, 3, true});
  CHECK_NOTHROW(spec.validate());

  spec.axes.push_back({"beta", 1.5, 3.0, 3, false});
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // 3 axes

  spec.axes = {{"shape", 0.0, 1.0, 5, false}};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // non-numeric key

  spec.axes = {{"delta", -0.9, 0.9, 5, false}};
  CHECK_NOTHROW(spec.validate());  // pseudo-key

  spec.axes = {{"eta", 0.1, 1.0, 1, false}};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // count < 2

  spec.axes = {{"eta", 1.0, 0.1, 5, false}};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // min >= max

  spec.axes = {{"photons", 0.0, 1.0, 5, true}};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // log needs min > 0
}

TEST_CASE("preset sweeps") {
  CHECK(parse_kind("shape") == SweepKind::Shape);
  CHECK(parse_kind("skew") == SweepKind::Skew);
  CHECK(parse_kind("loss") == SweepKind::Loss);
  CHECK(parse_kind("custom") == SweepKind::Custom);
  CHECK_THROWS_AS(parse_kind("none"), ConfigError);
  CHECK(to_string(SweepKind::Skew) == "skew");

  const SweepSpec shape = preset_sweep(SweepKind::Shape);
  REQUIRE(shape.axes.size() == 2);
  CHECK(shape.axes[0].key == "mu2_rel");
  CHECK(shape.axes[0].log);
  CHECK(shape.axes[1].key == "beta");
  CHECK(preset_shape(SweepKind::Shape) == "symmetric");

  const SweepSpec skew = preset_sweep(SweepKind::Skew);
  CHECK(skew.axes[0].key == "noise_db");
  CHECK(skew.axes[1].key == "delta");
  CHECK(preset_shape(SweepKind::Skew) == "skew_normal");

  const SweepSpec loss = preset_sweep(SweepKind::Loss);
  REQUIRE(loss.axes.size() == 1);
  CHECK(loss.axes[0].key == "eta");
  CHECK(preset_shape(SweepKind::Loss).empty());
  CHECK(preset_sweep(SweepKind::Custom).axes.empty());
}

TEST_CASE("sweeps traverse the grid row-major and echo their configs") {
  RunConfig base;
  base.photons = 1e8;  // keep the grid cheap

  SweepSpec spec;
  spec.kind = SweepKind::Custom;
  spec.axes = {{"photons", 1e8, 4e8, 2, false}, {"eta", 0.5, 1.0, 2, false}};
  const auto records = run_sweep(base, spec, 1);
  REQUIRE(records.size() == 4);
  CHECK(records[0].config.photons == 1e8);
  CHECK(records[0].config.eta == 0.5);
  CHECK(records[1].config.photons == 1e8);
  CHECK(records[1].config.eta == 1.0);
  CHECK(records[2].config.photons == 4e8);
  CHECK(records[2].config.eta == 0.5);
  CHECK(records[3].config.eta == 1.0);
  for (const auto& r : records) CHECK(r.error.empty());

  // sigma_L falls with more light and more transmitted light.
  CHECK(records[2].sigma_L_m < records[0].sigma_L_m);
  CHECK(records[1].sigma_L_m < records[0].sigma_L_m);
}

TEST_CASE("sweeps are deterministic across thread counts") {
  RunConfig base;
  base.photons = 1e8;

  SweepSpec spec;
  spec.kind = SweepKind::Custom;
  spec.axes = {{"eta", 0.1, 1.0, 7, false}, {"noise_db", -3.0, 3.0, 3, false}};

  const std::string serial = to_csv(run_sweep(base, spec, 1));
  const std::string parallel = to_csv(run_sweep(base, spec, 4));
  CHECK(serial == parallel);
}

TEST_CASE("rejected grid points stay in the output with their message") {
  RunConfig base;
  base.photons = 1e8;

  SweepSpec spec;
  spec.kind = SweepKind::Custom;
  spec.axes = {{"eta", 0.0, 1.0, 3, false}};
  const auto records = run_sweep(base, spec, 2);
  REQUIRE(records.size() == 3);

  CHECK(records[0].error.find("zero-information") != std::string::npos);
  CHECK(std::isnan(records[0].sigma_L_m));
  CHECK(records[1].error.empty());
  CHECK(records[2].error.empty());
  CHECK(records[2].sigma_L_m < records[1].sigma_L_m);
}

TEST_CASE("skew sweeps report the bound relative to the gaussian reference") {
  RunConfig base;
  base.photons = 1e8;
  base.shape = "skew_normal";

  SweepSpec spec;
  spec.kind = SweepKind::Skew;
  spec.axes = {{"noise_db", 0.0, 3.0, 2, false}, {"delta", -0.5, 0.5, 3, false}};
  const auto records = run_sweep(base, spec, 1);
  REQUIRE(records.size() == 6);

  // delta = 0 is the gaussian itself: ratio pinned to 1.
  CHECK(std::abs(records[1].sigma_ratio - 1.0) < 1e-12);
  CHECK(std::abs(records[4].sigma_ratio - 1.0) < 1e-12);

  // Asymmetric pulses change the bound but stay within a factor of order 1.
  CHECK(records[0].sigma_ratio > 0.0);
  CHECK(records[0].sigma_ratio != 1.0);
  CHECK(std::abs(records[0].sigma_ratio - 1.0) < 0.5);
}

TEST_CASE("CSV schema: header, echo columns, stable formatting") {
  RunConfig c;
  const std::vector<BoundRecord> records = {evaluate_bound(c)};
  const std::string csv = to_csv(records);

  const std::string header =
      "lambda0_m,distance_m,temperature_c,pressure_pa,co2_fraction,water_partial_pa,"
      "photons,noise_db,eta,shape,mu2_rel,beta,shape_a,centering,regime,output,"
      "n_mean,n_var,f_q,sigma_tphi_s,sigma_tg_s,sigma_tgvd_s,sigma_L_m,sigma_ratio,error";
  REQUIRE(csv.find('\n') != std::string::npos);
  CHECK(csv.substr(0, csv.find('\n')) == header);

  // Exactly header + one row, newline-terminated.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(csv.find("gaussian") != std::string::npos);
  CHECK(csv.find(format_number(records[0].sigma_L_m)) != std::string::npos);

  // Identical input produces identical bytes.
  CHECK(to_csv(records) == csv);
}

TEST_CASE("JSON report mirrors the CSV schema with string-typed numbers") {
  RunConfig c;
  const std::vector<BoundRecord> records = {evaluate_bound(c)};
  const auto parsed = nlohmann::json::parse(to_json(records));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);

  const auto& row = parsed[0];
  CHECK(row["shape"] == "gaussian");
  CHECK(row["sigma_L_m"].is_string());
  CHECK(row["sigma_L_m"].get<std::string>() == format_number(records[0].sigma_L_m));
  CHECK(row["error"].get<std::string>().empty());

  // All config and output keys appear.
  for (const auto& key : config_keys()) CHECK(row.contains(key));
  for (const auto& key : output_keys()) CHECK(row.contains(key));
}

TEST_CASE("report writing targets") {
  const auto path = temp_file("qcrb_report_out.csv");
  write_output("hello,world\n", path.string());
  CHECK(slurp(path) == "hello,world\n");
  std::filesystem::remove(path);

  CHECK_THROWS_AS(write_output("x", "/no/such/directory/out.csv"), ConfigError);
}

TEST_CASE("validation suite passes and renders a report") {
  const auto checks = run_validation_suite();
  CHECK(checks.size() >= 8);
  CHECK(all_passed(checks));

  const std::string report = validation_report(checks);
  CHECK(report.find("PASS") != std::string::npos);
  CHECK(report.find("FAIL") == std::string::npos);

  // A failing check renders FAIL and flips the aggregate.
  ValidationCheck fake;
  fake.name = "fake_check";
  fake.tolerance = 1.0;
  fake.measured = 2.0;
  fake.pass = false;
  CHECK_FALSE(all_passed({fake}));
  CHECK(validation_report({fake}).find("FAIL") != std::string::npos);
}

TEST_CASE("command-line interface: exit codes and byte-stable files") {
  // Happy paths.
  CHECK(run_cli("index > /dev/null") == 0);
  CHECK(run_cli("bound --set photons=1e8 > /dev/null") == 0);

  // Config errors exit 1 (unknown key, bad value, unparseable flag).
  CHECK(run_cli("bound --set nope=1 2> /dev/null") == 1);
  CHECK(run_cli("bound --set eta=1.5 2> /dev/null") == 1);
  CHECK(run_cli("definitely-not-a-subcommand 2> /dev/null") == 1);
  CHECK(run_cli("sweep 2> /dev/null") == 1);  // custom sweep without --axis

  // Numerical rejections exit 2.
  CHECK(run_cli("bound --set eta=0 2> /dev/null") == 2);
  CHECK(run_cli("bound --set photons=2 --set noise_db=-30 2> /dev/null") == 2);

  // Sweep output is byte-identical across runs and thread counts.
  const auto a = temp_file("qcrb_sweep_a.csv");
  const auto b = temp_file("qcrb_sweep_b.csv");
  const std::string axis = "--axis eta=0.2:1:6 --set photons=1e8";
  CHECK(run_cli("sweep " + axis + " --threads 1 --out " + a.string()) == 0);
  CHECK(run_cli("sweep " + axis + " --threads 4 --out " + b.string()) == 0);
  const std::string bytes_a = slurp(a);
  CHECK(bytes_a == slurp(b));
  CHECK(!bytes_a.empty());
  CHECK(bytes_a.substr(0, 9) == "lambda0_m");
  std::filesystem::remove(a);
  std::filesystem::remove(b);

  // JSON selection via --output.
  const auto j = temp_file("qcrb_bound.json");
  CHECK(run_cli("bound --set photons=1e8 --output json --out " + j.string()) == 0);
  const auto parsed = nlohmann::json::parse(slurp(j));
  CHECK(parsed.is_array());
  CHECK(parsed[0]["photons"].get<std::string>() == format_number(1e8));
  std::filesystem::remove(j);

  // Config files over the --config flag.
  const auto cfg = temp_file("qcrb_cli_cfg.txt");
  {
    std::ofstream out(cfg);
    out << "photons = 1e8\nshape = sech2\n";
  }
  const auto out_csv = temp_file("qcrb_cli_cfg_out.csv");
  CHECK(run_cli("bound --config " + cfg.string() + " --out " + out_csv.string()) == 0);
  CHECK(slurp(out_csv).find("sech2") != std::string::npos);
  std::filesystem::remove(cfg);
  std::filesystem::remove(out_csv);
}
