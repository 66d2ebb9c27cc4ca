// hubs: replay update streams through the APSP pipelines and check them
// against brute-force oracles.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hubs/harness.hpp"

namespace {

struct Options {
  std::string algo = "exact-decr";
  std::string check;
  std::string csv;
  std::string out;
  bool serial = false;
};

void add_common(CLI::App* app, hubs::RunConfig& cfg, Options& opt) {
  app->add_option("--algo", opt.algo,
                  "dense-incr | sparse-incr | exact-decr | approx-decr | lv-decr");
  app->add_option("--n", cfg.n, "vertices")->check(CLI::PositiveNumber);
  app->add_option("--m", cfg.m, "arcs inserted or initially present");
  app->add_option("--W", cfg.W, "max weight")->check(CLI::PositiveNumber);
  app->add_option("--seed", cfg.seed, "generator seed (HUBS_SEED overrides)");
}

void apply_env_seed(hubs::RunConfig& cfg) {
  if (const char* s = std::getenv("HUBS_SEED")) {
    try {
      cfg.seed = std::stoull(s);
    } catch (const std::exception&) {
      throw hubs::Error(hubs::ErrorCode::kConfigError, "bad HUBS_SEED");
    }
  }
}

int run(const hubs::RunConfig& base, const Options& opt) {
  hubs::RunConfig cfg = base;
  cfg.algo = hubs::parse_algo(opt.algo);
  if (!opt.check.empty()) cfg.check = hubs::parse_cadence(opt.check);
  if (opt.serial) cfg.exec = hubs::Exec::kSerial;
  apply_env_seed(cfg);

  const hubs::UpdateStream stream = hubs::load_stream(cfg);
  cfg.n = stream.n;
  std::cout << "# " << hubs::describe(cfg) << '\n';
  const hubs::ReplayResult result = hubs::replay_verify(cfg, stream);
  for (const hubs::OracleReport& r : result.failures) {
    std::cerr << hubs::format_report(cfg, r) << '\n';
  }
  if (!opt.csv.empty()) {
    if (opt.csv == "-") {
      hubs::write_csv(std::cout, cfg, stream, result);
    } else {
      std::ofstream out(opt.csv);
      if (!out) throw hubs::Error(hubs::ErrorCode::kConfigError, "cannot write " + opt.csv);
      hubs::write_csv(out, cfg, stream, result);
    }
  }
  double worst = 1.0;
  for (const hubs::CheckRow& row : result.rows) worst = std::max(worst, row.max_ratio);
  std::cout << "ops=" << result.ops << " checks=" << result.rows.size()
            << " failures=" << result.total_failures << " max_ratio=" << worst
            << " work=" << result.work << '\n';
  return result.ok() ? 0 : 1;
}

int gen(const hubs::RunConfig& base, const Options& opt) {
  hubs::RunConfig cfg = base;
  cfg.algo = hubs::parse_algo(opt.algo);
  apply_env_seed(cfg);
  const hubs::UpdateStream s = hubs::gen_stream(cfg);
  if (opt.out.empty() || opt.out == "-") {
    hubs::write_stream(std::cout, s);
  } else {
    std::ofstream out(opt.out);
    if (!out) throw hubs::Error(hubs::ErrorCode::kConfigError, "cannot write " + opt.out);
    hubs::write_stream(out, s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partially dynamic all-pairs shortest paths with hub sets"};
  app.require_subcommand(1);
  hubs::RunConfig cfg;
  Options opt;

  auto* run_cmd = app.add_subcommand("run", "replay a stream and verify every check");
  add_common(run_cmd, cfg, opt);
  run_cmd->add_option("--eps", cfg.eps, "approximation parameter");
  run_cmd->add_option("--d", cfg.d, "sparse hop parameter (even; 0 = default)");
  run_cmd->add_option("--z", cfg.z, "hub level depth constant");
  run_cmd->add_option("--c", cfg.c, "sample sparse hubs with this constant (0 = greedy)");
  run_cmd->add_option("--stream", cfg.stream_path, "stream file instead of generating");
  run_cmd->add_option("--check", opt.check, "each | k:<int> | end");
  run_cmd->add_option("--csv", opt.csv, "CSV report path, - for stdout");
  run_cmd->add_flag("--stable", cfg.stable, "write 0 in the timing column");
  run_cmd->add_flag("--serial", opt.serial, "disable OpenMP in kernels and oracles");

  auto* gen_cmd = app.add_subcommand("gen", "write a generated stream");
  add_common(gen_cmd, cfg, opt);
  gen_cmd->add_option("--out", opt.out, "output path, - for stdout");

  CLI11_PARSE(app, argc, argv);
  try {
    return run_cmd->parsed() ? run(cfg, opt) : gen(cfg, opt);
  } catch (const hubs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
