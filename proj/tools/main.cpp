#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "isotherm/errors.hpp"

#ifndef ISOTHERM_VERSION
#define ISOTHERM_VERSION "0.0.0"
#endif

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

void print_summary(const cli::Record& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": measured " << cli::num(r.measured) << " (tolerance "
            << cli::num(r.tolerance) << ")";
  if (!r.detail.empty()) std::cout << " -- " << r.detail;
  std::cout << '\n';
}

cli::json record_json(const cli::Record& r) {
  return {{"name", r.name}, {"expected", r.expected}, {"measured", r.measured},
          {"tolerance", r.tolerance}, {"pass", r.pass}, {"detail", r.detail}};
}

cli::json load_config(const std::string& path) {
  if (path.empty()) return cli::json::object();
  std::ifstream f(path);
  if (!f) throw cli::ConfigError("cannot open config file " + path);
  cli::json cfg;
  try {
    cfg = cli::json::parse(f);
  } catch (const cli::json::parse_error& e) {
    throw cli::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw cli::ConfigError("config root must be an object");
  return cfg;
}

int run(const cli::Command& cmd, const std::string& config_path, std::optional<std::uint64_t> seed_flag, int jobs,
        const std::string& out_dir, double tolerance_scale) {
  cli::Context ctx;
  cli::json resolved = cli::json::object();
  const std::string stage_config = "config";
  try {
    if (!(tolerance_scale > 0.0)) throw cli::ConfigError("--tolerance-scale must be positive");
    if (jobs < 0) throw cli::ConfigError("--jobs must be non-negative");
    const auto cfg = load_config(config_path);
    auto keys = cmd.keys;
    keys.insert({"experiment", "seed"});
    cli::Section root(cfg, stage_config, keys, &resolved);
    if (root.text("experiment", cmd.name) != cmd.name)
      throw cli::ConfigError("config.experiment does not match subcommand " + cmd.name);
    ctx.seed = root.u64("seed", kDefaultSeed);
    if (seed_flag) {
      ctx.seed = *seed_flag;
      resolved["seed"] = ctx.seed;
    }
    ctx.jobs = jobs;
    ctx.tolerance_scale = tolerance_scale;
    ctx.out = out_dir;
    std::filesystem::create_directories(ctx.out);
    cmd.run(ctx, root);
  } catch (const cli::ConfigError& e) {
    std::cerr << "config-invalid: " << e.what() << '\n';
    return 2;
  } catch (const cli::json::exception& e) {
    std::cerr << "config-invalid: " << e.what() << '\n';
    return 2;
  } catch (const isotherm::Error& e) {
    const auto code = e.code();
    const bool config = code == isotherm::ErrorCode::config_invalid || code == isotherm::ErrorCode::invalid_argument;
    std::cerr << (config ? "config-invalid: " : "numeric-failure: ") << e.what() << '\n';
    return config ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric-failure: " << e.what() << '\n';
    return 1;
  }

  bool ok = true;
  cli::json records = cli::json::array();
  for (const auto& r : ctx.records) {
    print_summary(r);
    records.push_back(record_json(r));
    ok = ok && r.pass;
  }
  ctx.write("report.json", records.dump(2) + "\n");
  cli::json manifest{{"tool", "isotherm"},
                     {"version", ISOTHERM_VERSION},
                     {"command", cmd.name},
                     {"config", resolved},
                     {"seed", ctx.seed},
                     {"jobs", ctx.jobs},
                     {"tolerance_scale", ctx.tolerance_scale},
                     {"artifacts", ctx.artifacts},
                     {"status", ok ? "pass" : "fail"}};
  std::ofstream(ctx.out / "manifest.json") << manifest.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isotherm: two-phase heat conduction experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ISOTHERM_VERSION);

  std::string config_path, out_dir = "isotherm-out";
  std::uint64_t seed = kDefaultSeed;
  int jobs = 0;
  double tolerance_scale = 1.0;
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--jobs", jobs, "worker threads, 0 = all cores");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--tolerance-scale", tolerance_scale, "multiplier for every pass/fail tolerance");

  const cli::Command* chosen = nullptr;
  for (const auto& cmd : cli::commands()) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->fallthrough();
    sub->callback([&chosen, &cmd] { chosen = &cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::optional<std::uint64_t> seed_flag;
  if (seed_opt->count() > 0) seed_flag = seed;
  return run(*chosen, config_path, seed_flag, jobs, out_dir, tolerance_scale);
}
