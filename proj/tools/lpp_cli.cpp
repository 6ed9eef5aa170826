// lpp: command-line front end for the LPP experiments.
//
//   lpp tail --geometry p2p --direction upper --N 1000 --t 1 --n-samples 100000 --seed 7
//   lpp extrema --config extrema.json --threads 4 --out results/
//   lpp oracle-check --max-steps 12 --cases 200 --seed 1
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid configuration.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpp/config.hpp"
#include "lpp/run.hpp"
#include "lpp/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

// Options that were actually given on the command line, keyed like the
// JSON config.
class FlagSet {
 public:
  template <class T>
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto slot = std::make_shared<std::optional<T>>();
    app->add_option(flag, *slot, help);
    collect_.push_back([slot, key](lpp::Json& j) {
      if (*slot) j[key] = **slot;
    });
  }

  lpp::Json json() const {
    lpp::Json j = lpp::Json::object();
    for (const auto& c : collect_) c(j);
    return j;
  }

 private:
  std::vector<std::function<void(lpp::Json&)>> collect_;
};

struct Subcommand {
  CLI::App* app = nullptr;
  FlagSet flags;
  std::string config_path;
  std::string kind;
};

void add_common(Subcommand& sc) {
  auto* app = sc.app;
  app->add_option("--config", sc.config_path, "JSON config file (flags override its values)");
  sc.flags.add<std::uint64_t>(app, "--seed", "seed", "master seed (required)");
  sc.flags.add<std::int64_t>(app, "--N", "N", "scale parameter");
  sc.flags.add<std::int64_t>(app, "--n-samples", "n_samples", "independent replicas");
  sc.flags.add<int>(app, "--threads", "threads", "worker threads (does not affect results)");
  sc.flags.add<std::string>(app, "--out", "output", "output directory");
  sc.flags.add<double>(app, "--trunc-c", "trunc_c", "line-source truncation constant");
  sc.flags.add<std::int64_t>(app, "--checkpoint-stride", "checkpoint_stride", "geodesic checkpoint stride");
}

void add_kind_flags(Subcommand& sc) {
  auto* app = sc.app;
  auto& f = sc.flags;
  const auto& k = sc.kind;
  if (k == "tail" || k == "corridor" || k == "profile" || k == "geodesic") {
    f.add<std::string>(app, "--geometry", "geometry", "p2p or p2l");
  }
  if (k == "tail" || k == "corridor" || k == "geodesic") f.add<double>(app, "--s", "s", "scaled target offset");
  if (k == "tail") f.add<std::string>(app, "--direction", "direction", "upper or lower");
  if (k == "tail" || k == "corridor") f.add<double>(app, "--t", "t", "tail level");
  if (k == "tail" || k == "extrema") f.add<std::vector<double>>(app, "--t-list", "t_list", "list of t values");
  if (k == "extrema") f.add<std::string>(app, "--process", "process", "airy1 or airy2");
  if (k == "stationarity") f.add<std::vector<double>>(app, "--s-list", "s_list", "scaled positions");
  if (k == "association") {
    f.add<double>(app, "--s1", "s1", "first position");
    f.add<double>(app, "--s2", "s2", "second position");
  }
  if (k == "profile") {
    f.add<double>(app, "--s-lo", "s_lo", "window start");
    f.add<double>(app, "--s-hi", "s_hi", "window end");
  }
  if (k == "modulus") {
    f.add<double>(app, "--s-window", "s_window", "half width of the scaled window");
    f.add<std::vector<double>>(app, "--delta-list", "delta_list", "increments");
  }
  if (k == "corridor") {
    f.add<double>(app, "--corridor-c", "corridor_c", "corridor width constant");
    f.add<double>(app, "--kappa", "kappa", "exit-check start fraction");
  }
}

int run_experiment_command(const Subcommand& sc, bool dry_run) {
  lpp::Json file = lpp::Json::object();
  if (!sc.config_path.empty()) file = lpp::read_json_file(sc.config_path);
  if (file.is_object() && file.contains("experiment") && file["experiment"] != sc.kind) {
    throw lpp::ConfigError("experiment", "config file is for '" + file["experiment"].dump() + "', not '" + sc.kind + "'");
  }
  auto flags = sc.flags.json();
  flags["experiment"] = sc.kind;
  const auto cfg = lpp::resolve_config(flags, file);
  if (dry_run) {
    std::cout << lpp::config_to_json(cfg).dump(2) << '\n';
    return kExitOk;
  }
  const auto result = lpp::run_experiment(cfg);
  const auto files = lpp::write_result(result, cfg.output, std::string(lpp::to_string(cfg.experiment)));
  std::cout << result.statistics().dump(2) << '\n';
  std::cerr << "wrote " << files.json.string() << " and " << files.csv.string() << '\n';
  return kExitOk;
}

int run_oracle_check(std::int64_t max_steps, std::int64_t cases, std::optional<std::uint64_t> seed, bool all_shapes,
                     bool dry_run) {
  if (!seed) throw lpp::ConfigError("seed", "required key missing");
  if (max_steps < 0 || max_steps > lpp::oracle::kMaxSteps) {
    throw lpp::ConfigError("max_steps", "must be in [0, " + std::to_string(lpp::oracle::kMaxSteps) + "]");
  }
  if (cases < 1) throw lpp::ConfigError("cases", "must be >= 1");
  if (dry_run) {
    std::cout << lpp::Json{{"max_steps", max_steps}, {"cases", cases}, {"seed", *seed}, {"all_shapes", all_shapes}}.dump(2)
              << '\n';
    return kExitOk;
  }
  const auto report = all_shapes ? lpp::oracle_check_all_shapes(max_steps, cases, *seed)
                                 : lpp::oracle_check(max_steps, cases, *seed);
  std::cout << "cases " << report.cases << ", comparisons " << report.comparisons << ", mismatches "
            << report.mismatches << '\n';
  for (const auto& f : report.failures) std::cout << "  mismatch: " << f << '\n';
  return report.ok() ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential last passage percolation experiments"};
  app.require_subcommand(1);
  bool dry_run = false;
  app.add_flag("--dry-run", dry_run, "validate and print the resolved config, then exit");

  std::vector<std::unique_ptr<Subcommand>> commands;
  for (const char* kind : {"profile", "geodesic", "tail", "extrema", "stationarity", "association", "modulus", "corridor"}) {
    auto sc = std::make_unique<Subcommand>();
    sc->kind = kind;
    sc->app = app.add_subcommand(kind, std::string("run the ") + kind + " experiment");
    sc->app->add_flag("--dry-run", dry_run, "validate and print the resolved config, then exit");
    add_common(*sc);
    add_kind_flags(*sc);
    commands.push_back(std::move(sc));
  }

  std::int64_t max_steps = 12;
  std::int64_t cases = 200;
  std::optional<std::uint64_t> oracle_seed;
  bool all_shapes = false;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare the DP engines with brute-force enumeration");
  oracle_cmd->add_option("--max-steps", max_steps, "largest m + n enumerated")->capture_default_str();
  oracle_cmd->add_option("--cases", cases, "random cases (or fields per shape with --all-shapes)")->capture_default_str();
  oracle_cmd->add_option("--seed", oracle_seed, "seed (required)");
  oracle_cmd->add_flag("--all-shapes", all_shapes, "check every shape with m + n <= max-steps");
  oracle_cmd->add_flag("--dry-run", dry_run, "validate and print the resolved options, then exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (oracle_cmd->parsed()) return run_oracle_check(max_steps, cases, oracle_seed, all_shapes, dry_run);
    for (const auto& sc : commands) {
      if (sc->app->parsed()) return run_experiment_command(*sc, dry_run);
    }
  } catch (const lpp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
