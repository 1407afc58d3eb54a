#include <ostream>

#include "CLI11.hpp"
#include "scalardyn/errors.hpp"
#include "scalardyn_cli/commands.hpp"

namespace scalardyn::cli {

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"scalardyn: particle dynamics and Klein-Gordon checks in scalar backgrounds"};
  app.require_subcommand(1);

  std::string config_path, preset;
  std::vector<std::string> sets;
  GlobalOptions opts;
  std::optional<double> tol_abs, tol_rel;

  auto add_globals = [&](CLI::App* a) {
    a->add_option("--config", config_path, "INI configuration file");
    a->add_option("--preset", preset, "built-in configuration")
        ->check(CLI::IsMember(preset_names()));
    a->add_option("--out-dir", opts.out_dir, "output directory");
    a->add_option("--format", opts.format, "trajectory format")->check(CLI::IsMember({"csv", "json"}));
    a->add_option("--tol-abs", tol_abs, "absolute integrator tolerance");
    a->add_option("--tol-rel", tol_rel, "relative integrator tolerance");
    a->add_option("--seed", opts.seed, "seed for sampled states and points");
    a->add_option("--threads", opts.threads, "worker threads for sweeps (0: all cores)");
    a->add_option("--set", sets, "override, section.key=value (repeatable)");
  };

  auto* sim = app.add_subcommand("simulate", "integrate orbits and audit conserved quantities");
  auto* cert = app.add_subcommand("certify", "independence rank, involution table and classification");
  auto* kg = app.add_subcommand("kg", "Klein-Gordon residual and eigenvector convergence tables");
  auto* orb = app.add_subcommand("orbit", "evaluate closed-form orbits");
  for (auto* a : {sim, cert, kg, orb}) add_globals(a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    Config cfg;
    if (!preset.empty()) cfg.load_ini_text(preset_text(preset));
    if (!config_path.empty()) cfg.load_ini_file(config_path);
    for (const auto& s : sets) cfg.apply_override(s);
    if (tol_abs) cfg.set("integrator.tol_abs", std::to_string(*tol_abs));
    if (tol_rel) cfg.set("integrator.tol_rel", std::to_string(*tol_rel));
    if (cfg.entries().empty()) throw ConfigError("no configuration: pass --preset or --config");

    if (sim->parsed()) return cmd_simulate(cfg, opts, out);
    if (cert->parsed()) return cmd_certify(cfg, opts, out);
    if (kg->parsed()) return cmd_kg(cfg, opts, out);
    return cmd_orbit(cfg, opts, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntimeSingularity;
  }
}

}  // namespace scalardyn::cli
