#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scalardyn/backgrounds.hpp"
#include "scalardyn/conformal.hpp"
#include "scalardyn/dynamics.hpp"
#include "scalardyn/kgverify.hpp"
#include "scalardyn/phase_space.hpp"
#include "scalardyn_cli/config.hpp"

namespace scalardyn::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kRuntimeSingularity = 3 };

struct GlobalOptions {
  std::string out_dir = "out";
  std::string format = "csv";  // csv | json
  std::uint64_t seed = 12345;
  unsigned threads = 0;        // 0: hardware concurrency
};

// Builders shared by the commands (ConfigError on invalid input).
ScalarBackground build_background(const Config& cfg);
Form build_form(const Config& cfg);
PhaseSpaceState build_initial(const Config& cfg, const ScalarBackground& bg);
EvolveOptions build_options(const Config& cfg, const PhaseSpaceState& s0, const ScalarBackground& bg);
std::vector<ConservedQuantity> build_quantities(const std::vector<std::string>& names, Form form,
                                                const ScalarBackground& bg);
/// "var >= value" or "var <= value", var in t, x, y, z, xplus, xminus.
StopEvent parse_stop(const std::string& text);

struct KgSetup {
  Wavefunction phi;
  ScalarBackground bg;
  std::vector<EigenCondition> conditions;
};
KgSetup build_kg(const Config& cfg);

/// One config per sweep value (the config itself when no sweep is set),
/// with labels.
std::vector<std::pair<std::string, Config>> expand_sweep(const Config& cfg);

int cmd_simulate(const Config& cfg, const GlobalOptions& opts, std::ostream& log);
int cmd_certify(const Config& cfg, const GlobalOptions& opts, std::ostream& log);
int cmd_kg(const Config& cfg, const GlobalOptions& opts, std::ostream& log);
int cmd_orbit(const Config& cfg, const GlobalOptions& opts, std::ostream& log);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace scalardyn::cli
