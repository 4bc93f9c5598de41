#include <fstream>
#include <functional>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"
#include "diffrakt/error.hpp"

namespace {

using diffrakt::cli::RunConfig;

void report_error(const char* kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << std::endl;
}

// Flags given on the command line override the values of --config.
struct Binding {
  CLI::Option* option;
  std::function<void(RunConfig&)> apply;
};

template <class T>
void bind_option(CLI::App* app, std::vector<Binding>& out, RunConfig& flags, const std::string& name,
                 T RunConfig::*field, const std::string& help) {
  CLI::Option* opt = app->add_option(name, flags.*field, help);
  out.push_back({opt, [&flags, field](RunConfig& c) { c.*field = flags.*field; }});
}

void add_run_options(CLI::App* app, std::vector<Binding>& b, RunConfig& f, std::string& config_path) {
  bind_option(app, b, f, "--process", &RunConfig::process,
              "sine|ball|gauss|exp|cpA|cpB|ginibre|perm-<kernel>|cox|gaf|poisson");
  bind_option(app, b, f, "--p", &RunConfig::p, "Thinning parameter");
  bind_option(app, b, f, "--alpha", &RunConfig::alpha, "Exponential kernel parameter");
  bind_option(app, b, f, "--d", &RunConfig::d, "Dimension (ball, gauss, poisson)");
  bind_option(app, b, f, "--N", &RunConfig::N, "Ginibre matrix size / GAF truncation degree (0 = auto)");
  bind_option(app, b, f, "--window", &RunConfig::window, "a:b | ax:bx x ay:by | disk:r[@cx,cy]");
  bind_option(app, b, f, "--seed", &RunConfig::seed, "Base seed");
  bind_option(app, b, f, "--realizations", &RunConfig::realizations, "Number of realizations");
  bind_option(app, b, f, "--bins", &RunConfig::bins, "Pair-correlation bins");
  bind_option(app, b, f, "--rmax", &RunConfig::rmax, "Pair-correlation range (0 = auto)");
  bind_option(app, b, f, "--tgrid", &RunConfig::tgrid, "Curve grid start:stop:count");
  bind_option(app, b, f, "--out", &RunConfig::out, "Output directory");
  bind_option(app, b, f, "--grid", &RunConfig::grid, "Sampler grid size per axis (0 = auto)");
  bind_option(app, b, f, "--engine", &RunConfig::engine, "Ginibre engine: disk|matrix");
  bind_option(app, b, f, "--mutate", &RunConfig::mutate, "Verify: relative perturbation of gaf_h");
  app->add_option("--config", config_path, "JSON run configuration");
}

RunConfig resolve(const std::vector<Binding>& bindings, const std::string& config_path) {
  RunConfig c;
  if (!config_path.empty()) {
    std::ifstream is(config_path);
    if (!is) throw diffrakt::InvalidArgument("cannot read config '" + config_path + "'");
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw diffrakt::InvalidArgument("config '" + config_path + "' is not valid JSON: " + e.what());
    }
    c = diffrakt::cli::from_json(j);
  }
  for (const Binding& b : bindings)
    if (b.option->count() > 0) b.apply(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace diffrakt::cli;
  CLI::App app{"diffrakt: diffraction of determinantal, permanental and related point processes"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  struct Command {
    CLI::App* app;
    std::vector<Binding> bindings;
  };
  std::vector<Command> commands;
  for (const char* name : {"analytic", "sample", "estimate", "verify"}) {
    const char* help = name[0] == 'a'   ? "Write analytic autocorrelation and diffraction curves"
                       : name[0] == 's' ? "Write one point CSV per realization"
                       : name[0] == 'e' ? "Estimate pair correlation and scattering intensity"
                                        : "Run the invariant suite";
    CLI::App* sub = app.add_subcommand(name, help);
    Command cmd{sub, {}};
    add_run_options(sub, cmd.bindings, flags, config_path);
    commands.push_back(std::move(cmd));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("config", e.what());
    return kConfigError;
  }

  try {
    for (const Command& cmd : commands) {
      if (!cmd.app->parsed()) continue;
      const RunConfig config = resolve(cmd.bindings, config_path);
      const std::string name = cmd.app->get_name();
      if (name == "analytic") return cmd_analytic(config);
      if (name == "sample") return cmd_sample(config);
      if (name == "estimate") return cmd_estimate(config);
      return cmd_verify(config, std::cout);
    }
  } catch (const diffrakt::InvalidArgument& e) {
    report_error("config", e.what());
    return kConfigError;
  } catch (const diffrakt::NumericFailure& e) {
    report_error("numeric", e.what());
    return kNumericError;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kNumericError;
  }
  return kConfigError;
}
