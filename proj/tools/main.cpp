#include "CLI11.hpp"

#include "hydrod/errors.hpp"
#include "hydrod/report.hpp"

#include <iostream>

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hydrogen bound states in D = 3 - 2 eps dimensions"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with option defaults");
  app.allow_config_extras(false);

  hydrod::RunConfig config;
  double mu = 0.0;
  std::string format = "text";

  app.add_option("--n", config.n, "principal quantum number")->capture_default_str();
  app.add_option("--l", config.ell, "orbital angular momentum")->capture_default_str();
  app.add_option("--epsilon", config.epsilon, "D = 3 - 2 epsilon")->capture_default_str();
  app.add_option("--mu", mu, "renormalization scale (default 2 gamma, so L = 0)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  app.add_option("--tol", config.tol, "bisection tolerance on nbar (>= 1e-12)")
      ->capture_default_str();
  app.add_option("--rho-max", config.rhoMax, "outer radius (0: 50 + 10 n)")
      ->capture_default_str();
  app.add_option("--max-order", config.maxOrder, "series order cap")->capture_default_str();
  app.add_option("--eps-grid", config.epsGrid, "extrapolation grid")
      ->delimiter(',')
      ->capture_default_str();

  struct Sub {
    const char *name;
    const char *help;
  };
  const Sub subs[] = {
      {"solve", "eigenvalue nbar and normalization integral for one state"},
      {"table1", "low-lying states at fixed epsilon"},
      {"table2", "ground-state energy for several D"},
      {"kappa", "second-order matrix element kappa"},
      {"vp2", "<(V')^2> for an S state, numeric and closed form"},
      {"extrapolate", "xi2, xi3 and I2 from an eps grid"},
  };
  for (const auto &s : subs)
    app.add_subcommand(s.name, s.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    config.command = hydrod::parseCommand(app.get_subcommands().front()->get_name());
    config.format = hydrod::parseFormat(format);
    if (app.count("--mu"))
      config.mu = mu;
    hydrod::validate(config);
  } catch (const hydrod::Error &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const hydrod::Report report = hydrod::run(config);
    hydrod::write(std::cout, report, config.format);
    return report.hasFailures() ? kExitFailure : 0;
  } catch (const hydrod::InvalidArgument &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hydrod::Error &e) {
    std::cerr << e.name() << ": " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
