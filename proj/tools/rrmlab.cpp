// Command line front end.  Parses the subcommand and shared options, then
// hands off to run_command; exit codes: 0 pass, 1 failed check, 2 bad input.

#include "CLI11.hpp"

#include <cstdio>
#include <string>

#include "rrmlab/errors.hpp"
#include "rrmlab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for radial masses of warped-product comparisons"};
  app.require_subcommand(1);

  rrm::RunOptions opt;
  std::string source = "radial";

  const char* names[] = {"eval-mass",  "verify-riccati", "check-theorem",  "models",
                         "asymptotics", "compare-hawking", "compare-ch",    "selftest"};
  const char* briefs[] = {
      "relative radial mass density and its section integral",
      "difference Riccati residual at two resolutions",
      "boundary mass inequality and equality-case verdicts",
      "the four model backgrounds against a shared family",
      "limit estimators and rate extrapolation for M(r)",
      "section integral of the mass versus the Hawking mass",
      "two-dimensional mass flux versus the boundary integrand",
      "built-in acceptance suite"};
  for (int i = 0; i < 8; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], briefs[i]);
    CLI::Option* c = sub->add_option("--config", opt.config_path, "scene description file");
    if (std::string(names[i]) != "selftest") c->required();
    sub->add_option("--out", opt.out_dir, "output directory for CSV artifacts");
    sub->add_option("--refine", opt.refine, "grid refinement factor for convergence checks")
        ->check(CLI::Range(2, 16));
    sub->add_option("--rrr-source", source, "radial curvature source: radial or oracle")
        ->check(CLI::IsMember({"radial", "oracle"}));
    sub->add_option("--tol", opt.tol, "override the command's pass tolerance")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  opt.cmd = app.get_subcommands().front()->get_name();
  opt.rrr_source = source == "oracle" ? rrm::RrrSource::oracle : rrm::RrrSource::radial;

  try {
    return rrm::run_command(opt);
  } catch (const rrm::ConfigError& e) {
    if (e.line > 0)
      std::fprintf(stderr, "config error (line %d): %s\n", e.line, e.what());
    else
      std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const rrm::ExprError& e) {
    std::fprintf(stderr, "expression error: %s\n", e.what());
    return 2;
  } catch (const rrm::RunError& e) {
    std::fprintf(stderr, "run error: %s\n", e.what());
    return 1;
  }
}
