#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace gfix::cli;

  CLI::App app{"gfix: G-metric spaces, odd-power contractive conditions and fixed-point iteration"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::size_t samples = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config, "problem config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "RNG seed for every sampled check")->capture_default_str();
    sub->add_option("--out", opts.out, "directory for reports and traces")->capture_default_str();
    sub->add_option("--samples", samples, "sample count (overrides the config)")->check(CLI::PositiveNumber);
    sub->add_flag("--exhaustive", opts.exhaustive, "enumerate every tuple of a finite space");
    return sub;
  };
  auto* axioms = common(app.add_subcommand("check-axioms", "check axioms G1-G5 and symmetry"));
  auto* verify = common(app.add_subcommand("verify", "estimate the contraction constant of a condition"));
  auto* solve = common(app.add_subcommand("solve", "iterate to a fixed point and export the trace"));
  auto* series = common(app.add_subcommand("series", "certify an alpha-series, lambda-sequence or limsup bound"));
  auto* oracle = common(app.add_subcommand("oracle", "cross-check solver and verifier by brute force"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (samples > 0) opts.samples = samples;

  if (axioms->parsed()) return cmd_check_axioms(opts, std::cout, std::cerr);
  if (verify->parsed()) return cmd_verify(opts, std::cout, std::cerr);
  if (solve->parsed()) return cmd_solve(opts, std::cout, std::cerr);
  if (series->parsed()) return cmd_series(opts, std::cout, std::cerr);
  if (oracle->parsed()) return cmd_oracle(opts, std::cout, std::cerr);
  return kExitUsage;
}
