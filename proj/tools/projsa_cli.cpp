//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

// Command-line front end. Talks to the library only through projsa.h.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "projsa/projsa.h"

int main(int argc, char **argv) {
  CLI::App app{"Projected stochastic approximation on boxes"};
  app.set_version_flag("--version", std::string(psa_version()));
  app.require_subcommand(1);

  std::string config, trace, out = ".";
  unsigned jobs = 1;
  std::uint64_t seed_offset = 0;
  std::int64_t instances = 10000;
  bool corrupt = false;

  auto common = [&](CLI::App *sub, bool needs_config) {
    auto *c = sub->add_option("--config", config, "Experiment config (JSON)");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory")->capture_default_str();
    sub->add_option("--jobs", jobs, "Concurrent replicas")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed-offset", seed_offset, "Added to every replica seed")
        ->capture_default_str();
  };

  auto *run = app.add_subcommand("run", "Run all replicas, write traces and a summary");
  common(run, true);

  auto *diagnose = app.add_subcommand("diagnose", "Diagnostics of a recorded trace");
  common(diagnose, true);
  diagnose->add_option("--trace", trace, "Trace CSV")->required();

  auto *selftest = app.add_subcommand("prox-selftest", "Prox operators against a grid oracle");
  common(selftest, false);
  selftest->add_option("--instances", instances, "Random instances per variant")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  selftest->add_flag("--corrupt-lambda-sign", corrupt,
                     "Test hook: flip the sign of lambda seen by the prox");

  auto *ode = app.add_subcommand("ode-compare", "SA paths against projected Euler");
  common(ode, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  psa_command_options opts;
  psa_command_options_init(&opts);
  opts.config_path = config.empty() ? nullptr : config.c_str();
  opts.trace_path = trace.empty() ? nullptr : trace.c_str();
  opts.out_dir = out.c_str();
  opts.jobs = jobs;
  opts.seed_offset = seed_offset;
  opts.instances = instances;
  opts.corrupt_lambda_sign = corrupt ? 1 : 0;

  if (*run) return psa_cmd_run(&opts);
  if (*diagnose) return psa_cmd_diagnose(&opts);
  if (*selftest) return psa_cmd_prox_selftest(&opts);
  return psa_cmd_ode_compare(&opts);
}
