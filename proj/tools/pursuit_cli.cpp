// Copyright 2026 The Pursuit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pursuit/cli.hpp"
#include "pursuit/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Many-pursuer simple-motion pursuit under coordinate-wise energy budgets"};
  app.require_subcommand(1);

  std::string run_file;
  pursuit::RunOverrides overrides;
  std::string trace, csv, report;
  auto* run = app.add_subcommand("run", "Simulate one scenario");
  run->add_option("file", run_file, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--dt", overrides.dt, "Override the time step")->check(CLI::PositiveNumber);
  run->add_option("--trace", trace, "Write the step trace as NDJSON");
  run->add_option("--csv", csv, "Write the step trace as CSV");
  run->add_option("--report", report, "Write the capture report as JSON");
  run->add_flag("--exploratory", overrides.exploratory,
                "Run even if the sufficiency condition fails");

  pursuit::VerifyOptions verify_opts;
  std::string policies;
  std::string out_dir;
  auto* verify = app.add_subcommand("verify", "Run the randomized capture battery");
  verify->add_option("--n", verify_opts.n, "Random scenarios")->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "Sampler seed")->capture_default_str();
  verify->add_option("--policies", policies, "Comma-separated evader kinds (default: all)");
  verify->add_option("--out", out_dir, "Directory for failing scenarios");
  verify->add_option("--threads", verify_opts.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  verify->add_flag("!--no-pinned", verify_opts.include_pinned,
                   "Skip the pinned scenarios");

  std::string params_file;
  bool params_exploratory = false;
  auto* params = app.add_subcommand("params", "Print derived parameters");
  params->add_option("file", params_file, "Scenario JSON")->required()->check(CLI::ExistingFile);
  params->add_flag("--exploratory", params_exploratory,
                   "Report parameters even if the sufficiency condition fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pursuit::kExitConfigError;
  }

  try {
    if (*run) {
      if (!trace.empty()) overrides.trace = trace;
      if (!csv.empty()) overrides.csv = csv;
      if (!report.empty()) overrides.report = report;
      return pursuit::cmd_run(run_file, overrides, std::cout, std::cerr);
    }
    if (*verify) {
      if (!policies.empty()) {
        verify_opts.policies.clear();
        std::istringstream list(policies);
        for (std::string name; std::getline(list, name, ',');) {
          verify_opts.policies.push_back(pursuit::policy_from_name(name));
        }
      }
      if (!out_dir.empty()) verify_opts.out_dir = out_dir;
      return pursuit::cmd_verify(verify_opts, std::cout, std::cerr);
    }
    return pursuit::cmd_params(params_file, params_exploratory, std::cout, std::cerr);
  } catch (const pursuit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return pursuit::kExitConfigError;
  }
}
