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

#include "pursuit/cli.hpp"

#include <ostream>
#include <sstream>

#include "pursuit/errors.hpp"

namespace pursuit {

int cmd_run(const std::filesystem::path& scenario_path, const RunOverrides& overrides,
            std::ostream& out, std::ostream& err) {
  RunResult result;
  try {
    Scenario s = load_scenario(scenario_path);
    if (overrides.dt) s.config.dt = overrides.dt;
    const ValidateOptions options{s.exploratory || overrides.exploratory};
    const DerivedParams params = validate(s.config, options);
    EvaderPolicy policy(s.policy, params.rng_seed);
    result = run(params, policy);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const AdmissibilityError& e) {
    err << "admissibility violated: " << e.what() << '\n';
    return kExitGuaranteeViolated;
  }

  if (overrides.trace) {
    std::ostringstream buf;
    write_trace_ndjson(buf, result);
    write_file_atomic(*overrides.trace, buf.str());
  }
  if (overrides.csv) {
    std::ostringstream buf;
    write_trace_csv(buf, result);
    write_file_atomic(*overrides.csv, buf.str());
  }
  if (overrides.report) {
    write_file_atomic(*overrides.report, report_to_json(result).dump(2) + "\n");
  }

  const CaptureReport& r = result.report;
  if (r.captured) {
    out << "captured by pursuer " << *r.capturing_pursuer + 1 << " at t=" << *r.capture_time
        << " (T_bound=" << r.T_bound << ", dt=" << r.dt << ")\n";
    return kExitCaptured;
  }
  out << "no capture by t=" << r.T_bound + r.dt << '\n';
  if (r.guarantee_violated) {
    err << "guarantee violated: sufficiency condition held but the evader escaped\n";
    return kExitGuaranteeViolated;
  }
  return kExitNoCapture;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const VerifySummary s = check_capture_guarantee(options);
  out << "runs " << s.runs << ", passed " << s.passed << ", captured " << s.captures;
  if (s.worst_slack) out << ", worst slack " << *s.worst_slack;
  out << '\n';
  for (const VerifyFailure& f : s.failures) {
    err << "FAIL";
    if (f.file) err << ' ' << f.file->string();
    err << '\n';
    for (const std::string& m : f.messages) err << "  " << m << '\n';
  }
  return s.ok() ? 0 : kExitGuaranteeViolated;
}

int cmd_params(const std::filesystem::path& scenario_path, bool exploratory,
               std::ostream& out, std::ostream& err) {
  try {
    const Scenario s = load_scenario(scenario_path);
    const DerivedParams p = validate(s.config, {s.exploratory || exploratory});
    out << params_to_json(p).dump(2) << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace pursuit
