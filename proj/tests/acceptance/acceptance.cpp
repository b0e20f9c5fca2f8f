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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "pursuit/cli.hpp"
#include "pursuit/harness.hpp"
#include "pursuit/scenario.hpp"
#include "test_support.hpp"

namespace pursuit {
namespace {

using nlohmann::json;
using testing::Big;
using testing::boundary_samples;
using testing::golden_oracle;
using testing::random_polygon;
using testing::random_region;
using testing::rel_err;
using testing::uniform;

// Pinned tolerances.
constexpr double kGoldenRelTol = 1e-9;
constexpr double kGoldenSeconds = 1.0;
constexpr std::size_t kBatteryScenarios = 200;
constexpr std::uint64_t kBatterySeed = 2026;
constexpr double kBatterySeconds = 300.0;
constexpr std::size_t kPigeonholeRuns = 1000;
constexpr std::uint64_t kPigeonholeSeed = 7919;
constexpr double kOverdraftRel = 1e-9;
constexpr std::size_t kCaliperPolygons = 1000;
constexpr std::size_t kOrdinateRegions = 200;
constexpr int kOrdinateSamples = 10000;
constexpr double kOrdinateTol = 1e-6;
constexpr double kFrameTol = 1e-12;
constexpr double kRefinementK = 1.0;
constexpr std::size_t kDeterminismScenarios = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("%s [%d] %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  out.precision(6);
  (out << ... << args);
  return out.str();
}

void golden_example() {
  const auto start = Clock::now();
  const std::filesystem::path file =
      std::filesystem::temp_directory_path() / "pursuit_acceptance_golden.json";
  save_scenario(file, Scenario{golden_config(), IdlePolicy{}, false});
  std::ostringstream out, err;
  const int code = cmd_params(file, false, out, err);
  const double elapsed = seconds_since(start);
  if (code != 0) {
    report(1, false, "golden example: params failed: " + err.str());
    return;
  }
  const json p = json::parse(out.str());
  const auto oracle = golden_oracle();
  const double e1 = rel_err(p["sigma_i1_sq"][0].get<double>(), oracle.sigma11_sq);
  const double e2 = rel_err(p["sigma_i1_sq"][1].get<double>(), oracle.sigma21_sq);
  const double e3 = rel_err(p["t_i1"][0].get<double>(), oracle.t11);
  const double e4 = rel_err(p["t_i1"][1].get<double>(), oracle.t21);
  const double worst = std::max({e1, e2, e3, e4});
  const bool exact = p["d"].get<double>() == 6.0 && p["c"].get<double>() == 2.0;
  report(1, exact && worst <= kGoldenRelTol && elapsed < kGoldenSeconds,
         cat("golden example: d=", p["d"].get<double>(), " c=", p["c"].get<double>(),
             ", worst relative error vs 50-digit oracle ", worst, " (tol ", kGoldenRelTol,
             "), ", elapsed, " s"));
}

void capture_guarantee() {
  const auto start = Clock::now();
  VerifyOptions o;
  o.n = kBatteryScenarios;
  o.seed = kBatterySeed;
  o.include_pinned = false;
  o.out_dir = std::filesystem::temp_directory_path() / "pursuit_acceptance_failures";
  const VerifySummary s = check_capture_guarantee(o);
  VerifyOptions pinned = o;
  pinned.n = 0;
  pinned.include_pinned = true;
  const VerifySummary p = check_capture_guarantee(pinned);
  const double elapsed = seconds_since(start);
  std::string detail;
  for (const VerifyFailure& f : s.failures) {
    detail += " | " + f.messages.front() + (f.file ? " -> " + f.file->string() : "");
  }
  for (const VerifyFailure& f : p.failures) detail += " | pinned: " + f.messages.front();
  report(2, s.ok() && p.ok() && s.runs == kBatteryScenarios * 5 && elapsed < kBatterySeconds,
         cat("capture guarantee: ", s.passed, "/", s.runs, " random runs captured within "
             "T_bound + dt, worst slack ", s.worst_slack.value_or(NAN), "; pinned ",
             p.passed, "/", p.runs, "; ", elapsed, " s", detail));
}

// Criteria 3 and 4 share one randomized batch.
void pigeonhole_and_admissibility() {
  std::mt19937_64 rng(kPigeonholeSeed);
  const std::vector<PolicySpec> policies = all_policies();
  std::size_t pigeon_bad = 0, admiss_bad = 0, splitter_runs = 0, splitter_failed_windows = 0;
  std::size_t prealign_runs = 0;
  double worst_overdraft = -INFINITY;
  std::string first_pigeon, first_admiss;
  for (std::size_t k = 0; k < kPigeonholeRuns; ++k) {
    const GameConfig c = sample_config(rng);
    PolicySpec spec = policies[k % policies.size()];
    if (auto* w = std::get_if<WindowSplitterPolicy>(&spec)) {
      w->overdraw_fraction = uniform(rng, 0.01, 0.5);
    }
    RunResult r;
    try {
      r = run(c, spec);
    } catch (const std::exception& e) {
      ++admiss_bad;
      if (first_admiss.empty()) first_admiss = e.what();
      continue;
    }
    TraceCheck pig;
    check_pigeonhole(r, pig);
    if (const auto* w = std::get_if<WindowSplitterPolicy>(&spec)) {
      check_splitter_windows(r, w->overdraw_fraction, pig);
      ++splitter_runs;
      for (const WindowRecord& win : r.report.windows) {
        splitter_failed_windows += win.outcome == WindowOutcome::kFailed;
      }
    }
    if (!pig.ok()) {
      ++pigeon_bad;
      if (first_pigeon.empty()) first_pigeon = pig.failures.front();
    }
    TraceCheck adm;
    check_admissibility(r, adm);
    check_prealign(r, adm);
    prealign_runs += r.params.prealign_used;
    if (!adm.ok()) {
      ++admiss_bad;
      if (first_admiss.empty()) first_admiss = adm.failures.front();
    }
    const DerivedParams& p = r.params;
    for (std::size_t i = 0; i < p.pursuer_count(); ++i) {
      for (int j = 0; j < 2; ++j) {
        worst_overdraft = std::max(worst_overdraft, r.report.pursuer_ledgers[i].consumed(j) /
                                                        p.pursuer_budgets[i][j] - 1.0);
      }
    }
    for (int j = 0; j < 2; ++j) {
      worst_overdraft = std::max(worst_overdraft,
                                 r.report.evader_ledger.consumed(j) / p.evader_budget[j] - 1.0);
    }
  }
  report(3, pigeon_bad == 0,
         cat("pigeonhole: ", kPigeonholeRuns - pigeon_bad, "/", kPigeonholeRuns,
             " runs with a compliant window (or capture first), window sums <= sigma_1^2, "
             "splitter overdrew exactly its planned windows (", splitter_runs, " splitter runs, ",
             splitter_failed_windows, " failed windows)",
             first_pigeon.empty() ? "" : " | " + first_pigeon));
  report(4, admiss_bad == 0 && worst_overdraft <= kOverdraftRel,
         cat("admissibility: ", kPigeonholeRuns - admiss_bad, "/", kPigeonholeRuns,
             " runs within budget, max relative overdraft ", worst_overdraft, " (tol ",
             kOverdraftRel, "), pre-alignment spend <= rho_i2^2/4 in ", prealign_runs, " runs",
             first_admiss.empty() ? "" : " | " + first_admiss));
}

void geometry_oracles() {
  std::mt19937_64 rng(4242);
  std::size_t caliper_bad = 0;
  for (std::size_t k = 0; k < kCaliperPolygons; ++k) {
    const ConvexRegion r = random_polygon(rng, 4 + static_cast<int>(k % 60));
    const Diameter fast = diameter(r);
    const Diameter slow = brute_force_diameter(r.as_polygon());
    caliper_bad += !(fast.length == slow.length && fast.first == slow.first &&
                     fast.second == slow.second);
  }
  std::size_t ordinate_bad = 0;
  for (std::size_t k = 0; k < kOrdinateRegions; ++k) {
    const ConvexRegion r = random_region(rng);
    const Frame f = diametral_frame(r);
    const double c = max_ordinate(r, f);
    for (Vec2 p : boundary_samples(r, kOrdinateSamples)) {
      if (std::abs(f.to_frame(p).y) > c + kOrdinateTol) {
        ++ordinate_bad;
        break;
      }
    }
  }
  double worst_frame = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Frame f{{uniform(rng, -5, 5), uniform(rng, -5, 5)},
                  uniform(rng, -std::numbers::pi, std::numbers::pi)};
    const Vec2 a{uniform(rng, -5, 5), uniform(rng, -5, 5)};
    const Vec2 b{uniform(rng, -5, 5), uniform(rng, -5, 5)};
    const Vec2 back = f.to_world(f.to_frame(a));
    worst_frame = std::max({worst_frame, std::abs(back.x - a.x), std::abs(back.y - a.y),
                            std::abs((f.to_frame(a) - f.to_frame(b)).norm() - (a - b).norm())});
  }
  report(5, caliper_bad == 0 && ordinate_bad == 0 && worst_frame <= kFrameTol,
         cat("geometry oracles: calipers == brute force on ", kCaliperPolygons - caliper_bad, "/",
             kCaliperPolygons, " polygons; max_ordinate bounds ", kOrdinateSamples,
             " boundary samples on ", kOrdinateRegions - ordinate_bad, "/", kOrdinateRegions,
             " regions; frame error ", worst_frame));
}

void dt_refinement() {
  const double dt = validate(golden_config()).dt;
  double times[3];
  for (int k = 0; k < 3; ++k) {
    GameConfig c = golden_config();
    c.dt = dt / (1 << k);
    const RunResult r = run(c, IdlePolicy{});
    times[k] = r.report.captured ? *r.report.capture_time : NAN;
  }
  const double k1 = std::abs(times[0] - times[1]) / dt;
  const double k2 = std::abs(times[1] - times[2]) / (dt / 2);
  const bool pass = std::isfinite(k1) && std::isfinite(k2) && k1 <= kRefinementK &&
                    k2 <= kRefinementK;
  report(6, pass,
         cat("dt refinement: capture at dt, dt/2, dt/4 = ", times[0], ", ", times[1], ", ",
             times[2], "; fitted K = ", k1, ", ", k2, " (pinned ", kRefinementK, ")"));
}

void determinism() {
  std::mt19937_64 rng(31337);
  std::vector<GameConfig> configs = pinned_configs();
  for (std::size_t k = 0; k < kDeterminismScenarios; ++k) configs.push_back(sample_config(rng));
  std::size_t same = 0, total = 0;
  for (const GameConfig& c : configs) {
    for (const PolicySpec& spec : all_policies()) {
      std::ostringstream a, b;
      const RunResult ra = run(c, spec);
      const RunResult rb = run(c, spec);
      write_trace_ndjson(a, ra);
      write_trace_csv(a, ra);
      a << report_to_json(ra).dump();
      write_trace_ndjson(b, rb);
      write_trace_csv(b, rb);
      b << report_to_json(rb).dump();
      ++total;
      same += a.str() == b.str();
    }
  }
  report(7, same == total,
         cat("determinism: ", same, "/", total, " repeated runs byte-identical"));
}

}  // namespace
}  // namespace pursuit

int main() {
  using namespace pursuit;
  golden_example();
  capture_guarantee();
  pigeonhole_and_admissibility();
  geometry_oracles();
  dt_refinement();
  determinism();
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
