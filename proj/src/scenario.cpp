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

#include "pursuit/scenario.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <type_traits>

#include "pursuit/errors.hpp"

namespace pursuit {
namespace {

using nlohmann::json;

json vec(Vec2 v) { return json::array({v.x, v.y}); }
json pair(const EnergyPair& e) { return json::array({e[0], e[1]}); }

Vec2 to_vec(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(std::string(what) + " must be a pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

EnergyPair to_pair(const json& j, const char* what) {
  const Vec2 v = to_vec(j, what);
  return {v.x, v.y};
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError(std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

double number(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v.get<double>();
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json one_based(const std::optional<std::size_t>& i) {
  return i ? json(*i + 1) : json(nullptr);
}

}  // namespace

json region_to_json(const ConvexRegion& region) {
  if (region.is_ellipse()) {
    const EllipseShape& e = region.as_ellipse();
    return {{"kind", "ellipse"},
            {"center", vec(e.center)},
            {"semi_axes", json::array({e.a, e.b})},
            {"rotation", e.rotation}};
  }
  json verts = json::array();
  for (Vec2 v : region.as_polygon().vertices) verts.push_back(vec(v));
  return {{"kind", "polygon"}, {"vertices", verts}};
}

ConvexRegion region_from_json(const json& doc) {
  const json& kind = require(doc, "kind");
  if (kind == "ellipse") {
    const Vec2 center = to_vec(require(doc, "center"), "region center");
    const Vec2 axes = to_vec(require(doc, "semi_axes"), "region semi_axes");
    const double rotation = doc.contains("rotation") ? number(doc, "rotation") : 0.0;
    return ConvexRegion::ellipse(center, axes.x, axes.y, rotation);
  }
  if (kind == "polygon") {
    const json& verts = require(doc, "vertices");
    if (!verts.is_array()) throw ConfigError("region vertices must be an array");
    std::vector<Vec2> pts;
    for (const json& v : verts) pts.push_back(to_vec(v, "polygon vertex"));
    return ConvexRegion::polygon(std::move(pts));
  }
  throw ConfigError("unknown region kind " + kind.dump());
}

json policy_to_json(const PolicySpec& policy) {
  json out = {{"kind", std::string(policy_name(policy))}};
  if (const auto* r = std::get_if<RandomAdmissiblePolicy>(&policy)) {
    out["speed_factor"] = r->speed_factor;
  } else if (const auto* w = std::get_if<WindowSplitterPolicy>(&policy)) {
    out["overdraw_fraction"] = w->overdraw_fraction;
  }
  return out;
}

PolicySpec policy_from_name(std::string_view name) {
  for (const PolicySpec& p : all_policies()) {
    if (policy_name(p) == name) return p;
  }
  throw ConfigError("unknown evader kind \"" + std::string(name) + "\"");
}

PolicySpec policy_from_json(const json& doc) {
  const json& kind = require(doc, "kind");
  if (!kind.is_string()) throw ConfigError("evader kind must be a string");
  PolicySpec spec = policy_from_name(kind.get<std::string>());
  if (auto* r = std::get_if<RandomAdmissiblePolicy>(&spec)) {
    if (doc.contains("speed_factor")) r->speed_factor = number(doc, "speed_factor");
    if (!(r->speed_factor >= 0.0)) throw ConfigError("speed_factor must be >= 0");
  } else if (auto* w = std::get_if<WindowSplitterPolicy>(&spec)) {
    if (doc.contains("overdraw_fraction")) {
      w->overdraw_fraction = number(doc, "overdraw_fraction");
    }
    if (!(w->overdraw_fraction >= 0.0)) {
      throw ConfigError("overdraw_fraction must be >= 0");
    }
  }
  return spec;
}

Scenario scenario_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
    if (doc.contains("schema") && doc.at("schema") != kScenarioSchema) {
      throw ConfigError("unsupported schema " + doc.at("schema").dump());
    }
    Scenario s;
    GameConfig& c = s.config;
    c.region = region_from_json(require(doc, "region"));
    const json& pursuers = require(doc, "pursuers");
    if (!pursuers.is_array()) throw ConfigError("pursuers must be an array");
    for (const json& p : pursuers) {
      c.pursuer_positions.push_back(to_vec(require(p, "position"), "pursuer position"));
      c.pursuer_budgets.push_back(to_pair(require(p, "budget"), "pursuer budget"));
    }
    const json& evader = require(doc, "evader");
    c.evader_position = to_vec(require(evader, "position"), "evader position");
    c.evader_budget = to_pair(require(evader, "budget"), "evader budget");
    s.policy = evader.contains("kind") ? policy_from_json(evader) : PolicySpec{IdlePolicy{}};
    if (doc.contains("dt") && !doc.at("dt").is_null()) c.dt = number(doc, "dt");
    if (doc.contains("capture_tol") && !doc.at("capture_tol").is_null()) {
      c.capture_tol = number(doc, "capture_tol");
    }
    if (doc.contains("boundary_tol")) c.boundary_tol = number(doc, "boundary_tol");
    if (doc.contains("rng_seed")) {
      const json& seed = doc.at("rng_seed");
      if (!seed.is_number_unsigned()) {
        throw ConfigError("rng_seed must be a non-negative integer");
      }
      c.rng_seed = seed.get<std::uint64_t>();
    }
    if (doc.contains("exploratory")) {
      if (!doc.at("exploratory").is_boolean()) {
        throw ConfigError("exploratory must be a boolean");
      }
      s.exploratory = doc.at("exploratory").get<bool>();
    }
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

json to_json(const Scenario& s) {
  const GameConfig& c = s.config;
  json pursuers = json::array();
  for (std::size_t i = 0; i < c.pursuer_positions.size(); ++i) {
    pursuers.push_back({{"position", vec(c.pursuer_positions[i])},
                        {"budget", pair(c.pursuer_budgets[i])}});
  }
  json evader = policy_to_json(s.policy);
  evader["position"] = vec(c.evader_position);
  evader["budget"] = pair(c.evader_budget);
  json out = {{"schema", kScenarioSchema},
              {"region", region_to_json(c.region)},
              {"pursuers", pursuers},
              {"evader", evader},
              {"boundary_tol", c.boundary_tol},
              {"rng_seed", c.rng_seed},
              {"exploratory", s.exploratory}};
  if (c.dt) out["dt"] = *c.dt;
  if (c.capture_tol) out["capture_tol"] = *c.capture_tol;
  return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

void save_scenario(const std::filesystem::path& path, const Scenario& scenario) {
  write_file_atomic(path, to_json(scenario).dump(2) + "\n");
}

json params_to_json(const DerivedParams& p) {
  json margin = pair(p.margin);
  return {
      {"axis", p.axis},
      {"hypothesis_holds", p.hypothesis_holds},
      {"margin", margin},
      {"d", p.d},
      {"c", p.c},
      {"region_d", p.region_d},
      {"region_c", p.region_c},
      {"rho1", p.rho1},
      {"sigma_i1", p.sigma_i1},
      {"sigma_i1_sq", p.sigma_i1_sq},
      {"t_i1", p.t_i1},
      {"t_i2", p.t_i2},
      {"rho_i2_effective", p.rho_i2_effective},
      {"theta_max", p.theta_max},
      {"T_pre", p.T_pre},
      {"prealign_used", p.prealign_used},
      {"T_bound", p.T_bound},
      {"dt", p.dt},
      {"capture_tol", p.capture_tol},
      {"boundary_tol", p.boundary_tol},
      {"rng_seed", p.rng_seed},
      {"frame",
       {{"origin", vec(p.frame.frame.origin)},
        {"rotation", p.frame.frame.rotation},
        {"swapped", p.frame.swapped},
        {"drive_offset", p.frame.drive_offset}}},
  };
}

json report_to_json(const RunResult& result) {
  const CaptureReport& r = result.report;
  json windows = json::array();
  for (std::size_t i = 0; i < r.windows.size(); ++i) {
    const WindowRecord& w = r.windows[i];
    windows.push_back({{"pursuer", i + 1},
                       {"theta", w.outcome == WindowOutcome::kNotReached
                                     ? json(nullptr)
                                     : json(w.theta)},
                       {"tau_i1", optional_number(w.tau_i1)},
                       {"tau_i2", optional_number(w.tau_i2)},
                       {"theta_next", optional_number(w.theta_next)},
                       {"outcome", std::string(to_string(w.outcome))},
                       {"window_v1_energy", w.window_v1_energy},
                       {"sigma_i1_sq", w.sigma_i1_sq},
                       {"budget_guard_tripped", w.budget_guard_tripped},
                       {"alignment_lost", w.alignment_lost}});
  }
  auto ledger = [](const EnergyLedger& l) {
    return json{{"consumed", pair(l.consumed())}, {"budget", pair(l.budget())}};
  };
  json pursuers = json::array();
  for (const EnergyLedger& l : r.pursuer_ledgers) pursuers.push_back(ledger(l));
  json events = json::array();
  for (const TraceEvent& e : result.trace.events) {
    events.push_back({{"t", e.t},
                      {"kind", std::string(to_string(e.kind))},
                      {"pursuer", one_based(e.pursuer)}});
  }
  return {{"schema", kScenarioSchema},
          {"policy", r.policy},
          {"captured", r.captured},
          {"capture_time", optional_number(r.capture_time)},
          {"capturing_pursuer", one_based(r.capturing_pursuer)},
          {"T_bound", r.T_bound},
          {"dt", r.dt},
          {"hypothesis_holds", r.hypothesis_holds},
          {"guarantee_violated", r.guarantee_violated},
          {"windows", windows},
          {"ledgers", {{"pursuers", pursuers}, {"evader", ledger(r.evader_ledger)}}},
          {"counts",
           {{"steps", result.trace.steps.size()},
            {"boundary_stops", r.boundary_stops},
            {"projections", r.projections}}},
          {"events", events},
          {"params", params_to_json(result.params)}};
}

void write_trace_ndjson(std::ostream& out, const RunResult& result) {
  const WorkingFrame& frame = result.params.frame;
  for (const TraceStep& s : result.trace.steps) {
    json pos = json::array();
    json ctl = json::array();
    json en = json::array();
    for (std::size_t i = 0; i < s.pursuers.size(); ++i) {
      pos.push_back(vec(frame.to_world(s.pursuers[i])));
      ctl.push_back(vec(s.pursuer_controls[i]));
      en.push_back(pair(s.pursuer_energy[i]));
    }
    const json line = {
        {"t", s.t},
        {"positions", {{"pursuers", pos}, {"evader", vec(frame.to_world(s.evader))}}},
        {"controls", {{"pursuers", ctl}, {"evader", vec(s.evader_control)}}},
        {"energies", {{"pursuers", en}, {"evader", pair(s.evader_energy)}}},
        {"active", one_based(s.active)},
        {"phase", std::string(to_string(s.phase))}};
    out << line.dump() << '\n';
  }
}

void write_trace_csv(std::ostream& out, const RunResult& result) {
  const WorkingFrame& frame = result.params.frame;
  const std::size_t m = result.params.pursuer_count();
  out << "t,active,phase";
  for (std::size_t i = 1; i <= m; ++i) {
    out << ",p" << i << "_x,p" << i << "_y,p" << i << "_u1,p" << i << "_u2,p" << i
        << "_e1,p" << i << "_e2";
  }
  out << ",e_x,e_y,e_v1,e_v2,e_e1,e_e2\n";
  for (const TraceStep& s : result.trace.steps) {
    out << fmt(s.t) << ',' << (s.active ? std::to_string(*s.active + 1) : "") << ','
        << to_string(s.phase);
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 w = frame.to_world(s.pursuers[i]);
      out << ',' << fmt(w.x) << ',' << fmt(w.y) << ',' << fmt(s.pursuer_controls[i].x)
          << ',' << fmt(s.pursuer_controls[i].y) << ',' << fmt(s.pursuer_energy[i][0])
          << ',' << fmt(s.pursuer_energy[i][1]);
    }
    const Vec2 e = frame.to_world(s.evader);
    out << ',' << fmt(e.x) << ',' << fmt(e.y) << ',' << fmt(s.evader_control.x) << ','
        << fmt(s.evader_control.y) << ',' << fmt(s.evader_energy[0]) << ','
        << fmt(s.evader_energy[1]) << '\n';
  }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace pursuit
