// Copyright 2026 The cgvf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cgvf/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "cgvf/bundled_configs.hpp"
#include "cgvf/errors.hpp"

namespace cgvf {
namespace {

int line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.is_null() ? 0 : mark.line + 1;
}

[[noreturn]] void fail(const std::string& key, const YAML::Node& node,
                       const std::string& message) {
  throw ConfigError(key, line_of(node), message);
}

void require_map(const YAML::Node& node, const std::string& key) {
  if (!node.IsMap()) fail(key, node, "expected a mapping");
}

void reject_unknown(const YAML::Node& node, const std::string& key,
                    std::initializer_list<std::string_view> allowed) {
  require_map(node, key);
  for (const auto& entry : node) {
    const auto name = entry.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      const std::string full = key.empty() ? name : key + "." + name;
      fail(full, entry.first, "unknown key");
    }
  }
}

std::string child_key(const std::string& parent, std::string_view name) {
  return parent.empty() ? std::string(name) : parent + "." + std::string(name);
}

YAML::Node required(const YAML::Node& parent, const std::string& parent_key,
                    const char* name) {
  const YAML::Node node = parent[name];
  if (!node) fail(child_key(parent_key, name), parent, "missing required key");
  return node;
}

double as_double(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(key, node, "expected a number");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(key, node, "expected a number, got '" + node.Scalar() + "'");
  }
}

double get_double(const YAML::Node& parent, const std::string& parent_key,
                  const char* name, double fallback) {
  const YAML::Node node = parent[name];
  return node ? as_double(node, child_key(parent_key, name)) : fallback;
}

long long as_int(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(key, node, "expected an integer");
  try {
    return node.as<long long>();
  } catch (const YAML::Exception&) {
    fail(key, node, "expected an integer, got '" + node.Scalar() + "'");
  }
}

std::string as_string(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) fail(key, node, "expected a string");
  return node.Scalar();
}

VecN as_vec(const YAML::Node& node, const std::string& key) {
  if (!node.IsSequence()) fail(key, node, "expected a list of numbers");
  VecN v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) =
        as_double(node[i], key + "[" + std::to_string(i) + "]");
  }
  return v;
}

VecN as_vec_of_size(const YAML::Node& node, const std::string& key,
                    Eigen::Index n) {
  VecN v = as_vec(node, key);
  if (v.size() != n) {
    fail(key, node, "expected " + std::to_string(n) + " entries, got " +
                        std::to_string(v.size()));
  }
  return v;
}

TimeProfile parse_profile(const YAML::Node& node, const std::string& key) {
  if (node.IsScalar()) return TimeProfile::constant(as_double(node, key));
  if (!node.IsSequence()) {
    fail(key, node, "expected a number or a list of profile terms");
  }
  TimeProfile profile;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const YAML::Node t = node[i];
    const std::string tk = key + "[" + std::to_string(i) + "]";
    reject_unknown(t, tk, {"kind", "amplitude", "frequency_radps", "phase_rad"});
    ProfileTerm term;
    const std::string kind = as_string(required(t, tk, "kind"), tk + ".kind");
    if (kind == "const") {
      term.kind = ProfileKind::kConst;
    } else if (kind == "sin") {
      term.kind = ProfileKind::kSin;
    } else if (kind == "cos") {
      term.kind = ProfileKind::kCos;
    } else {
      fail(tk + ".kind", t["kind"], "expected const, sin or cos");
    }
    term.amplitude = as_double(required(t, tk, "amplitude"), tk + ".amplitude");
    term.frequency = get_double(t, tk, "frequency_radps", 0.0);
    term.phase = get_double(t, tk, "phase_rad", 0.0);
    profile.terms.push_back(term);
  }
  return profile;
}

PathSpec parse_path(const YAML::Node& node, Eigen::Index dim) {
  reject_unknown(node, "path", {"builtin", "fourier"});
  PathSpec spec;
  if (node["builtin"] && node["fourier"]) {
    fail("path", node, "give either builtin or fourier, not both");
  }
  if (node["builtin"]) {
    spec.builtin = as_string(node["builtin"], "path.builtin");
    if (spec.builtin != "ellipse" && spec.builtin != "lissajous") {
      fail("path.builtin", node["builtin"],
           "unknown builtin '" + spec.builtin + "' (ellipse, lissajous)");
    }
  } else if (node["fourier"]) {
    const YAML::Node coords = node["fourier"];
    if (!coords.IsSequence()) {
      fail("path.fourier", coords, "expected one term list per coordinate");
    }
    for (std::size_t c = 0; c < coords.size(); ++c) {
      const std::string ck = "path.fourier[" + std::to_string(c) + "]";
      if (!coords[c].IsSequence()) fail(ck, coords[c], "expected a term list");
      FourierSeries series;
      for (std::size_t i = 0; i < coords[c].size(); ++i) {
        const YAML::Node t = coords[c][i];
        const std::string tk = ck + "[" + std::to_string(i) + "]";
        reject_unknown(t, tk, {"cos", "sin", "freq"});
        series.push_back({get_double(t, tk, "cos", 0.0),
                          get_double(t, tk, "sin", 0.0),
                          get_double(t, tk, "freq", 1.0)});
      }
      spec.coords.push_back(std::move(series));
    }
  } else {
    fail("path", node, "missing builtin or fourier");
  }
  const ParametricPath path = make_path(spec);
  if (path.dim() != dim) {
    fail("path", node, "path has dimension " + std::to_string(path.dim()) +
                           " but scenario dimension is " + std::to_string(dim));
  }
  return spec;
}

FrameSpec parse_frame(const YAML::Node& node, Eigen::Index dim) {
  require_map(node, "frame");
  const std::string kind = as_string(required(node, "frame", "kind"), "frame.kind");
  if (kind == "static") {
    reject_unknown(node, "frame", {"kind"});
    return StaticFrame{};
  }
  if (kind == "se2_unicycle") {
    reject_unknown(node, "frame",
                   {"kind", "x_m", "y_m", "phi_rad", "v_mps", "omega_radps"});
    if (dim != 2) fail("frame.kind", node["kind"], "se2_unicycle needs dimension 2");
    UnicycleTarget t;
    t.x_d = get_double(node, "frame", "x_m", 0.0);
    t.y_d = get_double(node, "frame", "y_m", 0.0);
    t.phi_d = get_double(node, "frame", "phi_rad", 0.0);
    if (node["v_mps"]) t.v_d = parse_profile(node["v_mps"], "frame.v_mps");
    if (node["omega_radps"]) {
      t.omega_d = parse_profile(node["omega_radps"], "frame.omega_radps");
    }
    return t;
  }
  if (kind == "se3_euler") {
    reject_unknown(node, "frame",
                   {"kind", "position_m", "euler_rad", "u_mps", "v_mps",
                    "w_mps", "p_radps", "q_radps", "r_radps"});
    if (dim != 3) fail("frame.kind", node["kind"], "se3_euler needs dimension 3");
    AircraftTarget t;
    if (node["position_m"]) {
      const VecN p = as_vec_of_size(node["position_m"], "frame.position_m", 3);
      for (int i = 0; i < 3; ++i) t.position[i] = p(i);
    }
    if (node["euler_rad"]) {
      const VecN e = as_vec_of_size(node["euler_rad"], "frame.euler_rad", 3);
      for (int i = 0; i < 3; ++i) t.euler[i] = e(i);
      try {
        check_euler_guard(t.euler[1]);
      } catch (const EulerSingularityError& err) {
        fail("frame.euler_rad", node["euler_rad"], err.what());
      }
    }
    const char* vel_keys[3] = {"u_mps", "v_mps", "w_mps"};
    const char* rate_keys[3] = {"p_radps", "q_radps", "r_radps"};
    for (int i = 0; i < 3; ++i) {
      if (node[vel_keys[i]]) {
        t.body_vel[i] = parse_profile(node[vel_keys[i]],
                                      std::string("frame.") + vel_keys[i]);
      }
      if (node[rate_keys[i]]) {
        t.body_rates[i] = parse_profile(node[rate_keys[i]],
                                        std::string("frame.") + rate_keys[i]);
      }
    }
    return t;
  }
  fail("frame.kind", node["kind"],
       "unknown frame kind '" + kind + "' (static, se2_unicycle, se3_euler)");
}

GainSet parse_gains(const YAML::Node& node, Eigen::Index n, bool coordination) {
  GainSet gains = GainSet::unit(n, coordination ? 1.0 : 0.0);
  if (!node) return gains;
  reject_unknown(node, "gains", {"k", "g", "G_diag", "H_diag", "k_c", "orientation"});
  if (node["k"]) gains.k = as_vec_of_size(node["k"], "gains.k", n);
  if (node["g"] && node["G_diag"]) {
    fail("gains", node, "give either g or G_diag, not both");
  }
  if (node["G_diag"]) gains.G_diag = as_vec_of_size(node["G_diag"], "gains.G_diag", n + 1);
  if (node["g"]) gains.G_diag(n) = as_double(node["g"], "gains.g");
  if (node["H_diag"]) gains.H_diag = as_vec_of_size(node["H_diag"], "gains.H_diag", n + 1);
  gains.k_c = get_double(node, "gains", "k_c", gains.k_c);
  gains.orientation = get_double(node, "gains", "orientation", 1.0);
  try {
    validate_gains(gains, n);
    gain_gate(gains, coordination);
  } catch (const InvalidGainError& err) {
    fail("gains", node, err.what());
  }
  return gains;
}

Coordination parse_graph(const YAML::Node& node, std::size_t agents) {
  reject_unknown(node, "graph", {"edges", "theta_star_rad"});
  Coordination c;
  const YAML::Node edges = required(node, "graph", "edges");
  if (!edges.IsSequence()) fail("graph.edges", edges, "expected a list of [i, j] pairs");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string ek = "graph.edges[" + std::to_string(e) + "]";
    if (!edges[e].IsSequence() || edges[e].size() != 2) {
      fail(ek, edges[e], "expected a pair [i, j] of 1-based agent indices");
    }
    const long long i = as_int(edges[e][0], ek);
    const long long j = as_int(edges[e][1], ek);
    if (i < 1 || j < 1) fail(ek, edges[e], "agent indices are 1 based");
    c.edges.emplace_back(static_cast<std::size_t>(i - 1),
                         static_cast<std::size_t>(j - 1));
  }
  c.theta_star = as_vec_of_size(required(node, "graph", "theta_star_rad"),
                                "graph.theta_star_rad",
                                static_cast<Eigen::Index>(agents));
  try {
    CommGraph graph(agents, c.edges);
  } catch (const GraphError& err) {
    fail("graph.edges", edges, err.what());
  }
  return c;
}

YAML::Node profile_node(const TimeProfile& profile) {
  YAML::Node list(YAML::NodeType::Sequence);
  for (const ProfileTerm& t : profile.terms) {
    YAML::Node term;
    term["kind"] = t.kind == ProfileKind::kConst ? "const"
                   : t.kind == ProfileKind::kSin ? "sin"
                                                 : "cos";
    term["amplitude"] = t.amplitude;
    term["frequency_radps"] = t.frequency;
    term["phase_rad"] = t.phase;
    list.push_back(term);
  }
  return list;
}

YAML::Node vec_node(const VecN& v) {
  YAML::Node list(YAML::NodeType::Sequence);
  for (Eigen::Index i = 0; i < v.size(); ++i) list.push_back(v(i));
  list.SetStyle(YAML::EmitterStyle::Flow);
  return list;
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : "") +
                         (key.empty() ? "" : key + ": ") + message),
      key_(std::move(key)),
      line_(line) {}

ScenarioConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& err) {
    throw ConfigError("", err.mark.line + 1, err.msg);
  }
  if (!root.IsMap()) throw ConfigError("", 0, "document must be a mapping");
  reject_unknown(root, "", {"dimension", "path", "frame", "agents", "gains",
                            "graph", "integrator", "output"});

  ScenarioConfig cfg;
  Scenario& s = cfg.scenario;
  s.dim = as_int(required(root, "", "dimension"), "dimension");
  if (s.dim < 1) fail("dimension", root["dimension"], "must be >= 1");

  s.path = parse_path(required(root, "", "path"), s.dim);
  s.frame = parse_frame(required(root, "", "frame"), s.dim);

  const YAML::Node agents = required(root, "", "agents");
  if (!agents.IsSequence() || agents.size() == 0) {
    fail("agents", agents, "expected a non-empty list of agents");
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string ak = "agents[" + std::to_string(i) + "]";
    reject_unknown(agents[i], ak, {"x_m", "theta"});
    AgentInit a;
    a.x = as_vec_of_size(required(agents[i], ak, "x_m"), ak + ".x_m", s.dim);
    a.theta = get_double(agents[i], ak, "theta", 0.0);
    s.agents.push_back(std::move(a));
  }

  if (root["graph"]) s.coordination = parse_graph(root["graph"], s.agents.size());
  s.gains = parse_gains(root["gains"], s.dim, s.coordination.has_value());

  const YAML::Node integ = required(root, "", "integrator");
  reject_unknown(integ, "integrator", {"dt_s", "t_end_s", "record_stride"});
  s.dt = get_double(integ, "integrator", "dt_s", kDefaultDt);
  s.t_end = as_double(required(integ, "integrator", "t_end_s"), "integrator.t_end_s");
  if (integ["record_stride"]) {
    const long long stride = as_int(integ["record_stride"], "integrator.record_stride");
    if (stride < 1) fail("integrator.record_stride", integ["record_stride"], "must be >= 1");
    s.record_stride = static_cast<std::size_t>(stride);
  }

  if (const YAML::Node out = root["output"]) {
    reject_unknown(out, "output", {"dir", "name"});
    if (out["dir"]) cfg.output.dir = as_string(out["dir"], "output.dir");
    if (out["name"]) cfg.output.name = as_string(out["name"], "output.name");
  }

  try {
    s.validate();
  } catch (const std::exception& err) {
    throw ConfigError("", 0, err.what());
  }
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "config file not found or unreadable: '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string_view bundled_config(std::string_view name) {
  if (name == "sim1") return bundled::kSim1Config;
  if (name == "sim2") return bundled::kSim2Config;
  throw std::invalid_argument("no bundled scenario named '" + std::string(name) +
                              "' (sim1, sim2)");
}

std::string serialize_config(const ScenarioConfig& config) {
  const Scenario& s = config.scenario;
  YAML::Node root;
  root["dimension"] = static_cast<long long>(s.dim);

  YAML::Node path;
  if (!s.path.builtin.empty()) {
    path["builtin"] = s.path.builtin;
  } else {
    YAML::Node coords(YAML::NodeType::Sequence);
    for (const FourierSeries& series : s.path.coords) {
      YAML::Node list(YAML::NodeType::Sequence);
      for (const FourierTerm& t : series) {
        YAML::Node term;
        term["cos"] = t.cos_coeff;
        term["sin"] = t.sin_coeff;
        term["freq"] = t.freq;
        term.SetStyle(YAML::EmitterStyle::Flow);
        list.push_back(term);
      }
      coords.push_back(list);
    }
    path["fourier"] = coords;
  }
  root["path"] = path;

  YAML::Node frame;
  if (const auto* u = std::get_if<UnicycleTarget>(&s.frame)) {
    frame["kind"] = "se2_unicycle";
    frame["x_m"] = u->x_d;
    frame["y_m"] = u->y_d;
    frame["phi_rad"] = u->phi_d;
    frame["v_mps"] = profile_node(u->v_d);
    frame["omega_radps"] = profile_node(u->omega_d);
  } else if (const auto* a = std::get_if<AircraftTarget>(&s.frame)) {
    frame["kind"] = "se3_euler";
    frame["position_m"] = vec_node(Eigen::Vector3d(a->position[0], a->position[1], a->position[2]));
    frame["euler_rad"] = vec_node(Eigen::Vector3d(a->euler[0], a->euler[1], a->euler[2]));
    const char* vel_keys[3] = {"u_mps", "v_mps", "w_mps"};
    const char* rate_keys[3] = {"p_radps", "q_radps", "r_radps"};
    for (int i = 0; i < 3; ++i) {
      frame[vel_keys[i]] = profile_node(a->body_vel[i]);
      frame[rate_keys[i]] = profile_node(a->body_rates[i]);
    }
  } else {
    frame["kind"] = "static";
  }
  root["frame"] = frame;

  YAML::Node agents(YAML::NodeType::Sequence);
  for (const AgentInit& a : s.agents) {
    YAML::Node node;
    node["x_m"] = vec_node(a.x);
    node["theta"] = a.theta;
    agents.push_back(node);
  }
  root["agents"] = agents;

  YAML::Node gains;
  gains["k"] = vec_node(s.gains.k);
  gains["G_diag"] = vec_node(s.gains.G_diag);
  gains["H_diag"] = vec_node(s.gains.H_diag);
  gains["k_c"] = s.gains.k_c;
  gains["orientation"] = s.gains.orientation;
  root["gains"] = gains;

  if (s.coordination) {
    YAML::Node graph;
    YAML::Node edges(YAML::NodeType::Sequence);
    for (const auto& [i, j] : s.coordination->edges) {
      YAML::Node pair(YAML::NodeType::Sequence);
      pair.push_back(static_cast<unsigned long long>(i + 1));
      pair.push_back(static_cast<unsigned long long>(j + 1));
      pair.SetStyle(YAML::EmitterStyle::Flow);
      edges.push_back(pair);
    }
    graph["edges"] = edges;
    graph["theta_star_rad"] = vec_node(s.coordination->theta_star);
    root["graph"] = graph;
  }

  YAML::Node integ;
  integ["dt_s"] = s.dt;
  integ["t_end_s"] = s.t_end;
  integ["record_stride"] = static_cast<unsigned long long>(s.record_stride);
  root["integrator"] = integ;

  YAML::Node out;
  out["dir"] = config.output.dir;
  out["name"] = config.output.name;
  root["output"] = out;

  YAML::Emitter emitter;
  emitter.SetDoublePrecision(17);
  emitter << root;
  return std::string(emitter.c_str()) + "\n";
}

}  // namespace cgvf
