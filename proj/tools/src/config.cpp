// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "stablespec_tools/config.hpp"

#include <fstream>

#include "stablespec/error.hpp"

namespace stablespec::tools {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "cli", what); }

template <class T>
void take(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("config key '") + key + "': " + e.what());
  }
}

void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad("config section '" + where + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) bad("unknown config key '" + where + it.key() + "'");
  }
}

}  // namespace

numerics::Grid GridSpec::build() const {
  if (spacing == "linear") return numerics::Grid::linear(lo, hi, static_cast<std::size_t>(n));
  return numerics::Grid::logarithmic(lo, hi, static_cast<std::size_t>(n));
}

double RunConfig::tol(const std::string& key) const {
  const auto it = tolerances.find(key);
  if (it == tolerances.end()) bad("no tolerance named '" + key + "'");
  return it->second;
}

void RunConfig::validate() const {
  if (!(alpha > 1.0 && alpha < 2.0)) bad("alpha must lie in (1, 2), got " + std::to_string(alpha));
  for (const auto& [k, v] : tolerances)
    if (!(v > 0.0)) bad("tolerance '" + k + "' must be positive");
  if (grid.spacing != "linear" && grid.spacing != "logarithmic") bad("grid.spacing must be linear or logarithmic");
  if (!(grid.lo > 0.0) || !(grid.hi > grid.lo) || grid.n < 2) bad("grid needs 0 < lo < hi and n >= 2");
  if (output.format != "csv" && output.format != "json") bad("output.format must be csv or json");
  if (mc.n_paths < 1 || mc.n_steps < 1) bad("mc.n_paths and mc.n_steps must be >= 1");
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"alpha", c.alpha},
                     {"tolerances", c.tolerances},
                     {"grid", {{"lo", c.grid.lo}, {"hi", c.grid.hi}, {"n", c.grid.n}, {"spacing", c.grid.spacing}}},
                     {"output", {{"path", c.output.path}, {"format", c.output.format}}},
                     {"mc", {{"seed", c.mc.seed}, {"n_paths", c.mc.n_paths}, {"n_steps", c.mc.n_steps}}}};
}

void merge_json(RunConfig& c, const nlohmann::json& j) {
  check_keys(j, {"alpha", "tolerances", "grid", "output", "mc"}, "");
  take(j, "alpha", c.alpha);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    check_keys(t, {"quad", "kernel", "solve"}, "tolerances.");
    for (auto it = t.begin(); it != t.end(); ++it) take(t, it.key().c_str(), c.tolerances[it.key()]);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    check_keys(g, {"lo", "hi", "n", "spacing"}, "grid.");
    take(g, "lo", c.grid.lo);
    take(g, "hi", c.grid.hi);
    take(g, "n", c.grid.n);
    take(g, "spacing", c.grid.spacing);
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    check_keys(o, {"path", "format"}, "output.");
    take(o, "path", c.output.path);
    take(o, "format", c.output.format);
  }
  if (j.contains("mc")) {
    const auto& m = j.at("mc");
    check_keys(m, {"seed", "n_paths", "n_steps"}, "mc.");
    take(m, "seed", c.mc.seed);
    take(m, "n_paths", c.mc.n_paths);
    take(m, "n_steps", c.mc.n_steps);
  }
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    bad("config file '" + path + "': " + e.what());
  }
  merge_json(base, j);
  return base;
}

}  // namespace stablespec::tools
