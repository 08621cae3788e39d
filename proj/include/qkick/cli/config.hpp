// Copyright 2026 The qkick Authors
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

#pragma once

// JSON run configuration for the command-line front end. Complex numbers are
// [re, im] pairs; matrices are arrays of rows. Every rejection names the
// offending field.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qkick/collective.hpp"
#include "qkick/collision.hpp"
#include "qkick/errors.hpp"
#include "qkick/model.hpp"
#include "qkick/random.hpp"
#include "qkick/seeded.hpp"

namespace qkick::cli {

using json = nlohmann::json;

struct RunSettings {
  std::optional<double> tau;
  std::vector<double> tau_list;
  double t_final = 1.0;
  std::optional<double> dt;
  std::uint64_t seed = 0;
  std::size_t stride = 1;
};

struct CollectiveSettings {
  double t = 0.5;
  double s = 0.3;
  double tau = 0.1;
  int sites = 10;
};

struct EstimateSettings {
  double c = 1.0;
  double tau = 0.5;
  int series_order = 30;
  int word_length = 8;
  int heisenberg_length = 6;
  int models = 5;
};

struct ModelConfig {
  Eigen::Index dim = 2;
  std::optional<HamiltonianBlocks> blocks;  // absent: drawn from the seed
  double model_norm = 1.0;
  bool gaussian = false;  // seeded H11 = 0
  bool closed = false;    // seeded H10 = H11 = 0
  std::optional<Matrix> rho0;
  AtomStateSpec atom;
  RotationSpec rotation{1.0, 0.0, cplx(1.0), 0.0};
  RunSettings run;
  CollectiveSettings collective;
  EstimateSettings estimates;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ValidationError("config field '" + path + "': " + what);
}

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  const std::set<std::string> names(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    if (!names.count(item.key())) fail(path.empty() ? item.key() : path + "." + item.key(), "unknown field");
}

inline const json& object_at(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

inline double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) fail(path, "must be > 0");
  return v;
}

inline long long integer(const json& j, const std::string& path, long long lo, long long hi) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi) fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

inline bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

inline cplx complex_entry(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

inline Matrix matrix(const json& j, const std::string& path, Eigen::Index d) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d) fail(path, "expected " + std::to_string(d) + " rows");
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
      fail(row_path, "expected " + std::to_string(d) + " entries");
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = complex_entry(row[static_cast<std::size_t>(c)], row_path + "[" + std::to_string(c) + "]");
  }
  return m;
}

template <class F>
auto rethrow_as(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

}  // namespace detail

inline ModelConfig parse_config(const json& root) {
  using namespace detail;
  ModelConfig cfg;
  object_at(root, "<root>");
  reject_unknown(root, "",
                 {"dim", "blocks", "model_norm", "gaussian", "closed", "rho0", "atom", "rotation", "run", "collective",
                  "estimates"});

  if (root.contains("dim")) cfg.dim = integer(root["dim"], "dim", 1, 8);
  if (root.contains("model_norm")) cfg.model_norm = positive(root["model_norm"], "model_norm");
  if (root.contains("gaussian")) cfg.gaussian = boolean(root["gaussian"], "gaussian");
  if (root.contains("closed")) cfg.closed = boolean(root["closed"], "closed");

  if (root.contains("blocks")) {
    const json& b = object_at(root["blocks"], "blocks");
    reject_unknown(b, "blocks", {"H00", "H10", "H11"});
    for (const char* key : {"H00", "H10", "H11"})
      if (!b.contains(key)) fail(std::string("blocks.") + key, "missing");
    const Matrix h00 = matrix(b["H00"], "blocks.H00", cfg.dim);
    const Matrix h10 = matrix(b["H10"], "blocks.H10", cfg.dim);
    const Matrix h11 = matrix(b["H11"], "blocks.H11", cfg.dim);
    cfg.blocks = rethrow_as("blocks", [&] { return HamiltonianBlocks(h00, h10, h11); });
  }

  if (root.contains("rho0")) {
    const Matrix rho = matrix(root["rho0"], "rho0", cfg.dim);
    if (!is_density(rho, 1e-8)) fail("rho0", "not a density matrix");
    cfg.rho0 = rho;
  }

  if (root.contains("atom")) {
    const json& a = object_at(root["atom"], "atom");
    reject_unknown(a, "atom", {"p0", "p1"});
    if (!a.contains("p0") || !a.contains("p1")) fail("atom", "needs both p0 and p1");
    cfg.atom = {number(a["p0"], "atom.p0"), number(a["p1"], "atom.p1")};
    rethrow_as("atom", [&] {
      cfg.atom.validate();
      return true;
    });
  }

  if (root.contains("rotation")) {
    const json& r = object_at(root["rotation"], "rotation");
    reject_unknown(r, "rotation", {"p0", "p1", "theta_phase", "gamma"});
    const double p0 = r.contains("p0") ? number(r["p0"], "rotation.p0") : 1.0;
    const double p1 = r.contains("p1") ? number(r["p1"], "rotation.p1") : 0.0;
    const double phase = r.contains("theta_phase") ? number(r["theta_phase"], "rotation.theta_phase") : 0.0;
    const double gamma = r.contains("gamma") ? number(r["gamma"], "rotation.gamma") : 0.0;
    cfg.rotation = rethrow_as("rotation", [&] {
      const RotationSpec spec = RotationSpec::from_phase(p0, p1, phase, gamma);
      spec.validate();
      return spec;
    });
  }

  if (root.contains("run")) {
    const json& r = object_at(root["run"], "run");
    reject_unknown(r, "run", {"tau", "tau_list", "t_final", "dt", "seed", "stride"});
    if (r.contains("tau")) cfg.run.tau = positive(r["tau"], "run.tau");
    if (r.contains("tau_list")) {
      if (!r["tau_list"].is_array()) fail("run.tau_list", "expected an array");
      for (std::size_t i = 0; i < r["tau_list"].size(); ++i)
        cfg.run.tau_list.push_back(positive(r["tau_list"][i], "run.tau_list[" + std::to_string(i) + "]"));
    }
    if (r.contains("t_final")) {
      cfg.run.t_final = number(r["t_final"], "run.t_final");
      if (cfg.run.t_final < 0.0) fail("run.t_final", "must be >= 0");
    }
    if (r.contains("dt")) cfg.run.dt = positive(r["dt"], "run.dt");
    if (r.contains("seed")) {
      if (!r["seed"].is_number_unsigned() && !(r["seed"].is_number_integer() && r["seed"].get<long long>() >= 0))
        fail("run.seed", "expected a nonnegative integer");
      cfg.run.seed = r["seed"].get<std::uint64_t>();
    }
    if (r.contains("stride")) cfg.run.stride = static_cast<std::size_t>(integer(r["stride"], "run.stride", 1, 1 << 30));
  }

  if (root.contains("collective")) {
    const json& c = object_at(root["collective"], "collective");
    reject_unknown(c, "collective", {"t", "s", "tau", "sites"});
    if (c.contains("t")) cfg.collective.t = number(c["t"], "collective.t");
    if (c.contains("s")) cfg.collective.s = number(c["s"], "collective.s");
    if (c.contains("tau")) cfg.collective.tau = positive(c["tau"], "collective.tau");
    if (c.contains("sites")) cfg.collective.sites = static_cast<int>(integer(c["sites"], "collective.sites", 1, kMaxChainSites));
    if (cfg.collective.t < 0.0) fail("collective.t", "must be >= 0");
    if (cfg.collective.s < 0.0) fail("collective.s", "must be >= 0");
  }

  if (root.contains("estimates")) {
    const json& e = object_at(root["estimates"], "estimates");
    reject_unknown(e, "estimates", {"C", "tau", "series_order", "word_length", "heisenberg_length", "models"});
    if (e.contains("C")) {
      cfg.estimates.c = number(e["C"], "estimates.C");
      if (cfg.estimates.c < 0.0) fail("estimates.C", "must be >= 0");
    }
    if (e.contains("tau")) cfg.estimates.tau = positive(e["tau"], "estimates.tau");
    if (e.contains("series_order"))
      cfg.estimates.series_order = static_cast<int>(integer(e["series_order"], "estimates.series_order", 0, 150));
    if (e.contains("word_length"))
      cfg.estimates.word_length = static_cast<int>(integer(e["word_length"], "estimates.word_length", 0, 8));
    if (e.contains("heisenberg_length"))
      cfg.estimates.heisenberg_length =
          static_cast<int>(integer(e["heisenberg_length"], "estimates.heisenberg_length", 0, 8));
    if (e.contains("models")) cfg.estimates.models = static_cast<int>(integer(e["models"], "estimates.models", 1, 100));
  }
  return cfg;
}

inline ModelConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(root);
}

inline SeededModel realize(const ModelConfig& cfg) {
  SplitMix64 rng(cfg.run.seed);
  SeededModel drawn = draw_model(rng, cfg.dim, cfg.model_norm, cfg.gaussian, cfg.closed);
  if (cfg.blocks) drawn.blocks = *cfg.blocks;
  if (cfg.rho0) drawn.rho0 = *cfg.rho0;
  return drawn;
}

}  // namespace qkick::cli
