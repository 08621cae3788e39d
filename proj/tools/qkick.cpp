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

// qkick: command-line front end for the kicked open-system experiments.
//
//   qkick <command> [--config file.json] [--seed N] [--out file.csv]
//
// Exit codes: 0 success, 2 configuration error, 3 invariant violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkick/cli/commands.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kInvariantError = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qkick::ValidationError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> names;
  for (const auto& [name, fn] : qkick::cli::commands()) names.push_back(name);

  CLI::App app{"Repeated-interaction open quantum systems and their continuous-time limits"};
  std::string command, config_path, out_path;
  std::uint64_t seed = 0;
  app.add_option("command", command, "Experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "JSON configuration file");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for generated models (overrides run.seed)");
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string csv;
  try {
    qkick::cli::ModelConfig cfg =
        config_path.empty() ? qkick::cli::ModelConfig{} : qkick::cli::parse_config_text(read_file(config_path));
    if (seed_opt->count() > 0) cfg.run.seed = seed;
    csv = qkick::cli::commands().at(command)(cfg).str();
  } catch (const qkick::InvariantViolation& e) {
    std::cerr << "qkick: " << e.what() << "\n";
    return kInvariantError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qkick: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "qkick: " << e.what() << "\n";
    return kConfigError;
  }

  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "qkick: cannot write '" << out_path << "'\n";
      return kConfigError;
    }
    out << csv;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "qkick " << command << ": " << seconds << " s\n";
  return 0;
}
