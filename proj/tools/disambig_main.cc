// Copyright 2026 The Disambig Authors
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

// disambig <subcommand> --config <path> [--set key=value ...]
//
// Exit status: 0 on success, 1 for usage errors, 2 when a stage fails.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "disambig/base/error.h"
#include "disambig/pipeline/config.h"
#include "disambig/pipeline/stages.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitStageFailure = 2;

}  // namespace

int main(int argc, char** argv) {
  using disambig::Error;
  using disambig::ErrorCode;
  namespace pl = disambig::pipeline;

  CLI::App app{"Inventor name disambiguation with comparison-map images"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::vector<std::string> settings;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value configuration file")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", settings,
                    "override one setting, e.g. --set p_bar=0.05")
        ->type_name("KEY=VALUE");
  };
  for (std::string_view stage : pl::kStageNames) {
    add_common(app.add_subcommand(std::string(stage),
                                  "run the " + std::string(stage) + " stage"));
  }
  add_common(app.add_subcommand("pipeline", "run every stage in order"));
  add_common(
      app.add_subcommand("show-config", "print the effective configuration"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  pl::PipelineConfig config;
  try {
    if (!config_path.empty()) pl::ApplyConfigFile(config_path, &config);
    for (const std::string& s : settings) pl::ApplySetting(s, &config);
    config.Validate();
  } catch (const Error& e) {
    std::cerr << "disambig: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (command == "show-config") {
      std::cout << pl::DescribeConfig(config);
    } else if (command == "pipeline") {
      pl::RunPipeline(config, std::cerr);
    } else {
      pl::RunStage(command, config, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << "disambig " << command << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kUsage ? kExitUsage : kExitStageFailure;
  } catch (const std::exception& e) {
    std::cerr << "disambig " << command << ": " << e.what() << "\n";
    return kExitStageFailure;
  }
  return 0;
}
