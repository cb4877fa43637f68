// Copyright 2026 The segrobust Authors.
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

// Command-line front end. RunCli() is the whole program minus process
// setup, so tests can drive subcommands in-process.

#ifndef SEGROBUST_TOOLS_CLI_H_
#define SEGROBUST_TOOLS_CLI_H_

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "segrobust/align.h"
#include "segrobust/augment.h"
#include "segrobust/eval.h"
#include "segrobust/noise.h"
#include "segrobust/segment.h"
#include "segrobust/text.h"

namespace segrobust::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMalformedInput = 2;
inline constexpr int kExitInternal = 3;

// Environment variable naming a default configuration file.
inline constexpr const char* kConfigEnvVar = "SEGROBUST_CONFIG";

// Everything a pipeline run can be configured with. Loaded from a JSON file;
// command-line flags override individual fields.
struct PipelineConfig {
  NormalizationPolicy normalization = NormalizationPolicy::Stripped();
  AlignmentConfig alignment;
  std::set<std::string> abbreviations = DefaultAbbreviations();
  PauseSplitConfig pause;
  size_t fixed_length = 20;
  AugmentationConfig augmentation;
  MixtureSpec mixture = DefaultMixture();
  size_t mixture_total = 100000;
  BleuConfig bleu;
  BucketBounds buckets = DefaultBucketBounds();
  NoiseConfig noise;
  uint64_t seed = 0;
  std::string output;  // empty: standard output

  static MixtureSpec DefaultMixture() {
    MixtureSpec spec;
    spec.corpus_weights = {{"WMT", 0.9}, {"IWSLT", 0.1}};
    spec.default_augmented_fraction = 0.2;
    return spec;
  }
};

// Parses a JSON configuration. Unknown keys are rejected with ConfigError;
// missing keys keep their defaults.
PipelineConfig ParseConfig(const std::string& json_text);
PipelineConfig LoadConfigFile(const std::string& path);

// Runs one invocation. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace segrobust::cli

#endif  // SEGROBUST_TOOLS_CLI_H_
