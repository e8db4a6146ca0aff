#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace biharm::app {

/// Environment variable pointing at the bundled configs.
inline constexpr const char* kConfigDirEnvVar = "BIHARM_CONFIG_DIR";

/// BIHARM_CONFIG_DIR if set, else the configs/ directory of the source tree.
std::string config_dir();

/// Bundled config by stem, e.g. "table1" -> <config_dir>/table1.cfg.
ExperimentConfig bundled_config(const std::string& stem, const std::vector<std::string>& overrides = {});

inline const std::vector<std::string> kReproduceTargets{"table1", "figures2d", "table2", "table3", "prony-demo"};

/// Configs run by `reproduce <target>`:
///   table1      table1.cfg at noise 0, 0.05, 0.1
///   figures2d   fig2.cfg with both indicator kinds, fig2_single.cfg
///   table2, table3, prony-demo   the matching config as is
/// `overrides` apply to every run before the per-run settings.
std::vector<ExperimentConfig> reproduce_plan(const std::string& target,
                                             const std::vector<std::string>& overrides = {});

}  // namespace biharm::app
