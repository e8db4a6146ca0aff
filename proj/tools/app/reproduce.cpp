#include "reproduce.hpp"

#include <cstdlib>

#include <fmt/format.h>

#include "biharm/errors.hpp"

#ifndef BIHARM_DEFAULT_CONFIG_DIR
#define BIHARM_DEFAULT_CONFIG_DIR "configs"
#endif

namespace biharm::app {

std::string config_dir()
{
    if (const char* env = std::getenv(kConfigDirEnvVar); env != nullptr && *env != '\0') {
        return env;
    }
    return BIHARM_DEFAULT_CONFIG_DIR;
}

ExperimentConfig bundled_config(const std::string& stem, const std::vector<std::string>& overrides)
{
    return load_config(config_dir() + "/" + stem + ".cfg", overrides);
}

std::vector<ExperimentConfig> reproduce_plan(const std::string& target, const std::vector<std::string>& overrides)
{
    auto with = [&](std::vector<std::string> extra) {
        std::vector<std::string> all = overrides;
        all.insert(all.end(), extra.begin(), extra.end());
        return all;
    };
    if (target == "table1") {
        return {bundled_config("table1", with({"noise_level=0", "name=table1_noise0"})),
                bundled_config("table1", with({"noise_level=0.05", "name=table1_noise5"})),
                bundled_config("table1", with({"noise_level=0.1", "name=table1_noise10"}))};
    }
    if (target == "figures2d") {
        return {bundled_config("fig2", with({"name=fig2_real"})),
                bundled_config("fig2", with({"algorithm=multi2d_complex", "name=fig2_complex"})),
                bundled_config("fig2_single", overrides)};
    }
    if (target == "table2" || target == "table3") {
        return {bundled_config(target, overrides)};
    }
    if (target == "prony-demo") {
        return {bundled_config("prony_demo", overrides)};
    }
    throw ConfigError(fmt::format("reproduce: unknown target '{}' (table1, figures2d, table2, table3, prony-demo)",
                                  target));
}

}  // namespace biharm::app
