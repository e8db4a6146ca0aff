// biharm: synthesize, invert, verify and reproduce point-source experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <filesystem>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "app/config.hpp"
#include "app/experiment.hpp"
#include "app/reproduce.hpp"
#include "app/verify.hpp"
#include "biharm/errors.hpp"
#include "biharm/parallel.hpp"
#include "biharm/specfun.hpp"

using namespace biharm;

namespace {

struct Common {
    std::string out_dir = ".";
    std::vector<std::string> sets;
    std::optional<double> noise;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> name;
    std::optional<std::string> measurements;

    void add_to(CLI::App* cmd, bool with_measurements)
    {
        cmd->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
        cmd->add_option("--set", sets, "Override a config field, e.g. --set grid.spacing=0.05");
        cmd->add_option("--noise", noise, "Override noise_level");
        cmd->add_option("--seed", seed, "Override seed");
        cmd->add_option("--name", name, "Override name (output file stem)");
        if (with_measurements) {
            cmd->add_option("--measurements", measurements, "Invert this CSV instead of synthesizing");
        }
    }

    std::vector<std::string> overrides() const
    {
        std::vector<std::string> o = sets;
        if (noise) o.push_back(fmt::format("noise_level={}", *noise));
        if (seed) o.push_back(fmt::format("seed={}", *seed));
        if (name) o.push_back("name=" + *name);
        if (measurements) o.push_back("measurements=" + *measurements);
        return o;
    }
};

void run_and_write(const app::ExperimentConfig& config, const std::string& out_dir)
{
    const auto m = app::acquire_measurements(config);
    const auto outcome = app::run_inversion(config, m);
    const auto files = app::write_artifacts(out_dir, config, outcome);
    const auto report = app::format_report(config, outcome);
    std::cout << report.substr(report.find("[result]"));
    std::cout << fmt::format("runtime_seconds = {:.3f}\n", outcome.report.runtime_seconds);
    std::cout << "wrote " << files.report_path;
    if (!files.field_path.empty()) std::cout << ", " << files.field_path;
    if (!files.nodes_path.empty()) std::cout << ", " << files.nodes_path;
    std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App cli{"Biharmonic point-source synthesis and inversion"};
    cli.require_subcommand(1);
    unsigned threads = 0;
    cli.add_option("--threads", threads, fmt::format("Worker threads (same as {})", kThreadsEnvVar));

    auto* synth = cli.add_subcommand("synthesize", "Write <name>.measurements.csv for a config");
    std::string synth_cfg;
    Common synth_opts;
    synth->add_option("config", synth_cfg, "Config file")->required();
    synth_opts.add_to(synth, false);

    auto* invert = cli.add_subcommand("invert", "Run the configured inversion; write report and field");
    std::string invert_cfg;
    Common invert_opts;
    invert->add_option("config", invert_cfg, "Config file")->required();
    invert_opts.add_to(invert, true);

    auto* verify = cli.add_subcommand("verify", "Run the numerical property checks");
    bool fault_k0 = false;
    verify->add_flag("--fault-k0", fault_k0, "Corrupt K0 first (self-test of the checks)");

    auto* repro = cli.add_subcommand("reproduce", "Run a bundled experiment");
    std::string target;
    Common repro_opts;
    repro->add_option("target", target, "table1 | figures2d | table2 | table3 | prony-demo")
        ->required()
        ->check(CLI::IsMember(app::kReproduceTargets));
    repro_opts.add_to(repro, false);

    CLI11_PARSE(cli, argc, argv);
    if (threads > 0) {
        setenv(kThreadsEnvVar, std::to_string(threads).c_str(), 1);
    }

    try {
        if (*synth) {
            const auto config = app::load_config(synth_cfg, synth_opts.overrides());
            const auto m = app::acquire_measurements(config);
            std::filesystem::create_directories(synth_opts.out_dir);
            const auto path = (std::filesystem::path(synth_opts.out_dir) / (config.name + ".measurements.csv")).string();
            std::ofstream f(path, std::ios::binary);
            if (!f) throw Error("cannot write '" + path + "'");
            app::write_measurements_csv(m, f);
            std::cout << fmt::format("wrote {} ({} sensors x {} wavenumbers)\n", path, m.sensors.size(),
                                     m.frequencies.size());
        } else if (*invert) {
            run_and_write(app::load_config(invert_cfg, invert_opts.overrides()), invert_opts.out_dir);
        } else if (*verify) {
            specfun::testing::set_k0_fault(fault_k0);
            const auto results = app::run_verify();
            std::cout << app::format_verify(results);
            for (const auto& r : results) {
                if (!r.passed) return 1;
            }
        } else if (*repro) {
            int failed = 0;
            for (const auto& config : app::reproduce_plan(target, repro_opts.overrides())) {
                std::cout << fmt::format("== {} ==\n", config.name) << std::flush;
                try {
                    run_and_write(config, repro_opts.out_dir);
                } catch (const ConfigError&) {
                    throw;
                } catch (const std::exception& e) {
                    std::cout << "failed: " << e.what() << "\n";
                    ++failed;
                }
            }
            if (failed > 0) {
                std::cerr << fmt::format("{} run(s) failed\n", failed);
                return 1;
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
