#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/multi2d.hpp"
#include "biharm/multi3d.hpp"
#include "biharm/single3d.hpp"

namespace biharm::app {

void write_measurements_csv(const MeasurementSet& m, std::ostream& out)
{
    out << "sensor_index,k,re,im\n";
    for (std::size_t l = 0; l < m.sensors.size(); ++l) {
        for (std::size_t j = 0; j < m.frequencies.size(); ++j) {
            const Complex u = m.samples(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
            out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", l, m.frequencies[j], u.real(), u.imag());
        }
    }
}

MeasurementSet read_measurements_csv(std::istream& in, const SensorArray& sensors)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("sensor_index,k,re,im", 0) != 0) {
        throw ConfigError("measurements: expected header 'sensor_index,k,re,im'");
    }
    std::map<std::pair<std::size_t, double>, Complex> rows;
    std::map<double, int> ks;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") {
            continue;
        }
        std::istringstream is(line);
        long long l = 0;
        double k = 0.0;
        double re = 0.0;
        double im = 0.0;
        char c1 = 0;
        char c2 = 0;
        char c3 = 0;
        if (!(is >> l >> c1 >> k >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' || c3 != ',') {
            throw ConfigError(fmt::format("measurements: line {} is not 'sensor_index,k,re,im'", lineno));
        }
        if (l < 0 || static_cast<std::size_t>(l) >= sensors.size()) {
            throw ConfigError(fmt::format("measurements: line {} names sensor {} but only {} are configured",
                                          lineno, l, sensors.size()));
        }
        if (!rows.emplace(std::make_pair(static_cast<std::size_t>(l), k), Complex(re, im)).second) {
            throw ConfigError(fmt::format("measurements: line {} repeats sensor {} at k = {}", lineno, l, k));
        }
        ks[k] += 1;
    }
    std::vector<double> grid;
    for (const auto& [k, n] : ks) {
        if (static_cast<std::size_t>(n) != sensors.size()) {
            throw ConfigError(fmt::format("measurements: k = {} has {} of {} sensors", k, n, sensors.size()));
        }
        grid.push_back(k);
    }
    MeasurementSet m{sensors, FrequencyGrid(grid),
                     Eigen::MatrixXcd(static_cast<Eigen::Index>(sensors.size()), static_cast<Eigen::Index>(grid.size())),
                     0.0, 0};
    for (std::size_t l = 0; l < sensors.size(); ++l) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            m.samples(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) = rows.at({l, grid[j]});
        }
    }
    return m;
}

MeasurementSet acquire_measurements(const ExperimentConfig& config)
{
    const auto sensors = make_sensors(config);
    if (config.measurements.empty()) {
        return synthesize_measurements(make_sources(config), sensors, make_frequencies(config),
                                       config.noise_level, config.seed);
    }
    std::ifstream in(config.measurements);
    if (!in) {
        throw ConfigError(fmt::format("measurements: cannot open '{}'", config.measurements));
    }
    auto m = read_measurements_csv(in, sensors);
    // the file's grid must be the configured one
    const auto expected = make_frequencies(config);
    bool same = expected.size() == m.frequencies.size();
    for (std::size_t j = 0; same && j < expected.size(); ++j) {
        same = std::fabs(expected[j] - m.frequencies[j]) <= 1e-9 * expected[j];
    }
    if (!same) {
        throw ConfigError("measurements: wavenumbers in the file do not match the [frequency] section");
    }
    m.frequencies = expected;
    m.noise_level = config.noise_level;
    m.rng_seed = config.seed;
    return m;
}

Outcome run_inversion(const ExperimentConfig& config, const MeasurementSet& m)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    const auto grid = make_grid(config);
    // grid-free prony3d never fills it
    sampling::IndicatorField field{
        grid.value_or(sampling::SamplingGrid(config.dimension, Point::Zero(), Point::Ones(), 1.0)), {}};
    switch (config.algorithm) {
    case Algorithm::Single3d: {
        const auto est = single3d::run_algorithm1(m, *grid, {}, &field);
        out.report.estimated_count = 1;
        out.report.positions = {est.position};
        out.report.strengths = {est.strength};
        out.report.warnings = est.warnings;
        out.field = std::move(field);
        break;
    }
    case Algorithm::Multi2dReal:
    case Algorithm::Multi2dComplex: {
        const auto kind = config.algorithm == Algorithm::Multi2dReal ? multi2d::IndicatorKind::RealStrengths
                                                                     : multi2d::IndicatorKind::ComplexStrengths;
        out.report = multi2d::run_algorithm2(m, *grid, kind, config.peaks, &field);
        out.field = std::move(field);
        break;
    }
    case Algorithm::Multi3d:
        out.report = multi3d::run_algorithm3(m, *grid, config.peaks, &field);
        out.field = std::move(field);
        break;
    case Algorithm::Prony3d: {
        prony::FiniteFreqOptions opt;
        opt.M_bound = config.prony.m_bound;
        opt.nodes = prony::NodeOptions::for_noise(config.noise_level);
        if (config.prony.rank_tol) {
            opt.nodes.rank_tol = *config.prony.rank_tol;
        }
        opt.nodes.polish = config.prony.polish;
        opt.grid = grid;
        opt.peaks = config.peaks;
        auto r = prony::run_finite_freq_3d(m, opt, grid ? &field : nullptr);
        if (r.located) {
            out.report = *r.located;
            out.field = std::move(field);
        } else {
            out.report.estimated_count = r.estimated_count;
        }
        for (const auto& w : r.warnings) {
            if (std::find(out.report.warnings.begin(), out.report.warnings.end(), w) == out.report.warnings.end()) {
                out.report.warnings.push_back(w);
            }
        }
        out.finite_freq = std::move(r);
        break;
    }
    }
    if (!config.sources.empty() && out.report.positions.size() == out.report.strengths.size() &&
        !out.report.positions.empty()) {
        attach_errors(out.report, make_sources(config));
    }
    out.report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

namespace {

std::string coords(const Point& p, Dimension dim)
{
    return dim == Dimension::Two ? fmt::format("{:.6f} {:.6f}", p.x(), p.y())
                                 : fmt::format("{:.6f} {:.6f} {:.6f}", p.x(), p.y(), p.z());
}

std::string cplx(Complex z) { return fmt::format("{:.6f} {:.6f}", z.real(), z.imag()); }

std::string cplx_pretty(Complex z) { return fmt::format("{:.4f}{:+.4f}i", z.real(), z.imag()); }

}  // namespace

std::string format_report(const ExperimentConfig& config, const Outcome& outcome)
{
    const auto& r = outcome.report;
    const Dimension dim = config.dimension;
    std::string s = "# biharm reconstruction report\n\n[config]\n";
    s += write_config(config);
    s += "\n[result]\n";
    s += fmt::format("algorithm = {}\n", to_string(config.algorithm));
    s += fmt::format("estimated_count = {}\n", r.estimated_count);
    for (std::size_t i = 0; i < r.positions.size(); ++i) {
        s += fmt::format("estimate.{}.position = {}\n", i + 1, coords(r.positions[i], dim));
        s += fmt::format("estimate.{}.strength = {}\n", i + 1, cplx(r.strengths[i]));
        if (r.errors) {
            const auto& e = (*r.errors)[i];
            s += fmt::format("estimate.{}.matched_source = {}\n", i + 1, e.matched_truth + 1);
            s += fmt::format("estimate.{}.position_error = {:.6f}\n", i + 1, e.position_error);
            s += fmt::format("estimate.{}.strength_error = {:.6f}\n", i + 1, e.strength_error);
        }
    }
    if (outcome.finite_freq) {
        const auto& ff = *outcome.finite_freq;
        if (ff.best_sensor) {
            s += fmt::format("best_sensor = {}\n", *ff.best_sensor);
        }
        for (std::size_t i = 0; i < ff.strengths.size(); ++i) {
            s += fmt::format("best_sensor.strength.{} = {}\n", i + 1, cplx(ff.strengths[i]));
        }
        for (const auto& sn : ff.per_sensor) {
            if (!sn.failure.empty()) {
                s += fmt::format("sensor.{}.failure = {}\n", sn.sensor, sn.failure);
                continue;
            }
            std::string d;
            for (double v : sn.nodes.distances) {
                d += fmt::format("{}{:.9f}", d.empty() ? "" : " ", v);
            }
            s += fmt::format("sensor.{}.distances = {}\n", sn.sensor, d);
        }
    }
    for (std::size_t i = 0; i < r.warnings.size(); ++i) {
        s += fmt::format("warning.{} = {}\n", i + 1, r.warnings[i]);
    }

    s += "\n[table]\n";
    const bool truth = r.errors.has_value();
    if (truth) {
        s += fmt::format("{:>3}  {:<30} {:<30} {:<22} {:<22} {:>8} {:>8}\n", "#", "true position",
                         "reconstruction", "true strength", "reconstruction", "|dz|", "|dtau|");
    } else {
        s += fmt::format("{:>3}  {:<30} {:<22}\n", "#", "reconstruction", "strength");
    }
    if (r.positions.empty() && outcome.finite_freq && outcome.finite_freq->best_sensor) {
        // grid-free: distances and strengths at the best sensor
        const auto& ff = *outcome.finite_freq;
        const auto& sn = ff.per_sensor[*ff.best_sensor];
        const Point x = make_sensors(config)[sn.sensor];
        s += fmt::format("sensor {}\n{:>3}  {:>14} {:>14} {:<22} {:<22}\n", sn.sensor, "#", "true distance",
                         "distance", "true strength", "reconstruction");
        for (std::size_t i = 0; i < sn.nodes.size(); ++i) {
            const double d = sn.nodes.distances[i];
            std::string td = "-";
            std::string ts = "-";
            if (!config.sources.empty()) {
                const auto it = std::min_element(config.sources.begin(), config.sources.end(), [&](const auto& a, const auto& b) {
                    return std::fabs(distance(a.position, x) - d) < std::fabs(distance(b.position, x) - d);
                });
                td = fmt::format("{:.9f}", distance(it->position, x));
                ts = cplx_pretty(it->strength);
            }
            s += fmt::format("{:>3}  {:>14} {:>14.9f} {:<22} {:<22}\n", i + 1, td, d, ts,
                             i < sn.strengths.size() ? cplx_pretty(sn.strengths[i]) : "-");
        }
        return s;
    }
    for (std::size_t i = 0; i < r.positions.size(); ++i) {
        auto pos = [&](const Point& p) {
            return dim == Dimension::Two ? fmt::format("({:.3f}, {:.3f})", p.x(), p.y())
                                         : fmt::format("({:.3f}, {:.3f}, {:.3f})", p.x(), p.y(), p.z());
        };
        if (truth) {
            const auto& e = (*r.errors)[i];
            const auto& t = config.sources[e.matched_truth];
            s += fmt::format("{:>3}  {:<30} {:<30} {:<22} {:<22} {:>8.4f} {:>8.4f}\n", i + 1, pos(t.position),
                             pos(r.positions[i]), cplx_pretty(t.strength), cplx_pretty(r.strengths[i]),
                             e.position_error, e.strength_error);
        } else {
            s += fmt::format("{:>3}  {:<30} {:<22}\n", i + 1, pos(r.positions[i]), cplx_pretty(r.strengths[i]));
        }
    }
    return s;
}

Artifacts write_artifacts(const std::string& dir, const ExperimentConfig& config, const Outcome& outcome)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    Artifacts a;
    auto open = [](const fs::path& p) {
        std::ofstream f(p, std::ios::binary);
        if (!f) {
            throw Error(fmt::format("cannot write '{}'", p.string()));
        }
        return f;
    };
    const fs::path base = fs::path(dir) / config.name;
    a.report_path = base.string() + ".report.txt";
    {
        auto f = open(a.report_path);
        f << format_report(config, outcome);
    }
    if (outcome.field) {
        a.field_path = base.string() + ".field.csv";
        auto f = open(a.field_path);
        sampling::write_csv(*outcome.field, f);
    }
    if (outcome.finite_freq) {
        a.nodes_path = base.string() + ".nodes.csv";
        auto f = open(a.nodes_path);
        prony::write_nodes_csv(outcome.finite_freq->per_sensor, f);
    }
    return a;
}

}  // namespace biharm::app
