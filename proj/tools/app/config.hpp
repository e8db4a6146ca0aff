#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "biharm/sampling.hpp"
#include "biharm/types.hpp"

namespace biharm::app {

enum class Algorithm { Single3d, Multi2dReal, Multi2dComplex, Multi3d, Prony3d };

std::string to_string(Algorithm a);

struct SensorLayout {
    enum class Kind { Circle, Sphere, Explicit };
    Kind kind = Kind::Explicit;
    int count = 0;
    Point center = Point::Zero();
    double radius = 0.0;
    std::vector<Point> points;  // explicit layout only
};

struct FrequencySpec {
    enum class Kind { Band, Harmonic, Triple };
    Kind kind = Kind::Band;
    double k_minus = 0.0;
    double k_plus = 0.0;
    double step = 0.0;
    double k0 = 0.0;
    int count = 0;  // J for harmonic grids
};

struct GridSpec {
    Point lower = Point::Zero();
    Point upper = Point::Zero();
    double spacing = 0.0;
};

struct PronySpec {
    int m_bound = 1;
    /// Unset: scaled from noise_level (NodeOptions::for_noise).
    std::optional<double> rank_tol;
    bool polish = true;
};

/// Everything one experiment needs. Built by parse_config, which checks the
/// cross-field invariants (dimension, algorithm vs frequency kind, ...).
struct ExperimentConfig {
    std::string name = "experiment";
    Dimension dimension = Dimension::Three;
    Algorithm algorithm = Algorithm::Multi3d;
    std::vector<PointSource> sources;
    SensorLayout sensors;
    FrequencySpec frequency;
    double noise_level = 0.0;
    std::uint64_t seed = 0;
    std::optional<GridSpec> grid;
    sampling::PeakParams peaks;
    PronySpec prony;
    /// CSV "sensor_index,k,re,im" to invert instead of synthesizing.
    std::string measurements;
};

/// Reads the INI text. `overrides` are "section.key=value" (or "key=value"
/// for top-level keys) applied before validation. Throws ConfigError naming
/// the offending field.
ExperimentConfig parse_config(std::istream& in, const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Canonical INI form of a resolved config; parse_config(write_config(c)) == c.
std::string write_config(const ExperimentConfig& config);

SourceConfig make_sources(const ExperimentConfig& config);
SensorArray make_sensors(const ExperimentConfig& config);
FrequencyGrid make_frequencies(const ExperimentConfig& config);
std::optional<sampling::SamplingGrid> make_grid(const ExperimentConfig& config);

}  // namespace biharm::app
