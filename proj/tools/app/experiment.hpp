#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "biharm/model.hpp"
#include "biharm/prony.hpp"
#include "biharm/report.hpp"
#include "biharm/sampling.hpp"
#include "config.hpp"

namespace biharm::app {

/// CSV "sensor_index,k,re,im", one row per (sensor, frequency), values at full precision.
void write_measurements_csv(const MeasurementSet& m, std::ostream& out);

/// Reads a measurement CSV for the given sensors. Every (sensor, k) pair must
/// appear exactly once; the k values form the frequency grid.
MeasurementSet read_measurements_csv(std::istream& in, const SensorArray& sensors);

/// Synthesized from the sources, or read from config.measurements.
MeasurementSet acquire_measurements(const ExperimentConfig& config);

struct Outcome {
    ReconstructionReport report;
    std::optional<sampling::IndicatorField> field;
    /// prony3d only.
    std::optional<prony::FiniteFreqResult> finite_freq;
};

/// Dispatches to the configured inversion. Errors from the library
/// (preconditions, inversion failures) propagate unchanged.
Outcome run_inversion(const ExperimentConfig& config, const MeasurementSet& measurements);

/// Structured text report: [config] echo, [result] fields, then a table.
/// Deterministic: runtime is not part of it.
std::string format_report(const ExperimentConfig& config, const Outcome& outcome);

struct Artifacts {
    std::string report_path;
    std::string field_path;  // empty when no field was produced
    std::string nodes_path;  // prony3d only
};

/// Writes <name>.report.txt, <name>.field.csv and (prony3d) <name>.nodes.csv into dir.
Artifacts write_artifacts(const std::string& dir, const ExperimentConfig& config, const Outcome& outcome);

}  // namespace biharm::app
