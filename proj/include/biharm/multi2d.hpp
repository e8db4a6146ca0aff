#pragma once

#include <cstddef>
#include <span>

#include "biharm/model.hpp"
#include "biharm/report.hpp"
#include "biharm/sampling.hpp"

namespace biharm::multi2d {

enum class IndicatorKind {
    /// |sum_x int 8k^3 Im(u^s) J0(k|x-z|) dk|, for real strengths.
    RealStrengths,
    /// |sum_x int -8i k^3 u^s J0(k|x-z|) dk|, for complex strengths.
    ComplexStrengths,
};

/// Band-limited indicator at one sampling point, summed directly over the
/// measured frequencies (trapezoid rule).
double indicator_2d(const Point& z, const MeasurementSet& measurements, IndicatorKind kind);

/// Same indicator over a whole grid, through one tabulated radial profile per
/// sensor. Agrees with indicator_2d to interpolation accuracy.
sampling::IndicatorField evaluate_indicator_2d(const MeasurementSet& measurements,
                                               const sampling::SamplingGrid& grid,
                                               IndicatorKind kind);

/// tau ~ int -8i k^3 u^s J0(k r*) dk / int (H0(k r*) + (2i/pi) K0(k r*)) k J0(k r*) dk,
/// r* = |x - z_star| for the chosen sensor x.
Complex recover_strength_2d(const Point& z_star, std::size_t sensor_index,
                            const MeasurementSet& measurements);

struct SensorChoice {
    std::size_t index = 0;
    /// min over the other detected points z of ||x - z_star| - |x - z||;
    /// infinite when z_star is the only detection.
    double separation = 0.0;
};

/// Sensor whose distance to z_star is best separated from its distances to
/// the other detections. Also used by the 3D driver.
SensorChoice select_sensor(const Point& z_star, std::span<const Point> detected,
                           const SensorArray& sensors);

/// Indicator on the grid, peak extraction, then per peak the best-separated
/// sensor and the strength ratio. Requires 2D data with no three sensors
/// collinear.
ReconstructionReport run_algorithm2(const MeasurementSet& measurements,
                                    const sampling::SamplingGrid& grid, IndicatorKind kind,
                                    const sampling::PeakParams& peaks = {},
                                    sampling::IndicatorField* field_out = nullptr);

}  // namespace biharm::multi2d
