#pragma once

#include <cstddef>

#include "biharm/model.hpp"
#include "biharm/report.hpp"
#include "biharm/sampling.hpp"

namespace biharm::multi3d {

/// |sum_x int 8k^2 u^s(x,k) e^{-ik|x-z|} dk| over the measured band.
double indicator_3d(const Point& z, const MeasurementSet& measurements);

/// Grid evaluation through per-sensor radial profiles.
sampling::IndicatorField evaluate_indicator_3d(const MeasurementSet& measurements,
                                               const sampling::SamplingGrid& grid);

/// tau = r* / (k+ - k-) * int 8 pi k^2 u^s(x,k) e^{-ik r*} dk, r* = |x - z_star|.
Complex recover_strength_3d(const Point& z_star, std::size_t sensor_index,
                            const MeasurementSet& measurements);

/// Grid indicator, peaks, best-separated sensor per peak, strengths.
/// Requires 3D data with no four sensors coplanar.
ReconstructionReport run_algorithm3(const MeasurementSet& measurements,
                                    const sampling::SamplingGrid& grid,
                                    const sampling::PeakParams& peaks = {},
                                    sampling::IndicatorField* field_out = nullptr);

}  // namespace biharm::multi3d
