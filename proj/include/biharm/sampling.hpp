#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "biharm/types.hpp"

namespace biharm::sampling {

/// Axis-aligned rectangular grid of sampling points with uniform spacing.
class SamplingGrid {
public:
    SamplingGrid(Dimension dim, const Point& lower, const Point& upper, double spacing);

    Dimension dimension() const { return dim_; }
    const Point& lower() const { return lower_; }
    const Point& upper() const { return upper_; }
    double spacing() const { return spacing_; }

    /// Nodes per axis (1 for the unused third axis in 2D).
    const std::array<std::size_t, 3>& counts() const { return counts_; }
    std::size_t size() const { return counts_[0] * counts_[1] * counts_[2]; }

    /// Row-major node order: x slowest, then y, then z.
    Point node(std::size_t index) const;
    std::array<std::size_t, 3> unflatten(std::size_t index) const;
    std::size_t flatten(const std::array<std::size_t, 3>& idx) const;

private:
    Dimension dim_;
    Point lower_;
    Point upper_;
    double spacing_;
    std::array<std::size_t, 3> counts_{1, 1, 1};
};

struct IndicatorField {
    SamplingGrid grid;
    std::vector<double> values;  // grid order, finite and nonnegative
};

struct PeakSet {
    std::vector<Point> positions;
    std::vector<double> heights;  // descending

    std::size_t size() const { return positions.size(); }
};

struct PeakParams {
    double rel_threshold = 0.5;
    /// Nonpositive means "3 x grid spacing".
    double min_separation = 0.0;
};

/// values[i] = indicator(node_i), evaluated in parallel. Throws
/// EvaluationError naming the node when the indicator is not finite or
/// negative.
IndicatorField evaluate_field(const SamplingGrid& grid,
                              const std::function<double(const Point&)>& indicator);

/// Strict local maxima over the axis neighbourhood with value at least
/// rel_threshold * max, greedily thinned to min_separation in descending
/// height order.
PeakSet extract_peaks(const IndicatorField& field, double rel_threshold, double min_separation);
PeakSet extract_peaks(const IndicatorField& field, const PeakParams& params);

/// Number of strict local maxima, regardless of height.
std::size_t count_local_maxima(const IndicatorField& field);

/// CSV with header "x,y[,z],value", one row per node in grid order.
void write_csv(const IndicatorField& field, std::ostream& out);

}  // namespace biharm::sampling
