#include "biharm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/parallel.hpp"

namespace biharm::sampling {

SamplingGrid::SamplingGrid(Dimension dim, const Point& lower, const Point& upper, double spacing)
    : dim_(dim), lower_(lower), upper_(upper), spacing_(spacing)
{
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw DomainError("sampling grid: spacing must be positive");
    }
    const int axes = to_int(dim);
    if (dim == Dimension::Two) {
        lower_.z() = 0.0;
        upper_.z() = 0.0;
    }
    for (int a = 0; a < axes; ++a) {
        const double extent = upper_[a] - lower_[a];
        if (!(extent > 0.0)) {
            throw DomainError("sampling grid: upper must exceed lower on every axis");
        }
        const double steps = extent / spacing;
        const double rounded = std::round(steps);
        if (std::fabs(steps - rounded) > 1e-6 * std::max(1.0, steps)) {
            throw DomainError(fmt::format(
                "sampling grid: spacing {} does not divide extent {} on axis {}", spacing, extent, a));
        }
        counts_[static_cast<std::size_t>(a)] = static_cast<std::size_t>(rounded) + 1;
    }
}

std::array<std::size_t, 3> SamplingGrid::unflatten(std::size_t index) const
{
    std::array<std::size_t, 3> idx{};
    idx[2] = index % counts_[2];
    index /= counts_[2];
    idx[1] = index % counts_[1];
    idx[0] = index / counts_[1];
    return idx;
}

std::size_t SamplingGrid::flatten(const std::array<std::size_t, 3>& idx) const
{
    return (idx[0] * counts_[1] + idx[1]) * counts_[2] + idx[2];
}

Point SamplingGrid::node(std::size_t index) const
{
    const auto idx = unflatten(index);
    Point p = lower_;
    for (int a = 0; a < to_int(dim_); ++a) {
        p[a] += static_cast<double>(idx[static_cast<std::size_t>(a)]) * spacing_;
    }
    return p;
}

IndicatorField evaluate_field(const SamplingGrid& grid,
                              const std::function<double(const Point&)>& indicator)
{
    std::vector<double> values(grid.size(), 0.0);
    parallel_for(grid.size(), [&](std::size_t i) {
        const Point z = grid.node(i);
        const double v = indicator(z);
        if (!std::isfinite(v) || v < 0.0) {
            throw EvaluationError(fmt::format("indicator value {} at node {} ({}, {}, {})", v, i,
                                              z.x(), z.y(), z.z()));
        }
        values[i] = v;
    });
    return IndicatorField{grid, std::move(values)};
}

namespace {

bool is_strict_local_max(const IndicatorField& field, std::size_t i)
{
    const auto& grid = field.grid;
    const auto idx = grid.unflatten(i);
    const double v = field.values[i];
    for (std::size_t a = 0; a < 3; ++a) {
        for (int dir : {-1, 1}) {
            if ((dir < 0 && idx[a] == 0) || (dir > 0 && idx[a] + 1 >= grid.counts()[a])) {
                continue;
            }
            auto nb = idx;
            nb[a] = dir < 0 ? nb[a] - 1 : nb[a] + 1;
            if (!(v > field.values[grid.flatten(nb)])) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

std::size_t count_local_maxima(const IndicatorField& field)
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        if (is_strict_local_max(field, i)) {
            ++n;
        }
    }
    return n;
}

PeakSet extract_peaks(const IndicatorField& field, double rel_threshold, double min_separation)
{
    PeakSet peaks;
    if (field.values.empty()) {
        return peaks;
    }
    const double vmax = *std::max_element(field.values.begin(), field.values.end());
    if (!(vmax > 0.0)) {
        return peaks;
    }
    const double cutoff = rel_threshold * vmax;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        if (field.values[i] >= cutoff && is_strict_local_max(field, i)) {
            candidates.push_back(i);
        }
    }
    // ties broken by node index so the result never depends on sort stability
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        if (field.values[a] != field.values[b]) {
            return field.values[a] > field.values[b];
        }
        return a < b;
    });
    for (std::size_t i : candidates) {
        const Point p = field.grid.node(i);
        const bool separated =
            std::all_of(peaks.positions.begin(), peaks.positions.end(),
                        [&](const Point& q) { return distance(p, q) >= min_separation; });
        if (separated) {
            peaks.positions.push_back(p);
            peaks.heights.push_back(field.values[i]);
        }
    }
    return peaks;
}

PeakSet extract_peaks(const IndicatorField& field, const PeakParams& params)
{
    const double sep =
        params.min_separation > 0.0 ? params.min_separation : 3.0 * field.grid.spacing();
    return extract_peaks(field, params.rel_threshold, sep);
}

void write_csv(const IndicatorField& field, std::ostream& out)
{
    const bool three = field.grid.dimension() == Dimension::Three;
    out << (three ? "x,y,z,value\n" : "x,y,value\n");
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        const Point p = field.grid.node(i);
        if (three) {
            out << fmt::format("{:.10g},{:.10g},{:.10g},{:.12g}\n", p.x(), p.y(), p.z(),
                               field.values[i]);
        } else {
            out << fmt::format("{:.10g},{:.10g},{:.12g}\n", p.x(), p.y(), field.values[i]);
        }
    }
}

}  // namespace biharm::sampling
