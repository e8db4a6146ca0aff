#include "biharm/multi3d.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/geometry.hpp"
#include "biharm/multi2d.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/radial.hpp"

namespace biharm::multi3d {

namespace {

void require_3d(const MeasurementSet& m, const char* who)
{
    if (m.dimension() != Dimension::Three) {
        throw PreconditionError(fmt::format("{}: needs 3D measurements", who));
    }
}

Complex kernel_sum(const MeasurementSet& m, std::size_t sensor, std::span<const double> weights,
                   double r)
{
    const auto& k = m.frequencies.values();
    const auto l = static_cast<Eigen::Index>(sensor);
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < k.size(); ++j) {
        s += weights[j] * 8.0 * k[j] * k[j] * m.samples(l, static_cast<Eigen::Index>(j)) *
             std::polar(1.0, -k[j] * r);
    }
    return s;
}

}  // namespace

double indicator_3d(const Point& z, const MeasurementSet& m)
{
    require_3d(m, "indicator_3d");
    const auto& k = m.frequencies.values();
    std::vector<Complex> integrand(k.size());
    Complex total{0.0, 0.0};
    for (std::size_t l = 0; l < m.sensors.size(); ++l) {
        const double r = distance(m.sensors[l], z);
        if (!(r > 0.0)) {
            throw DomainError("indicator_3d: sampling point coincides with a sensor");
        }
        for (std::size_t j = 0; j < k.size(); ++j) {
            integrand[j] = 8.0 * k[j] * k[j] *
                           m.samples(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j)) *
                           std::polar(1.0, -k[j] * r);
        }
        total += quadrature::integrate_band({k, integrand});
    }
    return std::abs(total);
}

sampling::IndicatorField evaluate_indicator_3d(const MeasurementSet& m,
                                               const sampling::SamplingGrid& grid)
{
    require_3d(m, "evaluate_indicator_3d");
    const auto weights = quadrature::trapezoid_weights(m.frequencies.values());
    const double step = radial::default_step(m.frequencies.back());
    std::vector<radial::RadialProfile> profiles;
    profiles.reserve(m.sensors.size());
    for (std::size_t l = 0; l < m.sensors.size(); ++l) {
        const auto [lo, hi] = radial::distance_range(m.sensors[l], grid);
        profiles.emplace_back(lo, hi, step,
                              [&](double r) { return kernel_sum(m, l, weights, r); });
    }
    return sampling::evaluate_field(grid, [&](const Point& z) {
        Complex total{0.0, 0.0};
        for (std::size_t l = 0; l < profiles.size(); ++l) {
            const double r = distance(m.sensors[l], z);
            if (!(r > 0.0)) {
                throw DomainError("indicator_3d: sampling point coincides with a sensor");
            }
            total += profiles[l](r);
        }
        return std::abs(total);
    });
}

Complex recover_strength_3d(const Point& z_star, std::size_t sensor_index, const MeasurementSet& m)
{
    require_3d(m, "recover_strength_3d");
    if (sensor_index >= m.sensors.size()) {
        throw DomainError("recover_strength_3d: sensor index out of range");
    }
    const double band = m.frequencies.back() - m.frequencies.front();
    if (!(band > 0.0)) {
        throw DomainError("recover_strength_3d: degenerate band (k+ = k-)");
    }
    const double r = distance(m.sensors[sensor_index], z_star);
    if (!(r > 0.0)) {
        throw DomainError("recover_strength_3d: point coincides with the sensor");
    }
    const auto weights = quadrature::trapezoid_weights(m.frequencies.values());
    return r / band * std::numbers::pi * kernel_sum(m, sensor_index, weights, r);
}

ReconstructionReport run_algorithm3(const MeasurementSet& m, const sampling::SamplingGrid& grid,
                                    const sampling::PeakParams& peaks,
                                    sampling::IndicatorField* field_out)
{
    const auto t0 = std::chrono::steady_clock::now();
    require_3d(m, "algorithm 3");
    if (grid.dimension() != Dimension::Three) {
        throw PreconditionError("algorithm 3 needs a 3D sampling grid");
    }
    if (!geometry::no_four_coplanar(m.sensors)) {
        throw PreconditionError("algorithm 3: four of the sensors are coplanar");
    }
    auto field = evaluate_indicator_3d(m, grid);
    const auto found = sampling::extract_peaks(field, peaks);

    ReconstructionReport report;
    report.estimated_count = found.size();
    report.positions = found.positions;
    for (const auto& z : found.positions) {
        const auto choice = multi2d::select_sensor(z, found.positions, m.sensors);
        if (choice.separation < grid.spacing()) {
            report.warnings.push_back(fmt::format(
                "peak ({:.4g}, {:.4g}, {:.4g}): best sensor separation {:.3g} is below the grid "
                "spacing",
                z.x(), z.y(), z.z(), choice.separation));
        }
        report.strengths.push_back(recover_strength_3d(z, choice.index, m));
    }
    if (field_out) {
        *field_out = std::move(field);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace biharm::multi3d
