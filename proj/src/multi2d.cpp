#include "biharm/multi2d.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/geometry.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/radial.hpp"
#include "biharm/specfun.hpp"

namespace biharm::multi2d {

namespace {

void require_2d(const MeasurementSet& m, const char* who)
{
    if (m.dimension() != Dimension::Two) {
        throw PreconditionError(fmt::format("{}: needs 2D measurements", who));
    }
}

// Trapezoid weight times the band integrand's data factor, per frequency:
// 8k^3 Im(u) for real strengths, -8i k^3 u otherwise.
std::vector<Complex> weighted_data(const MeasurementSet& m, std::size_t sensor, IndicatorKind kind,
                                   std::span<const double> weights)
{
    const auto& k = m.frequencies.values();
    std::vector<Complex> w(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        const Complex u = m.samples(static_cast<Eigen::Index>(sensor), static_cast<Eigen::Index>(j));
        const double k3 = 8.0 * k[j] * k[j] * k[j];
        w[j] = weights[j] * (kind == IndicatorKind::RealStrengths ? Complex(k3 * u.imag())
                                                                   : Complex(0.0, -k3) * u);
    }
    return w;
}

Complex j0_sum(std::span<const Complex> w, std::span<const double> k, double r)
{
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < k.size(); ++j) {
        s += w[j] * specfun::bessel_j0(k[j] * r);
    }
    return s;
}

}  // namespace

double indicator_2d(const Point& z, const MeasurementSet& m, IndicatorKind kind)
{
    require_2d(m, "indicator_2d");
    const auto& k = m.frequencies.values();
    Complex total{0.0, 0.0};
    std::vector<Complex> integrand(k.size());
    for (std::size_t l = 0; l < m.sensors.size(); ++l) {
        const double r = distance(m.sensors[l], z);
        if (!(r > 0.0)) {
            throw DomainError("indicator_2d: sampling point coincides with a sensor");
        }
        for (std::size_t j = 0; j < k.size(); ++j) {
            const Complex u = m.samples(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(j));
            const double k3 = 8.0 * k[j] * k[j] * k[j];
            const Complex data = kind == IndicatorKind::RealStrengths ? Complex(k3 * u.imag())
                                                                      : Complex(0.0, -k3) * u;
            integrand[j] = data * specfun::bessel_j0(k[j] * r);
        }
        total += quadrature::integrate_band({k, integrand});
    }
    return std::abs(total);
}

sampling::IndicatorField evaluate_indicator_2d(const MeasurementSet& m,
                                               const sampling::SamplingGrid& grid,
                                               IndicatorKind kind)
{
    require_2d(m, "evaluate_indicator_2d");
    const auto& k = m.frequencies.values();
    const auto weights = quadrature::trapezoid_weights(k);
    const double step = radial::default_step(m.frequencies.back());
    std::vector<radial::RadialProfile> profiles;
    profiles.reserve(m.sensors.size());
    for (std::size_t l = 0; l < m.sensors.size(); ++l) {
        const auto w = weighted_data(m, l, kind, weights);
        const auto [lo, hi] = radial::distance_range(m.sensors[l], grid);
        profiles.emplace_back(lo, hi, step, [&](double r) { return j0_sum(w, k, r); });
    }
    return sampling::evaluate_field(grid, [&](const Point& z) {
        Complex total{0.0, 0.0};
        for (std::size_t l = 0; l < profiles.size(); ++l) {
            const double r = distance(m.sensors[l], z);
            if (!(r > 0.0)) {
                throw DomainError("indicator_2d: sampling point coincides with a sensor");
            }
            total += profiles[l](r);
        }
        return std::abs(total);
    });
}

Complex recover_strength_2d(const Point& z_star, std::size_t sensor_index, const MeasurementSet& m)
{
    require_2d(m, "recover_strength_2d");
    if (sensor_index >= m.sensors.size()) {
        throw DomainError("recover_strength_2d: sensor index out of range");
    }
    const double r = distance(m.sensors[sensor_index], z_star);
    if (!(r > 0.0)) {
        throw DomainError("recover_strength_2d: point coincides with the sensor");
    }
    const auto& k = m.frequencies.values();
    std::vector<Complex> num(k.size());
    std::vector<Complex> den(k.size());
    const auto l = static_cast<Eigen::Index>(sensor_index);
    for (std::size_t j = 0; j < k.size(); ++j) {
        const double kr = k[j] * r;
        const auto jy = specfun::bessel_j0_y0(kr);
        const Complex fs = Complex(jy.j0, jy.y0) +
                           Complex(0.0, 2.0 / std::numbers::pi) * specfun::macdonald_k0(kr);
        num[j] = Complex(0.0, -8.0 * k[j] * k[j] * k[j]) * m.samples(l, static_cast<Eigen::Index>(j)) *
                 jy.j0;
        den[j] = fs * k[j] * jy.j0;
    }
    const Complex d = quadrature::integrate_band({k, den});
    if (std::abs(d) < 1e-12) {
        throw ConditioningError("recover_strength_2d: vanishing normalization integral");
    }
    return quadrature::integrate_band({k, num}) / d;
}

SensorChoice select_sensor(const Point& z_star, std::span<const Point> detected,
                           const SensorArray& sensors)
{
    if (sensors.size() == 0) {
        throw DomainError("select_sensor: no sensors");
    }
    SensorChoice best{0, -1.0};
    for (std::size_t l = 0; l < sensors.size(); ++l) {
        const double r_star = distance(sensors[l], z_star);
        double sep = std::numeric_limits<double>::infinity();
        for (const auto& z : detected) {
            if (distance(z, z_star) == 0.0) {
                continue;
            }
            sep = std::min(sep, std::fabs(r_star - distance(sensors[l], z)));
        }
        if (sep > best.separation) {
            best = {l, sep};
        }
    }
    return best;
}

ReconstructionReport run_algorithm2(const MeasurementSet& m, const sampling::SamplingGrid& grid,
                                    IndicatorKind kind, const sampling::PeakParams& peaks,
                                    sampling::IndicatorField* field_out)
{
    const auto t0 = std::chrono::steady_clock::now();
    require_2d(m, "algorithm 2");
    if (grid.dimension() != Dimension::Two) {
        throw PreconditionError("algorithm 2 needs a 2D sampling grid");
    }
    if (!geometry::no_three_collinear(m.sensors)) {
        throw PreconditionError("algorithm 2: three of the sensors are collinear");
    }
    auto field = evaluate_indicator_2d(m, grid, kind);
    const auto found = sampling::extract_peaks(field, peaks);

    ReconstructionReport report;
    report.estimated_count = found.size();
    report.positions = found.positions;
    for (const auto& z : found.positions) {
        const auto choice = select_sensor(z, found.positions, m.sensors);
        if (choice.separation < grid.spacing()) {
            report.warnings.push_back(fmt::format(
                "peak ({:.4g}, {:.4g}): best sensor separation {:.3g} is below the grid spacing",
                z.x(), z.y(), choice.separation));
        }
        report.strengths.push_back(recover_strength_2d(z, choice.index, m));
    }
    const std::size_t need = 4 * found.size() >= 1 ? 4 * found.size() - 1 : 0;
    if (found.size() > 0 && m.sensors.size() < need) {
        report.warnings.push_back(fmt::format(
            "L = {} sensors is below 4M-1 = {} for the {} detected sources", m.sensors.size(),
            need, found.size()));
    }
    if (field_out) {
        *field_out = std::move(field);
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace biharm::multi2d
