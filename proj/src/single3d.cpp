#include "biharm/single3d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/geometry.hpp"

namespace biharm::single3d {

using std::numbers::pi;

double exponential_estimate(Complex u_k0, Complex u_2k0, Complex u_4k0)
{
    if (u_k0 == Complex{} || u_2k0 == Complex{}) {
        throw InversionError("recover_distance: vanishing field at k0 or 2k0");
    }
    const Complex r21 = u_2k0 / u_k0;
    const Complex r42 = u_4k0 / u_2k0;
    const double denom = 2.0 * r21.imag();
    if (std::fabs(denom) < 1e-14 * std::abs(r21)) {
        throw ConditioningError("recover_distance: Im(u(2k0)/u(k0)) vanishes");
    }
    return (4.0 * r21).real() - r42.imag() / denom;
}

double recover_distance(Complex u_k0, Complex u_2k0, Complex u_4k0, double k0, double clamp_eps)
{
    if (!(k0 > 0.0)) {
        throw DomainError("recover_distance: k0 must be positive");
    }
    double e = exponential_estimate(u_k0, u_2k0, u_4k0);
    if (!(e > 0.0)) {
        throw InversionError(
            fmt::format("recover_distance: exponential estimate {} is not positive", e));
    }
    if (e > 1.0 + clamp_eps) {
        throw InversionError(
            fmt::format("recover_distance: exponential estimate {} exceeds 1", e));
    }
    if (e >= 1.0) {
        e = 1.0 - 1e-12;
    }
    return -std::log(e) / k0;
}

Complex recover_strength(Complex u_k0, double k0, double r)
{
    if (!(r > 0.0)) {
        throw DomainError("recover_strength: distance must be positive");
    }
    const double kr = k0 * r;
    return 8.0 * pi * k0 * k0 * u_k0 * r / (std::polar(1.0, kr) - std::exp(-kr));
}

double indicator_single(const Point& z, std::span<const Point> sensors,
                        std::span<const Complex> u_at_k0, double k0, double tau_abs)
{
    if (sensors.size() != u_at_k0.size()) {
        throw ShapeError("indicator_single: sensor and field counts differ");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < sensors.size(); ++j) {
        const double r = distance(sensors[j], z);
        if (!(r > 0.0)) {
            throw DomainError("indicator_single: sampling point coincides with a sensor");
        }
        const double model = r / (tau_abs * std::abs(std::polar(1.0, k0 * r) - std::exp(-k0 * r)));
        const double data = 1.0 / (8.0 * pi * k0 * k0 * std::abs(u_at_k0[j]));
        sum += std::fabs(model - data);
    }
    if (sum < 1.0 / kIndicatorCap) {
        return kIndicatorCap;
    }
    return 1.0 / sum;
}

double phaseless_f(double y)
{
    // cos y - e^{-y} without cancellation for small y
    const double s = std::sin(0.5 * y);
    const double re = -2.0 * s * s - std::expm1(-y);
    const double im = std::sin(y);
    return (re * re + im * im) / (y * y);
}

double phaseless_g(double y)
{
    return std::numbers::sqrt2 * y * std::sin(y + 0.25 * pi) + 2.0 * std::cos(y) -
           (y + 1.0) * std::exp(-y) - std::exp(y);
}

double phaseless_f_prime(double y) { return 2.0 * std::exp(-y) * phaseless_g(y) / (y * y * y); }

double solve_phaseless_distance(double abs_u, double k, double tau_abs)
{
    if (!(abs_u > 0.0) || !(k > 0.0) || !(tau_abs > 0.0)) {
        throw DomainError("solve_phaseless_distance: |u|, k and |tau| must be positive");
    }
    const double ratio = abs_u / tau_abs;
    const double target = 64.0 * k * k * pi * pi * ratio * ratio;
    double lo = 1e-8;
    double hi = 200.0;
    if (target > phaseless_f(lo) || target < phaseless_f(hi)) {
        throw InversionError(
            fmt::format("solve_phaseless_distance: target {} outside the range of f", target));
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (phaseless_f(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi) / k;
}

namespace {

void check_inputs(const MeasurementSet& m)
{
    if (m.dimension() != Dimension::Three) {
        throw PreconditionError("algorithm 1 needs 3D measurements");
    }
    if (m.sensors.size() != 4) {
        throw PreconditionError(
            fmt::format("algorithm 1 needs exactly 4 sensors, got {}", m.sensors.size()));
    }
    const auto& f = m.frequencies.values();
    if (f.size() != 3 || std::fabs(f[1] - 2.0 * f[0]) > 1e-12 * f[1] ||
        std::fabs(f[2] - 4.0 * f[0]) > 1e-12 * f[2]) {
        throw PreconditionError("algorithm 1 needs the frequency triple {k0, 2k0, 4k0}");
    }
    if (!geometry::no_four_coplanar(m.sensors)) {
        throw PreconditionError("algorithm 1: the four sensors are coplanar");
    }
}

}  // namespace

SingleSourceEstimate run_algorithm1(const MeasurementSet& m, const sampling::SamplingGrid& grid,
                                    const Algorithm1Options& options)
{
    return run_algorithm1(m, grid, options, nullptr);
}

SingleSourceEstimate run_algorithm1(const MeasurementSet& m, const sampling::SamplingGrid& grid,
                                    const Algorithm1Options& options,
                                    sampling::IndicatorField* field_out)
{
    check_inputs(m);
    if (grid.dimension() != Dimension::Three) {
        throw PreconditionError("algorithm 1 needs a 3D sampling grid");
    }
    const double k0 = m.frequencies[0];
    SingleSourceEstimate est;

    est.strength_distance = recover_distance(m.samples(0, 0), m.samples(0, 1), m.samples(0, 2), k0,
                                             options.clamp_eps);
    est.strength = recover_strength(m.samples(0, 0), k0, est.strength_distance);
    if (options.average_strength) {
        Complex sum = est.strength;
        int used = 1;
        for (Eigen::Index l = 1; l < 4; ++l) {
            try {
                const double r = recover_distance(m.samples(l, 0), m.samples(l, 1),
                                                  m.samples(l, 2), k0, options.clamp_eps);
                sum += recover_strength(m.samples(l, 0), k0, r);
                ++used;
            } catch (const InversionError& e) {
                est.warnings.push_back(fmt::format("sensor {} skipped in strength average: {}",
                                                   l + 1, e.what()));
            }
        }
        est.strength = sum / static_cast<double>(used);
    }

    std::vector<Complex> u0(4);
    for (Eigen::Index l = 0; l < 4; ++l) {
        u0[static_cast<std::size_t>(l)] = m.samples(l, 0);
    }
    const double tau_abs = std::abs(est.strength);
    const auto& sensors = m.sensors.points();
    auto field = sampling::evaluate_field(grid, [&](const Point& z) {
        return indicator_single(z, sensors, u0, k0, tau_abs);
    });
    const auto best = std::max_element(field.values.begin(), field.values.end());
    est.position = grid.node(static_cast<std::size_t>(best - field.values.begin()));
    for (const auto& x : sensors) {
        est.distance_per_sensor.push_back(distance(x, est.position));
    }
    if (field_out) {
        *field_out = std::move(field);
    }
    return est;
}

}  // namespace biharm::single3d
