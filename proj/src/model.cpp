#include "biharm/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "biharm/errors.hpp"
#include "biharm/parallel.hpp"
#include "biharm/rng.hpp"
#include "biharm/specfun.hpp"

namespace biharm {

using namespace std::complex_literals;

Complex fundamental_solution_radial(double k, double r, Dimension dim)
{
    if (!(k > 0.0)) {
        throw DomainError("fundamental_solution: wavenumber must be positive");
    }
    if (!(r > 0.0)) {
        throw SingularityError("fundamental_solution: x coincides with y");
    }
    const double kr = k * r;
    if (dim == Dimension::Three) {
        const Complex osc = std::polar(1.0, kr);
        return (osc - std::exp(-kr)) / (8.0 * std::numbers::pi * k * k * r);
    }
    const auto jy = specfun::bessel_j0_y0(kr);
    const double k0 = specfun::macdonald_k0(kr);
    // i/(8k^2) (J0 + i Y0 + (2i/pi) K0) = (-Y0 - (2/pi) K0 + i J0) / (8 k^2)
    return Complex(-jy.y0 - 2.0 / std::numbers::pi * k0, jy.j0) / (8.0 * k * k);
}

Complex fundamental_solution(double k, const Point& x, const Point& y, Dimension dim)
{
    return fundamental_solution_radial(k, distance(x, y), dim);
}

Complex scattered_field(const SourceConfig& config, const Point& x, double k)
{
    Complex u{0.0, 0.0};
    for (const auto& s : config.sources()) {
        u += s.strength * fundamental_solution(k, x, s.position, config.dimension());
    }
    return u;
}

MeasurementSet synthesize_measurements(const SourceConfig& config, const SensorArray& sensors,
                                       const FrequencyGrid& freqs, double noise_level,
                                       std::uint64_t seed)
{
    if (sensors.dimension() != config.dimension()) {
        throw DomainError("synthesize_measurements: sensor and source dimensions differ");
    }
    if (!(noise_level >= 0.0)) {
        throw DomainError("synthesize_measurements: noise level must be nonnegative");
    }
    for (std::size_t l = 0; l < sensors.size(); ++l) {
        for (const auto& s : config.sources()) {
            if (sensors[l] == s.position) {
                throw SingularityError("synthesize_measurements: sensor " + std::to_string(l) +
                                       " coincides with a source");
            }
        }
    }
    const auto L = static_cast<Eigen::Index>(sensors.size());
    const auto J = static_cast<Eigen::Index>(freqs.size());
    Eigen::MatrixXcd samples(L, J);
    const CounterRng rng(seed);
    parallel_for(sensors.size(), [&](std::size_t l) {
        for (Eigen::Index j = 0; j < J; ++j) {
            Complex u = scattered_field(config, sensors[l], freqs[static_cast<std::size_t>(j)]);
            if (noise_level > 0.0) {
                u *= 1.0 + noise_level * rng.uniform_pm1(l, static_cast<std::uint64_t>(j));
            }
            samples(static_cast<Eigen::Index>(l), j) = u;
        }
    });
    return MeasurementSet{sensors, freqs, std::move(samples), noise_level, seed};
}

double pde_residual(const SourceConfig& config, const Point& x, double k, double h)
{
    if (!(h > 0.0)) {
        throw DomainError("pde_residual: step must be positive");
    }
    for (const auto& s : config.sources()) {
        if (distance(x, s.position) <= 10.0 * h) {
            throw ConditioningError("pde_residual: point within 10h of a source");
        }
    }
    if (config.empty()) {
        return 0.0;
    }
    const int dim = to_int(config.dimension());
    auto u = [&](int dx, int dy, int dz) {
        return scattered_field(config, x + h * Point(dx, dy, dz), k);
    };
    Complex lap2{0.0, 0.0};
    if (dim == 2) {
        lap2 += 20.0 * u(0, 0, 0);
        lap2 -= 8.0 * (u(1, 0, 0) + u(-1, 0, 0) + u(0, 1, 0) + u(0, -1, 0));
        lap2 += 2.0 * (u(1, 1, 0) + u(1, -1, 0) + u(-1, 1, 0) + u(-1, -1, 0));
        lap2 += u(2, 0, 0) + u(-2, 0, 0) + u(0, 2, 0) + u(0, -2, 0);
    } else {
        lap2 += 42.0 * u(0, 0, 0);
        lap2 -= 12.0 * (u(1, 0, 0) + u(-1, 0, 0) + u(0, 1, 0) + u(0, -1, 0) + u(0, 0, 1) +
                        u(0, 0, -1));
        lap2 += u(2, 0, 0) + u(-2, 0, 0) + u(0, 2, 0) + u(0, -2, 0) + u(0, 0, 2) + u(0, 0, -2);
        Complex diag{0.0, 0.0};
        for (int a : {-1, 1}) {
            for (int b : {-1, 1}) {
                diag += u(a, b, 0) + u(a, 0, b) + u(0, a, b);
            }
        }
        lap2 += 2.0 * diag;
    }
    lap2 /= h * h * h * h;
    return std::abs(lap2 - k * k * k * k * u(0, 0, 0));
}

}  // namespace biharm
