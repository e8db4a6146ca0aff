#pragma once

#include <span>
#include <string>
#include <vector>

#include "biharm/model.hpp"
#include "biharm/sampling.hpp"

namespace biharm::single3d {

/// Largest overshoot of the exponential estimate above 1 that is clamped
/// rather than rejected.
inline constexpr double kDistanceClampEps = 0.05;

/// Sampling indicator ceiling, reached where the residual sum vanishes.
inline constexpr double kIndicatorCap = 1e14;

/// Distance |x - z1| from fields at {k0, 2k0, 4k0} at one sensor:
///   E = Re(4 u2/u1) - Im(u4/u2) / (2 Im(u2/u1)) = e^{-k0 r}.
/// E in (1, 1 + clamp_eps] is clamped just below 1; E <= 0 or beyond that
/// raises InversionError. A vanishing Im(u2/u1) raises ConditioningError.
double recover_distance(Complex u_k0, Complex u_2k0, Complex u_4k0, double k0,
                        double clamp_eps = kDistanceClampEps);

/// The left-hand side E of the distance identity, before any clamping.
double exponential_estimate(Complex u_k0, Complex u_2k0, Complex u_4k0);

/// tau = 8 pi k0^2 u(k0) r / (e^{i k0 r} - e^{-k0 r}).
Complex recover_strength(Complex u_k0, double k0, double r);

/// Reciprocal residual of the four sensor distance equations at z, given
/// only |tau|; capped at kIndicatorCap.
double indicator_single(const Point& z, std::span<const Point> sensors,
                        std::span<const Complex> u_at_k0, double k0, double tau_abs);

/// f(y) = |e^{iy} - e^{-y}|^2 / y^2, strictly decreasing on y > 0 with f(0+) = 2.
double phaseless_f(double y);
/// g(y) = sqrt(2) y sin(y + pi/4) + 2 cos y - (y + 1) e^{-y} - e^{y}; negative for y > 0.
double phaseless_g(double y);
/// f'(y) = 2 e^{-y} g(y) / y^3.
double phaseless_f_prime(double y);

/// Distance from a phaseless measurement |u^s(x, k)| and known |tau|, by
/// bisection of f(y) = 64 k^2 pi^2 (|u| / |tau|)^2 on y in [1e-8, 200].
double solve_phaseless_distance(double abs_u, double k, double tau_abs);

struct SingleSourceEstimate {
    /// Distances from the recovered position to each of the four sensors.
    std::vector<double> distance_per_sensor;
    /// Closed-form distance at the strength sensor (sensor 1).
    double strength_distance = 0.0;
    Complex strength{0.0, 0.0};
    Point position = Point::Zero();
    std::vector<std::string> warnings;
};

struct Algorithm1Options {
    /// Average the strength formula over all four sensors instead of using
    /// sensor 1 only. Sensors whose distance inversion fails are skipped.
    bool average_strength = false;
    double clamp_eps = kDistanceClampEps;
};

/// Strength from sensor 1, then position as the argmax of indicator_single
/// over the grid. Requires four non-coplanar 3D sensors and the frequency
/// triple {k0, 2k0, 4k0}.
SingleSourceEstimate run_algorithm1(const MeasurementSet& measurements,
                                    const sampling::SamplingGrid& grid,
                                    const Algorithm1Options& options = {});

/// Same as run_algorithm1 but also returns the indicator field.
SingleSourceEstimate run_algorithm1(const MeasurementSet& measurements,
                                    const sampling::SamplingGrid& grid,
                                    const Algorithm1Options& options,
                                    sampling::IndicatorField* field_out);

}  // namespace biharm::single3d
