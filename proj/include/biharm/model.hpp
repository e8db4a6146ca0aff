#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "biharm/types.hpp"

namespace biharm {

/// Scattered-field samples u^s(x_l, k_j), indexed (sensor, frequency).
struct MeasurementSet {
    SensorArray sensors;
    FrequencyGrid frequencies;
    Eigen::MatrixXcd samples;  // sensors.size() x frequencies.size()
    double noise_level = 0.0;
    std::uint64_t rng_seed = 0;

    Dimension dimension() const { return sensors.dimension(); }
};

/// Radiating fundamental solution of Delta^2 u - k^4 u = delta as a function
/// of the distance r > 0:
///   3D: (e^{ikr} - e^{-kr}) / (8 pi k^2 r)
///   2D: i/(8k^2) (H0^(1)(kr) + (2i/pi) K0(kr))
Complex fundamental_solution_radial(double k, double r, Dimension dim);

Complex fundamental_solution(double k, const Point& x, const Point& y, Dimension dim);

/// u^s(x, k) = sum_m tau_m Phi_k(x, z_m).
Complex scattered_field(const SourceConfig& config, const Point& x, double k);

/// Exact fields at every (sensor, frequency), each perturbed by the scalar
/// factor (1 + noise_level * N) with N uniform on [-1, 1] drawn from a
/// counter-based generator keyed by (seed, sensor, frequency).
MeasurementSet synthesize_measurements(const SourceConfig& config, const SensorArray& sensors,
                                       const FrequencyGrid& freqs, double noise_level,
                                       std::uint64_t seed);

/// Modulus of the finite-difference residual Delta^2 u^s - k^4 u^s at x,
/// using the 13-point (2D) or 25-point (3D) biharmonic stencil with step h.
double pde_residual(const SourceConfig& config, const Point& x, double k, double h = 1e-2);

}  // namespace biharm
