#pragma once

#include <functional>
#include <span>
#include <vector>

#include "biharm/types.hpp"

namespace biharm::quadrature {

/// Sampled integrand over a strictly increasing frequency grid.
struct BandIntegrand {
    std::span<const double> grid;
    std::span<const Complex> values;
};

/// Composite trapezoid weights for an arbitrary strictly increasing grid.
std::vector<double> trapezoid_weights(std::span<const double> grid);

/// Composite trapezoid rule over the sampled grid (at least two points).
Complex integrate_band(const BandIntegrand& integrand);

enum class Window {
    /// Plain truncation at k_max.
    None,
    /// Fejer (Cesaro) window (1 - k / k_max): the mean of the running
    /// integral over [0, k_max]. Converges for integrands that only
    /// oscillate without decaying, where plain truncation does not.
    Fejer,
};

/// Trapezoid rule on the nodes step/2, 3 step/2, ... <= k_max. The half-step
/// offset keeps the log singularities of Y0 and K0 at k = 0 off the grid.
Complex integrate_semiinfinite_truncated(const std::function<Complex(double)>& f, double k_max,
                                         double step, Window window = Window::None);

}  // namespace biharm::quadrature
