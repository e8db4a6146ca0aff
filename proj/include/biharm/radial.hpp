#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "biharm/sampling.hpp"
#include "biharm/types.hpp"

namespace biharm::radial {

/// A complex function of one distance, tabulated on a uniform grid and read
/// back by four-point (cubic) Lagrange interpolation.
///
/// Every multi-frequency indicator depends on the sampling point only through
/// its sensor distances, so a profile per sensor replaces the per-node band
/// sums during grid evaluation.
class RadialProfile {
public:
    RadialProfile() = default;
    /// Tabulates f on [r_min, r_max] with the given step (plus one guard node
    /// on each side). f is called concurrently.
    RadialProfile(double r_min, double r_max, double step,
                  const std::function<Complex(double)>& f);

    /// Throws DomainError outside [r_min, r_max].
    Complex operator()(double r) const;

    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double step() const { return step_; }

private:
    double r_min_ = 0.0;
    double r_max_ = 0.0;
    double step_ = 1.0;
    std::vector<Complex> values_;  // node i sits at r_min + (i - 1) step
};

/// Smallest and largest distance from x to the sampling box of the grid.
std::pair<double, double> distance_range(const Point& x, const sampling::SamplingGrid& grid);

/// Default tabulation step 0.1 / k_max: cubic interpolation error of a
/// component oscillating like cos(k r) stays near 2e-6 of its amplitude.
double default_step(double k_max);

}  // namespace biharm::radial
