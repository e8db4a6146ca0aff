#include "biharm/radial.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/parallel.hpp"

namespace biharm::radial {

RadialProfile::RadialProfile(double r_min, double r_max, double step,
                             const std::function<Complex(double)>& f)
    : r_min_(r_min), r_max_(r_max), step_(step)
{
    if (!(step > 0.0) || !(r_max >= r_min)) {
        throw DomainError("radial profile: need step > 0 and r_max >= r_min");
    }
    const auto n = static_cast<std::size_t>(std::ceil((r_max - r_min) / step)) + 1;
    values_.resize(n + 2);
    parallel_for(values_.size(), [&](std::size_t i) {
        const double r = r_min + (static_cast<double>(i) - 1.0) * step;
        values_[i] = f(std::max(r, 0.0));
    }, 16);
}

Complex RadialProfile::operator()(double r) const
{
    const double tol = 1e-9 * std::max(1.0, r_max_);
    if (r < r_min_ - tol || r > r_max_ + tol) {
        throw DomainError(
            fmt::format("radial profile: distance {} outside [{}, {}]", r, r_min_, r_max_));
    }
    const double t = (r - r_min_) / step_;
    const auto last = static_cast<double>(values_.size() - 4);
    const double base = std::clamp(std::floor(t), 0.0, last);
    const double s = t - base;  // position relative to node base+1, in [0, 1]
    const auto i = static_cast<std::size_t>(base);
    // Lagrange weights for nodes at offsets -1, 0, 1, 2
    const double w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double w3 = (s + 1.0) * s * (s - 1.0) / 6.0;
    return w0 * values_[i] + w1 * values_[i + 1] + w2 * values_[i + 2] + w3 * values_[i + 3];
}

std::pair<double, double> distance_range(const Point& x, const sampling::SamplingGrid& grid)
{
    const Point& lo = grid.lower();
    const Point& hi = grid.upper();
    const int dims = to_int(grid.dimension());
    double near = 0.0;
    double far = 0.0;
    for (int a = 0; a < dims; ++a) {
        const double c = std::clamp(x[a], lo[a], hi[a]);
        near += (x[a] - c) * (x[a] - c);
        const double f = std::max(std::fabs(x[a] - lo[a]), std::fabs(x[a] - hi[a]));
        far += f * f;
    }
    if (dims == 2) {
        near += x[2] * x[2];
        far += x[2] * x[2];
    }
    return {std::sqrt(near), std::sqrt(far)};
}

double default_step(double k_max)
{
    if (!(k_max > 0.0)) {
        throw DomainError("radial profile: k_max must be positive");
    }
    return 0.1 / k_max;
}

}  // namespace biharm::radial
