#include "biharm/quadrature.hpp"

#include <cmath>

#include "biharm/errors.hpp"

namespace biharm::quadrature {

std::vector<double> trapezoid_weights(std::span<const double> grid)
{
    const std::size_t n = grid.size();
    if (n < 2) {
        throw DomainError("trapezoid rule needs at least 2 grid points");
    }
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = grid[i + 1] - grid[i];
        if (!(h > 0.0)) {
            throw DomainError("trapezoid rule needs a strictly increasing grid");
        }
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    return w;
}

Complex integrate_band(const BandIntegrand& integrand)
{
    if (integrand.grid.size() != integrand.values.size()) {
        throw ShapeError("integrate_band: grid and values differ in length");
    }
    const auto w = trapezoid_weights(integrand.grid);
    Complex sum{0.0, 0.0};
    for (std::size_t i = 0; i < w.size(); ++i) {
        sum += w[i] * integrand.values[i];
    }
    return sum;
}

Complex integrate_semiinfinite_truncated(const std::function<Complex(double)>& f, double k_max,
                                         double step, Window window)
{
    if (!(k_max > 0.0) || !(step > 0.0)) {
        throw DomainError("integrate_semiinfinite_truncated: k_max and step must be positive");
    }
    const auto n = static_cast<long>(std::floor((k_max - 0.5 * step) / step + 1e-9)) + 1;
    if (n < 2) {
        throw DomainError("integrate_semiinfinite_truncated: fewer than two nodes below k_max");
    }
    Complex sum{0.0, 0.0};
    for (long i = 0; i < n; ++i) {
        const double k = (static_cast<double>(i) + 0.5) * step;
        const double end_weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double taper = window == Window::Fejer ? 1.0 - k / k_max : 1.0;
        sum += end_weight * taper * f(k);
    }
    return sum * step;
}

}  // namespace biharm::quadrature
