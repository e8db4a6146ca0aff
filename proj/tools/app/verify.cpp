#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "biharm/geometry.hpp"
#include "biharm/model.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/single3d.hpp"
#include "biharm/specfun.hpp"

namespace biharm::app {

namespace {

CheckResult phaseless_signs()
{
    double prev = single3d::phaseless_f(1e-3);
    int bad = 0;
    double worst_g = -INFINITY;
    for (int i = 1; i <= 50000; ++i) {
        const double y = 1e-3 * i;
        const double f = single3d::phaseless_f(y);
        const double g = single3d::phaseless_g(y);
        if (i > 1 && !(f < prev)) ++bad;
        if (!(g < 0.0)) ++bad;
        worst_g = std::max(worst_g, g);
        prev = f;
    }
    return {"phaseless f decreasing, g < 0", bad == 0,
            fmt::format("{} violations on y = 1e-3..50, max g = {:.3e}", bad, worst_g)};
}

CheckResult exponential_identity()
{
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> pos(-3.0, 3.0), kk(0.2, 2.0), tt(-2.0, 2.0);
    double worst = 0.0;
    int used = 0;
    while (used < 100) {
        const Point z = point3(pos(gen), pos(gen), pos(gen));
        const Point x = point3(pos(gen), pos(gen), pos(gen));
        const double k0 = kk(gen);
        const SourceConfig cfg(Dimension::Three, {{z, Complex(tt(gen), tt(gen))}});
        const double r = distance(x, z);
        if (std::fabs(std::sin(k0 * r)) < 1e-3) continue;  // the identity divides by sin(k0 r)
        const double e = single3d::exponential_estimate(
            scattered_field(cfg, x, k0), scattered_field(cfg, x, 2 * k0), scattered_field(cfg, x, 4 * k0));
        worst = std::max(worst, std::fabs(e - std::exp(-k0 * r)));
        ++used;
    }
    return {"three-frequency exponential identity", worst < 1e-10,
            fmt::format("max |E - e^(-k0 r)| = {:.3e} over 100 draws (tol 1e-10)", worst)};
}

// residual ratio on halving h; second order means 4
CheckResult pde_convergence(Dimension dim, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> c(-1.0, 1.0), kk(0.5, 2.0), tt(-2.0, 2.0), dir(-1.0, 1.0);
    std::uniform_int_distribution<int> count(1, 3);
    const bool three = dim == Dimension::Three;
    double lo = INFINITY;
    double hi = -INFINITY;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<PointSource> src;
        const int n = count(gen);
        for (int m = 0; m < n; ++m) {
            const Point p = three ? point3(c(gen), c(gen), c(gen)) : point2(c(gen), c(gen));
            src.push_back({p, Complex(tt(gen), tt(gen))});
        }
        const SourceConfig cfg(dim, src);
        Point x;
        do {
            x = three ? point3(3 * dir(gen), 3 * dir(gen), 3 * dir(gen)) : point2(3 * dir(gen), 3 * dir(gen));
        } while (std::any_of(src.begin(), src.end(), [&](const PointSource& s) { return distance(s.position, x) < 1.0; }));
        const double k = kk(gen);
        const double ratio = pde_residual(cfg, x, k, 4e-2) / pde_residual(cfg, x, k, 2e-2);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    const bool ok = lo >= 3.6 && hi <= 4.4;
    return {fmt::format("PDE residual O(h^2), {}D", three ? 3 : 2), ok,
            fmt::format("residual ratio on halving h in [{:.3f}, {:.3f}] over 10 configurations (want 4 +- 0.4)", lo,
                        hi)};
}

CheckResult i2_closed_form()
{
    // (r, r_m) = (1, 2): closed form (4 r_m^2 / (pi i)) / (r^4 - r_m^4)
    const Complex closed = 16.0 / (std::numbers::pi * Complex(0.0, 1.0)) / (1.0 - 16.0);
    const auto f = [](double k) {
        const Complex h = specfun::hankel1_0(2 * k) + Complex(0.0, 2.0 / std::numbers::pi) * specfun::macdonald_k0(2 * k);
        return h * k * specfun::bessel_j0(k);
    };
    const Complex v = quadrature::integrate_semiinfinite_truncated(f, 400.0, 1e-3, quadrature::Window::Fejer);
    const double rel = std::abs(v - closed) / std::abs(closed);
    return {"I2 truncated integral vs closed form", rel <= 0.02,
            fmt::format("Fejer mean at k_max = 400: {:.6f}{:+.6f}i vs {:.6f}{:+.6f}i, rel err {:.2e} (tol 2e-2)",
                        v.real(), v.imag(), closed.real(), closed.imag(), rel)};
}

CheckResult circle_counts()
{
    const auto sensors = geometry::circle_array_2d(10, point2(3, 3), 5);
    const SourceConfig src(Dimension::Two,
                           {{point2(1.3, 2.1), 1.0}, {point2(3.7, 4.4), 1.0}, {point2(2.9, 1.2), 1.0}, {point2(4.6, 2.5), 1.0}});
    int bad = 0;
    for (const auto& s : src.sources()) {
        if (geometry::circle_count(s.position, sensors, src, 1e-9) != sensors.size()) ++bad;
    }
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.5, 5.5);
    std::size_t worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const Point z = point2(u(gen), u(gen));
        const std::size_t n = geometry::circle_count(z, sensors, src, 1e-9);
        worst = std::max(worst, n);
        if (n > 2 * src.size()) ++bad;
    }
    return {"circle counts", bad == 0,
            fmt::format("L = {} at every source, max {} off-source over 1000 points (bound {})", sensors.size(), worst,
                        2 * src.size())};
}

}  // namespace

std::vector<CheckResult> run_verify()
{
    return {phaseless_signs(),      exponential_identity(), pde_convergence(Dimension::Three, 7),
            pde_convergence(Dimension::Two, 8), i2_closed_form(), circle_counts()};
}

std::string format_verify(const std::vector<CheckResult>& results)
{
    std::string s;
    std::size_t passed = 0;
    for (const auto& r : results) {
        s += fmt::format("[{}] {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
        passed += r.passed ? 1 : 0;
    }
    s += fmt::format("{}/{} checks passed\n", passed, results.size());
    return s;
}

}  // namespace biharm::app
